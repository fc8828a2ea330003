#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dissim/errors.hpp"
#include "dissim/harness.hpp"
#include "dissim/tolerances.hpp"
#include "test_support.hpp"

using namespace dissim;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "./" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("hamiltonian presets") {
  CHECK(max_abs(hamiltonian_preset("pauli_z_half") - 0.5 * pauli_z()) == 0.0);

  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix tfim = kron(pauli_z(), id) + kron(id, pauli_z()) +
                             0.5 * kron(pauli_x(), pauli_x());
  CHECK(max_abs(hamiltonian_preset("tfim_2") - tfim) == 0.0);

  const ComplexMatrix par = hamiltonian_preset("parity:101");
  CHECK(par.rows() == 8);
  CHECK(hermiticity_defect(par) == 0.0);

  CHECK_THROWS_AS(hamiltonian_preset("nope"), InputError);
}

TEST_CASE("load_config parses presets, lists and explicit matrices") {
  const std::string path = write_temp("cfg_ok.json", R"({
    "experiment": "sweep",
    "hamiltonian": [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]],
    "t_values": [1.0, 2.0],
    "epsilon_values": [0.05],
    "grid_n": 16,
    "seed": 9,
    "threads": 2,
    "method": "sandwich",
    "format": "json"
  })");
  const ExperimentConfig cfg = load_config(path);
  CHECK(cfg.experiment == ExperimentKind::sweep);
  REQUIRE(cfg.explicit_hamiltonian.has_value());
  CHECK(max_abs(*cfg.explicit_hamiltonian - 0.5 * pauli_z()) == 0.0);
  CHECK(cfg.t_values == std::vector<double>{1.0, 2.0});
  CHECK(cfg.grid_n == 16);
  CHECK(cfg.seed == 9);
  CHECK(cfg.threads == 2);
  CHECK(cfg.method == DistanceMethod::sandwich);
  CHECK(cfg.format == "json");
  std::remove(path.c_str());
}

TEST_CASE("load_config rejects bad input") {
  CHECK_THROWS_AS(load_config("./does_not_exist.json"), IoError);

  const std::string unknown =
      write_temp("cfg_unknown.json", R"({"mystery": 1})");
  CHECK_THROWS_AS(load_config(unknown), InputError);
  std::remove(unknown.c_str());

  const std::string negative = write_temp(
      "cfg_neg.json", R"({"t_values": [-1.0]})");
  CHECK_THROWS_AS(load_config(negative), InputError);
  std::remove(negative.c_str());

  const std::string nonherm = write_temp(
      "cfg_nh.json",
      R"({"hamiltonian": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]})");
  CHECK_THROWS_AS(load_config(nonherm), InputError);
  std::remove(nonherm.c_str());
}

TEST_CASE("format_double round-trips") {
  for (const double x : {0.0, 1.0, 0.1, 1e-13, 123456.789, -2.5e-7}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("emit rejects empty record lists") {
  CHECK_THROWS_AS(emit({}, EmitFormat::csv, "./never.csv"), InputError);
}

TEST_CASE("csv emission round-trips a record") {
  SweepRecord rec;
  rec.t = 2.0;
  rec.epsilon = 0.05;
  rec.delta_star = 0.0123456789012345;
  rec.T = 2.0 / rec.delta_star;
  rec.achieved_error = 0.0499;
  rec.grid_slack = 1e-4;
  rec.wall_time_ms = 12.5;

  emit({rec}, EmitFormat::csv, "./round.csv");
  std::ifstream in("./round.csv");
  std::string header, line;
  std::getline(in, header);
  CHECK(header ==
        "t,epsilon,delta_star,T,achieved_error,grid_slack,wall_time_ms");
  std::getline(in, line);
  std::istringstream fields(line);
  std::string cell;
  std::vector<double> got;
  while (std::getline(fields, cell, ',')) got.push_back(std::stod(cell));
  REQUIRE(got.size() == 7);
  CHECK(got[0] == rec.t);
  CHECK(got[1] == rec.epsilon);
  CHECK(got[2] == rec.delta_star);
  CHECK(got[3] == rec.T);
  CHECK(got[4] == rec.achieved_error);
  CHECK(got[5] == rec.grid_slack);
  CHECK(got[6] == rec.wall_time_ms);
  std::remove("./round.csv");
}

TEST_CASE("emissions of identical input are byte-identical") {
  std::vector<SweepRecord> records(3);
  for (int i = 0; i < 3; ++i) {
    records[i].t = 1.0 + i;
    records[i].epsilon = 0.1 / (i + 1);
    records[i].delta_star = 0.01 * (i + 1);
    records[i].T = records[i].t / records[i].delta_star;
    records[i].achieved_error = 0.03;
    records[i].grid_slack = 1e-5;
  }
  SweepFit fit;
  fit.slope_t = 2.0;
  for (const EmitFormat f :
       {EmitFormat::csv, EmitFormat::json, EmitFormat::svg}) {
    emit(records, f, "./emit_a.out", &fit);
    emit(records, f, "./emit_b.out", &fit);
    CHECK(slurp("./emit_a.out") == slurp("./emit_b.out"));
    CHECK_FALSE(slurp("./emit_a.out").empty());
  }
  std::remove("./emit_a.out");
  std::remove("./emit_b.out");
}

TEST_CASE("svg output is self-contained markup") {
  std::vector<SweepRecord> records(4);
  for (int i = 0; i < 4; ++i) {
    records[i].t = std::pow(2.0, i);
    records[i].epsilon = 0.05;
    records[i].delta_star = 0.05 / records[i].t;
    records[i].T = records[i].t / records[i].delta_star;
  }
  SweepFit fit;
  fit.slope_t = 2.0;
  emit(records, EmitFormat::svg, "./plot.svg", &fit);
  const std::string svg = slurp("./plot.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("circle") != std::string::npos);
  CHECK(svg.find("slope_t") != std::string::npos);
  CHECK(svg.find("http-equiv") == std::string::npos);
  CHECK(svg.find("script") == std::string::npos);
  std::remove("./plot.svg");
}

TEST_CASE("freeze experiment bounds and negative control") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const FreezeResult frozen = freeze_experiment(h, 1e-3, 1.0);
  CHECK(frozen.max_distance <= 2e-3);
  CHECK(frozen.within_bound);
  CHECK(frozen.max_over_mean <= 2.0);

  const FreezeResult control = freeze_experiment(h, 0.0, 1.0);
  CHECK(control.max_distance > 0.4);
}

TEST_CASE("convert experiment on the damped qubit") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const ComplexMatrix f = std::sqrt(0.3) * testing::sigma_minus();
  const Lindbladian l(2, h, {f});
  const ConvertResult r = convert_experiment(l, 2.0, 0.05, 16);
  CHECK(r.pass);
  CHECK(r.achieved_error + r.grid_slack <= 0.05);
  CHECK(r.delta > 0.0);
}

TEST_CASE("convert experiment reduces to the H-only case") {
  // With no jumps the conversion is exactly the single-jump family at
  // delta = epsilon / (t ||D_H||_diamond), and the linear error budget is
  // essentially tight for pure dephasing: the grid maximum must land just
  // under epsilon, with only the Lipschitz slack above it.
  const ComplexMatrix h = 0.5 * pauli_z();
  const Lindbladian l = Lindbladian::hamiltonian_only(h);
  const ConvertResult r = convert_experiment(l, 2.0, 0.05, 16);
  CHECK(r.achieved_error <= r.epsilon);
  CHECK(r.achieved_error >= 0.5 * r.epsilon);
  CHECK(r.delta == doctest::Approx(0.05).epsilon(0.05));
}

TEST_CASE("halving delta halves the conversion error") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const ComplexMatrix f = std::sqrt(0.3) * testing::sigma_minus();
  const Lindbladian l(2, h, {f});
  const Superoperator target = liouvillian(l);
  const double t = 2.0;
  double err[2];
  const double deltas[2] = {0.02, 0.01};
  for (int i = 0; i < 2; ++i) {
    const Lindbladian conv = dissipate_lindbladian(l, deltas[i]);
    err[i] = uniform_generator_error(liouvillian(conv), 1.0 / deltas[i],
                                     target, t, 16, DistanceMethod::sdp)
                 .max_error;
  }
  CHECK(std::abs(err[0] / err[1] - 2.0) < 0.3);
}

TEST_CASE("sweep produces quadratic scaling records deterministically") {
  ExperimentConfig cfg;
  cfg.hamiltonian_spec = "pauli_z_half";
  cfg.t_values = {1.0, 2.0, 4.0};
  cfg.epsilon_values = {0.1};
  cfg.grid_n = 8;
  cfg.threads = 1;
  const SweepResult a = sweep_scaling(cfg);
  REQUIRE(a.records.size() == 3);
  for (const auto& r : a.records) {
    CHECK_FALSE(r.bracket_failed);
    CHECK(r.achieved_error + r.grid_slack <= r.epsilon);
    CHECK(r.T == r.t / r.delta_star);
  }
  CHECK(a.fit.slope_t == doctest::Approx(2.0).epsilon(0.15));

  cfg.threads = 3;
  const SweepResult b = sweep_scaling(cfg);
  REQUIRE(b.records.size() == a.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(b.records[i].t == a.records[i].t);
    CHECK(b.records[i].epsilon == a.records[i].epsilon);
    CHECK(b.records[i].delta_star == a.records[i].delta_star);
    CHECK(b.records[i].T == a.records[i].T);
    CHECK(b.records[i].achieved_error == a.records[i].achieved_error);
    CHECK(b.records[i].grid_slack == a.records[i].grid_slack);
    // wall_time_ms is the one scheduling-dependent field
  }
}

TEST_CASE("sweep validates its axes") {
  ExperimentConfig cfg;
  cfg.t_values = {1.0, 2.0};
  cfg.epsilon_values = {0.1};
  CHECK_THROWS_AS(sweep_scaling(cfg), InputError);
  cfg.t_values.clear();
  CHECK_THROWS_AS(sweep_scaling(cfg), InputError);
}

TEST_CASE("sweep records obey the analytic error bound") {
  ExperimentConfig cfg;
  cfg.hamiltonian_spec = "pauli_z_half";
  cfg.t_values = {1.0, 2.0, 4.0};
  cfg.epsilon_values = {0.1};
  cfg.grid_n = 8;
  const ComplexMatrix h = hamiltonian_preset(cfg.hamiltonian_spec);
  const double da_upper = trace_norm(choi(dissipator(h)).matrix);
  for (const auto& r : sweep_scaling(cfg).records) {
    CHECK(r.achieved_error <= r.t * r.delta_star * da_upper + r.grid_slack);
  }
}
