#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dissim/errors.hpp"
#include "dissim/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNumericalError = 2;
constexpr int kInvariantViolation = 3;

dissim::EmitFormat parse_format(const std::string& f) {
  if (f == "csv") return dissim::EmitFormat::csv;
  if (f == "json") return dissim::EmitFormat::json;
  if (f == "svg") return dissim::EmitFormat::svg;
  throw dissim::InputError("format must be csv, json or svg");
}

std::string extension(dissim::EmitFormat f) {
  switch (f) {
    case dissim::EmitFormat::csv: return "csv";
    case dissim::EmitFormat::json: return "json";
    default: return "svg";
  }
}

double single(const std::vector<double>& v, double fallback) {
  return v.empty() ? fallback : v.front();
}

dissim::Lindbladian config_lindbladian(const dissim::ExperimentConfig& cfg) {
  if (cfg.jumps.empty()) {
    return dissim::Lindbladian::hamiltonian_only(cfg.hamiltonian());
  }
  return dissim::Lindbladian(static_cast<int>(cfg.jumps.front().rows()),
                             cfg.hamiltonian(), cfg.jumps);
}

int run_sweep(const dissim::ExperimentConfig& cfg) {
  const dissim::SweepResult result = dissim::sweep_scaling(cfg);
  const dissim::EmitFormat fmt = parse_format(cfg.format);
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = cfg.out_dir + "/sweep." + extension(fmt);
  dissim::emit(result.records, fmt, path, &result.fit);

  bool any_failed = false;
  for (const auto& r : result.records) any_failed = any_failed || r.bracket_failed;
  std::cout << "records: " << result.records.size()
            << "\nslope_t: " << dissim::format_double(result.fit.slope_t)
            << "\nslope_inv_eps: "
            << dissim::format_double(result.fit.slope_inv_eps)
            << "\nprefactor: " << dissim::format_double(result.fit.prefactor)
            << "\nwrote: " << path << "\n";
  return any_failed ? kNumericalError : kOk;
}

int run_freeze(const dissim::ExperimentConfig& cfg) {
  const double t = single(cfg.t_values, 1.0);
  const dissim::FreezeResult r =
      dissim::freeze_experiment(cfg.hamiltonian(), cfg.delta, t, cfg.seed);
  std::cout << "max_distance: " << dissim::format_double(r.max_distance)
            << "\nmean_distance: " << dissim::format_double(r.mean_distance)
            << "\nbound: " << dissim::format_double(r.bound)
            << "\nmax_over_mean: " << dissim::format_double(r.max_over_mean)
            << "\nwithin_bound: " << (r.within_bound ? "true" : "false")
            << "\n";
  if (cfg.delta > 0.0 && !r.within_bound) return kInvariantViolation;
  return kOk;
}

int run_convert(const dissim::ExperimentConfig& cfg) {
  const double t = single(cfg.t_values, 1.0);
  const double eps = single(cfg.epsilon_values, 0.05);
  const dissim::ConvertResult r = dissim::convert_experiment(
      config_lindbladian(cfg), t, eps, cfg.grid_n, cfg.method);
  std::cout << "delta: " << dissim::format_double(r.delta)
            << "\nachieved_error: " << dissim::format_double(r.achieved_error)
            << "\ngrid_slack: " << dissim::format_double(r.grid_slack)
            << "\nepsilon: " << dissim::format_double(r.epsilon)
            << "\npass: " << (r.pass ? "true" : "false") << "\n";
  return r.pass ? kOk : kNumericalError;
}

int run_gauge(const dissim::ExperimentConfig& cfg) {
  dissim::Lindbladian l = config_lindbladian(cfg);
  if (l.jumps().empty()) {
    const double delta = cfg.delta > 0.0 ? cfg.delta : 0.1;
    l = dissim::mimic_single(cfg.hamiltonian(), delta).lindbladian;
  }
  const double before = dissim::gauge_cost(l);
  const dissim::GaugeOptimum opt = dissim::gauge_optimize(l, 200);
  std::cout << "cost_before: " << dissim::format_double(before)
            << "\ncost_after: " << dissim::format_double(opt.cost) << "\n";
  return kOk;
}

int run_certificate(const dissim::ExperimentConfig& cfg) {
  const double t = single(cfg.t_values, 4.0);
  const double eps = single(cfg.epsilon_values, 0.02);
  const double nu = cfg.nu;
  const dissim::ComplexMatrix h = 0.5 * nu * dissim::pauli_z();
  const double delta = eps / t;
  const dissim::MimicFamily fam = dissim::mimic_single(h, delta);
  const double T = t / delta;

  const dissim::UniformErrorReport err = dissim::uniform_error(
      fam.lindbladian, h, t, delta, cfg.grid_n, cfg.method);
  const bool simulates = err.certified() <= eps;

  const dissim::BlochAffine b = dissim::bloch_affine(fam.lindbladian);
  const dissim::TrajectoryDiagnostics diag = dissim::trajectory_diagnostics(
      fam.lindbladian, nu, t, T, cfg.grid_n);
  const dissim::LowerBoundCertificate cert = dissim::lower_bound_certificate(
      b, diag, fam.lindbladian.jump_count(), fam.lindbladian.jump_bound(), eps,
      nu, t, T);

  std::cout << "uniform_error: " << dissim::format_double(err.certified())
            << "\nsimulates: " << (simulates ? "true" : "false")
            << "\napplicable: " << (cert.applicable ? "true" : "false")
            << "\nT_achieved: " << dissim::format_double(cert.T_achieved)
            << "\nT_lower: " << dissim::format_double(cert.T_lower)
            << "\nratio: "
            << dissim::format_double(cert.T_achieved / cert.T_lower) << "\n";
  if (err.degraded) return kNumericalError;
  // A verified simulator beating the lower bound falsifies the toolkit.
  if (simulates && cert.applicable && !cert.bound_ok) return kInvariantViolation;
  return kOk;
}

int run_rigidity(const dissim::ExperimentConfig& cfg) {
  const dissim::ComplexMatrix h = cfg.hamiltonian();
  dissim::SmoothFamily fam;
  fam.dim = static_cast<int>(h.rows());
  fam.sampler = [&h](double d) {
    return dissim::mimic_single(h, d).lindbladian;
  };
  fam.delta_samples = {1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 1e-4};
  const dissim::FirstOrderFit fit = dissim::first_order_fit(fam);
  const double dev = dissim::spectral_norm(
      fit.first_order.matrix - dissim::hamiltonian_liouvillian(h).matrix);
  std::cout << "residual_slope: "
            << dissim::format_double(fit.residual_slope)
            << "\nfit_deviation: " << dissim::format_double(dev)
            << "\ndegraded: " << (fit.degraded ? "true" : "false") << "\n";
  return fit.degraded ? kNumericalError : kOk;
}

int run_diamond(const dissim::ExperimentConfig& cfg) {
  const dissim::Lindbladian l = config_lindbladian(cfg);
  const dissim::Lindbladian zero(l.dim(), std::nullopt, {});
  const dissim::DistanceReport r =
      dissim::generator_distance(l, zero, cfg.method);
  std::cout << "value: " << dissim::format_double(r.value)
            << "\nlower_bound: " << dissim::format_double(r.lower_bound)
            << "\nupper_bound: " << dissim::format_double(r.upper_bound)
            << "\ndegraded: " << (r.degraded ? "true" : "false") << "\n";
  return r.degraded ? kNumericalError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative-simulation experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir, format;
  std::optional<std::string> method;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;

  for (const char* name :
       {"sweep", "freeze", "convert", "gauge", "certificate", "rigidity",
        "diamond"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "csv|json|svg");
    sub->add_option("--method", method, "sdp|sandwich");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_option("--seed", seed, "RNG seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    dissim::ExperimentConfig cfg = dissim::load_config(config_path);
    const std::string sub = app.get_subcommands().front()->get_name();
    cfg.experiment = dissim::parse_experiment(sub);
    if (out_dir) cfg.out_dir = *out_dir;
    if (format) cfg.format = *format;
    if (threads) cfg.threads = *threads;
    if (seed) cfg.seed = *seed;
    if (method) {
      if (*method == "sdp") {
        cfg.method = dissim::DistanceMethod::sdp;
      } else if (*method == "sandwich") {
        cfg.method = dissim::DistanceMethod::sandwich;
      } else {
        throw dissim::InputError("method must be sdp or sandwich");
      }
    }

    switch (cfg.experiment) {
      case dissim::ExperimentKind::sweep: return run_sweep(cfg);
      case dissim::ExperimentKind::freeze: return run_freeze(cfg);
      case dissim::ExperimentKind::convert: return run_convert(cfg);
      case dissim::ExperimentKind::gauge: return run_gauge(cfg);
      case dissim::ExperimentKind::certificate: return run_certificate(cfg);
      case dissim::ExperimentKind::rigidity: return run_rigidity(cfg);
      case dissim::ExperimentKind::diamond: return run_diamond(cfg);
    }
    return kInputError;
  } catch (const dissim::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const dissim::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kInputError;
  } catch (const dissim::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}
