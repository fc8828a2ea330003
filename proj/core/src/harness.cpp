#include "dissim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "dissim/errors.hpp"
#include "json.hpp"

namespace dissim {

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "sweep") return ExperimentKind::sweep;
  if (name == "freeze") return ExperimentKind::freeze;
  if (name == "convert") return ExperimentKind::convert;
  if (name == "gauge") return ExperimentKind::gauge;
  if (name == "certificate") return ExperimentKind::certificate;
  if (name == "rigidity") return ExperimentKind::rigidity;
  if (name == "diamond") return ExperimentKind::diamond;
  throw InputError("unknown experiment: " + name);
}

ComplexMatrix hamiltonian_preset(const std::string& spec) {
  if (spec == "pauli_z_half") return 0.5 * pauli_z();
  if (spec == "tfim_2") {
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    return kron(pauli_z(), id) + kron(id, pauli_z()) +
           0.5 * kron(pauli_x(), pauli_x());
  }
  if (spec.rfind("parity:", 0) == 0) {
    return parity_hamiltonian(spec.substr(7));
  }
  throw InputError("unknown Hamiltonian preset: " + spec);
}

ComplexMatrix ExperimentConfig::hamiltonian() const {
  if (explicit_hamiltonian) return *explicit_hamiltonian;
  return hamiltonian_preset(hamiltonian_spec);
}

namespace {

ComplexMatrix parse_matrix(const nlohmann::json& rows) {
  const int d = static_cast<int>(rows.size());
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != d) {
      throw InputError("config: matrix rows have unequal lengths");
    }
    for (int j = 0; j < d; ++j) {
      const auto& entry = row.at(j);
      if (!entry.is_array() || entry.size() != 2) {
        throw InputError("config: matrix entries must be [re, im] pairs");
      }
      m(i, j) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }

  static const std::vector<std::string> known = {
      "experiment", "hamiltonian", "jumps",   "t_values", "epsilon_values",
      "grid_n",     "delta",       "nu",      "seed",     "threads",
      "method",     "out_dir",     "format"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw InputError("config: unknown key '" + it.key() + "'");
    }
  }

  ExperimentConfig cfg;
  if (j.contains("experiment")) {
    cfg.experiment = parse_experiment(j.at("experiment").get<std::string>());
  }
  if (j.contains("hamiltonian")) {
    const auto& h = j.at("hamiltonian");
    if (h.is_string()) {
      cfg.hamiltonian_spec = h.get<std::string>();
    } else {
      cfg.explicit_hamiltonian = parse_matrix(h);
      require_hermitian(*cfg.explicit_hamiltonian, 1e-10, "config Hamiltonian");
    }
  }
  if (j.contains("jumps")) {
    for (const auto& jm : j.at("jumps")) cfg.jumps.push_back(parse_matrix(jm));
  }
  if (j.contains("t_values")) {
    cfg.t_values = j.at("t_values").get<std::vector<double>>();
  }
  if (j.contains("epsilon_values")) {
    cfg.epsilon_values = j.at("epsilon_values").get<std::vector<double>>();
  }
  if (j.contains("grid_n")) cfg.grid_n = j.at("grid_n").get<int>();
  if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
  if (j.contains("nu")) cfg.nu = j.at("nu").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "sdp") {
      cfg.method = DistanceMethod::sdp;
    } else if (m == "sandwich") {
      cfg.method = DistanceMethod::sandwich;
    } else {
      throw InputError("config: method must be sdp or sandwich");
    }
  }
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();

  for (double t : cfg.t_values) {
    if (t <= 0.0) throw InputError("config: t_values must be positive");
  }
  for (double e : cfg.epsilon_values) {
    if (e <= 0.0) throw InputError("config: epsilon_values must be positive");
  }
  return cfg;
}

namespace {

double regression_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

SweepFit fit_records(const std::vector<SweepRecord>& records) {
  SweepFit fit;
  std::vector<double> prefactors;

  // slope of log T vs log t, averaged over epsilon groups with >= 3 points.
  std::vector<double> slopes_t, slopes_eps;
  std::vector<double> eps_levels, t_levels;
  for (const auto& r : records) {
    if (r.bracket_failed) continue;
    prefactors.push_back(r.T * r.epsilon / (r.t * r.t));
    if (std::find(eps_levels.begin(), eps_levels.end(), r.epsilon) ==
        eps_levels.end()) {
      eps_levels.push_back(r.epsilon);
    }
    if (std::find(t_levels.begin(), t_levels.end(), r.t) == t_levels.end()) {
      t_levels.push_back(r.t);
    }
  }
  for (double eps : eps_levels) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
      if (r.bracket_failed || r.epsilon != eps) continue;
      xs.push_back(std::log(r.t));
      ys.push_back(std::log(r.T));
    }
    if (xs.size() >= 3) slopes_t.push_back(regression_slope(xs, ys));
  }
  for (double t : t_levels) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
      if (r.bracket_failed || r.t != t) continue;
      xs.push_back(std::log(1.0 / r.epsilon));
      ys.push_back(std::log(r.T));
    }
    if (xs.size() >= 3) slopes_eps.push_back(regression_slope(xs, ys));
  }
  auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0;
    for (double x : v) s += x;
    return s / v.size();
  };
  fit.slope_t = mean(slopes_t);
  fit.slope_inv_eps = mean(slopes_eps);
  if (!prefactors.empty()) {
    std::sort(prefactors.begin(), prefactors.end());
    fit.prefactor = prefactors[prefactors.size() / 2];
  }
  return fit;
}

}  // namespace

SweepResult sweep_scaling(const ExperimentConfig& cfg) {
  if (cfg.t_values.empty() || cfg.epsilon_values.empty()) {
    throw InputError("sweep_scaling: t_values and epsilon_values required");
  }
  if (cfg.t_values.size() < 3 && cfg.epsilon_values.size() < 3) {
    throw InputError("sweep_scaling: need >= 3 values on a swept axis");
  }
  const ComplexMatrix h = cfg.hamiltonian();

  // Certified lower bound on ||D_A||_diamond (A = iH) brackets the bisection.
  const double da_lower =
      trace_norm(choi(dissipator(h)).matrix) / double(h.rows());
  if (da_lower <= 0.0) {
    throw InputError("sweep_scaling: Hamiltonian is trivial, nothing to sweep");
  }

  struct Cell {
    double t, epsilon;
  };
  std::vector<Cell> cells;
  for (double t : cfg.t_values) {
    for (double eps : cfg.epsilon_values) cells.push_back({t, eps});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.t != b.t ? a.t < b.t : a.epsilon < b.epsilon;
  });

  std::vector<SweepRecord> records(cells.size());
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const auto [t, eps] = cells[i];
      const auto start = std::chrono::steady_clock::now();

      SweepRecord rec;
      rec.t = t;
      rec.epsilon = eps;

      const double hi = std::min(1.0, 2.0 * eps / (t * da_lower));
      auto measure = [&](double delta) {
        return uniform_error(mimic_single(h, delta).lindbladian, h, t, delta,
                             cfg.grid_n, cfg.method);
      };

      UniformErrorReport at_hi = measure(hi);
      if (at_hi.certified() <= eps) {
        // Upper bracket already feasible; T would be underestimated.
        rec.bracket_failed = true;
        rec.delta_star = hi;
        rec.achieved_error = at_hi.max_error;
        rec.grid_slack = at_hi.slack;
      } else {
        double lo = 0.0, hi_b = hi;
        UniformErrorReport best;
        for (int step = 0; step < 12; ++step) {
          const double mid = 0.5 * (lo + hi_b);
          const UniformErrorReport r = measure(mid);
          if (r.certified() <= eps) {
            lo = mid;
            best = r;
          } else {
            hi_b = mid;
          }
        }
        if (lo == 0.0) {
          rec.bracket_failed = true;
        } else {
          rec.delta_star = lo;
          rec.achieved_error = best.max_error;
          rec.grid_slack = best.slack;
        }
      }
      if (rec.delta_star > 0.0) rec.T = t / rec.delta_star;
      rec.wall_time_ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - start)
              .count();
      records[i] = rec;
    }
  };

  const int nthreads = std::max(1, cfg.threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SweepResult result;
  result.records = std::move(records);
  result.fit = fit_records(result.records);
  return result;
}

FreezeResult freeze_experiment(const ComplexMatrix& h, double delta, double t,
                               std::uint64_t seed) {
  const int d = static_cast<int>(h.rows());
  std::vector<DensityMatrix> states;
  if (d == 2) {
    // The six Pauli eigenstates.
    for (int k = 1; k <= 3; ++k) {
      for (int sgn : {1, -1}) {
        states.push_back(DensityMatrix(
            0.5 * (ComplexMatrix::Identity(2, 2) + double(sgn) * pauli(k))));
      }
    }
  } else {
    for (int i = 0; i < d; ++i) {
      ComplexVector e = ComplexVector::Zero(d);
      e(i) = 1.0;
      states.push_back(pure_state(e));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexVector psi(d);
    for (int i = 0; i < d; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    states.push_back(pure_state(psi));
  }

  const Lindbladian l = delta > 0.0 ? freeze_jump(h, delta)
                                    : Lindbladian::hamiltonian_only(h);
  const Superoperator p = propagator(liouvillian(l), t);

  FreezeResult result;
  double sum = 0.0;
  for (const auto& rho0 : states) {
    const double dist = trace_distance(rho0, apply(p, rho0));
    result.max_distance = std::max(result.max_distance, dist);
    sum += dist;
  }
  result.mean_distance = sum / states.size();
  result.max_over_mean = result.mean_distance > 0.0
                             ? result.max_distance / result.mean_distance
                             : 1.0;
  const double hn = spectral_norm(h);
  result.bound = 2.0 * delta * t * hn * hn + 1e-9;
  result.within_bound = delta > 0.0 && result.max_distance <= result.bound;
  return result;
}

ConvertResult convert_experiment(const Lindbladian& l, double t, double epsilon,
                                 int grid_n, DistanceMethod method) {
  const int d = l.dim();
  const ComplexMatrix h =
      l.hamiltonian() ? *l.hamiltonian() : ComplexMatrix::Zero(d, d);

  // delta = eps / (t ||D_H||), with the norm measured rather than assumed.
  double dh_norm = 0.0;
  if (max_abs(h) > 0.0) {
    dh_norm = diamond_norm_of_choi(choi(dissipator(h)), method).value;
  }
  ConvertResult result;
  result.epsilon = epsilon;
  result.delta = dh_norm > 0.0 ? std::min(1.0, epsilon / (t * dh_norm)) : 1.0;

  const Lindbladian converted = dissipate_lindbladian(l, result.delta);
  const UniformErrorReport err =
      uniform_generator_error(liouvillian(converted), 1.0 / result.delta,
                              liouvillian(l), t, grid_n, method);
  result.achieved_error = err.max_error;
  result.grid_slack = err.slack;
  result.pass = err.certified() <= epsilon;
  return result;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

const char* kCsvHeader = "t,epsilon,delta_star,T,achieved_error,grid_slack,wall_time_ms";

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.epsilon) << ','
        << format_double(r.delta_star) << ',' << format_double(r.T) << ','
        << format_double(r.achieved_error) << ','
        << format_double(r.grid_slack) << ','
        << format_double(r.wall_time_ms) << "\n";
  }
}

void emit_json(const std::vector<SweepRecord>& records, const SweepFit* fit,
               std::ostream& out) {
  out << "[";
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (i) out << ",";
    out << "\n  {\"t\": " << format_double(r.t)
        << ", \"epsilon\": " << format_double(r.epsilon)
        << ", \"delta_star\": " << format_double(r.delta_star)
        << ", \"T\": " << format_double(r.T)
        << ", \"achieved_error\": " << format_double(r.achieved_error)
        << ", \"grid_slack\": " << format_double(r.grid_slack)
        << ", \"wall_time_ms\": " << format_double(r.wall_time_ms) << "}";
  }
  out << "\n]\n";
  if (fit) {
    // trailing comment-free sidecar is written by the caller when needed
  }
}

void emit_svg(const std::vector<SweepRecord>& records, const SweepFit* fit,
              std::ostream& out) {
  const double width = 640, height = 480, margin = 60;
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  std::vector<std::pair<double, double>> pts;  // (log10 t, log10 T)
  for (const auto& r : records) {
    if (r.bracket_failed || r.T <= 0.0) continue;
    const double x = std::log10(r.t), y = std::log10(r.T);
    pts.push_back({x, y});
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  if (pts.empty()) {
    min_x = min_y = 0;
    max_x = max_y = 1;
  }
  if (max_x - min_x < 1e-12) max_x = min_x + 1;
  if (max_y - min_y < 1e-12) max_y = min_y + 1;
  auto sx = [&](double x) {
    return margin + (x - min_x) / (max_x - min_x) * (width - 2 * margin);
  };
  auto sy = [&](double y) {
    return height - margin - (y - min_y) / (max_y - min_y) * (height - 2 * margin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out << "<line x1=\"" << format_double(margin) << "\" y1=\""
      << format_double(height - margin) << "\" x2=\""
      << format_double(width - margin) << "\" y2=\""
      << format_double(height - margin) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << format_double(margin) << "\" y1=\""
      << format_double(margin) << "\" x2=\"" << format_double(margin)
      << "\" y2=\"" << format_double(height - margin)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"320\" y=\"470\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"12\">log10 t</text>\n";
  out << "<text x=\"15\" y=\"240\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"12\" "
         "transform=\"rotate(-90 15 240)\">log10 T</text>\n";
  for (const auto& [x, y] : pts) {
    out << "<circle cx=\"" << format_double(sx(x)) << "\" cy=\""
        << format_double(sy(y)) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  if (fit && pts.size() >= 2) {
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    const double y0 = my + fit->slope_t * (min_x - mx);
    const double y1 = my + fit->slope_t * (max_x - mx);
    out << "<line x1=\"" << format_double(sx(min_x)) << "\" y1=\""
        << format_double(sy(y0)) << "\" x2=\"" << format_double(sx(max_x))
        << "\" y2=\"" << format_double(sy(y1))
        << "\" stroke=\"crimson\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << format_double(width - margin)
        << "\" y=\"30\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"12\">slope_t = "
        << format_double(fit->slope_t) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

void emit(const std::vector<SweepRecord>& records, EmitFormat format,
          const std::string& path, const SweepFit* fit) {
  if (records.empty()) throw InputError("emit: no records");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit: cannot write " + path);
  switch (format) {
    case EmitFormat::csv: emit_csv(records, out); break;
    case EmitFormat::json: emit_json(records, fit, out); break;
    case EmitFormat::svg: emit_svg(records, fit, out); break;
  }
  if (!out) throw IoError("emit: write failed for " + path);
}

}  // namespace dissim
