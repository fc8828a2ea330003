#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dissim/blochgeo.hpp"
#include "dissim/constructions.hpp"
#include "dissim/metrics.hpp"
#include "dissim/rigidity.hpp"

namespace dissim {

enum class ExperimentKind {
  sweep,
  freeze,
  convert,
  gauge,
  certificate,
  rigidity,
  diamond,
};

ExperimentKind parse_experiment(const std::string& name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::sweep;
  std::string hamiltonian_spec = "pauli_z_half";
  std::optional<ComplexMatrix> explicit_hamiltonian;
  std::vector<ComplexMatrix> jumps;  // for convert/gauge experiments
  std::vector<double> t_values;
  std::vector<double> epsilon_values;
  int grid_n = 32;
  double delta = 0.0;   // freeze experiment
  double nu = 1.0;      // certificate experiment
  std::uint64_t seed = 1;
  int threads = 1;
  DistanceMethod method = DistanceMethod::sdp;
  std::string out_dir = ".";
  std::string format = "csv";

  /// Resolves the preset / explicit matrix to a Hermitian matrix.
  ComplexMatrix hamiltonian() const;
};

/// Parses the flat JSON config file. Unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

/// Named presets: pauli_z_half, tfim_2, parity:<bits>.
ComplexMatrix hamiltonian_preset(const std::string& spec);

struct SweepRecord {
  double t = 0.0;
  double epsilon = 0.0;
  double delta_star = 0.0;
  double T = 0.0;  // t / delta_star
  double achieved_error = 0.0;
  double grid_slack = 0.0;
  double wall_time_ms = 0.0;
  bool bracket_failed = false;  // excluded from fits
};

struct SweepFit {
  double slope_t = 0.0;        // log T vs log t at fixed epsilon
  double slope_inv_eps = 0.0;  // log T vs log(1/epsilon) at fixed t
  double prefactor = 0.0;      // measured T * epsilon / t^2, median
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepFit fit;
};

/// For each (t, epsilon): bisects for the largest delta with
/// uniform_error + slack <= epsilon, records T = t/delta, and fits the
/// log-log scaling slopes.
SweepResult sweep_scaling(const ExperimentConfig& cfg);

struct FreezeResult {
  double max_distance = 0.0;   // over the 16 initial states
  double mean_distance = 0.0;
  double bound = 0.0;          // 2 delta t ||H||^2 + slack
  bool within_bound = false;
  /// Contrast note: unlike Zeno-subspace freezing, the jump freezes every
  /// state; max/mean stays O(1).
  double max_over_mean = 0.0;
};

FreezeResult freeze_experiment(const ComplexMatrix& h, double delta, double t,
                               std::uint64_t seed = 1);

struct ConvertResult {
  double delta = 0.0;
  double achieved_error = 0.0;
  double grid_slack = 0.0;
  double epsilon = 0.0;
  bool pass = false;
};

/// Simulates a general Lindbladian by its purely dissipative conversion at
/// rescaled time and checks the uniform grid error.
ConvertResult convert_experiment(const Lindbladian& l, double t, double epsilon,
                                 int grid_n = 32,
                                 DistanceMethod method = DistanceMethod::sdp);

enum class EmitFormat { csv, json, svg };

/// Writes records to `path`. CSV header is exactly
/// t,epsilon,delta_star,T,achieved_error,grid_slack,wall_time_ms with
/// shortest round-trip decimal formatting; output bytes are a pure
/// function of the records.
void emit(const std::vector<SweepRecord>& records, EmitFormat format,
          const std::string& path, const SweepFit* fit = nullptr);

std::string format_double(double x);

}  // namespace dissim
