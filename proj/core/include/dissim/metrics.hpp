#pragma once

#include "dissim/lindblad.hpp"

namespace dissim {

/// J(Phi) = sum_{jk} E_jk (x) Phi(E_jk), under the column-stacking
/// convention shared with vectorize(). First tensor factor is the input.
struct ChoiMatrix {
  int dim = 0;  // Hilbert-space dimension d; matrix is d^2 x d^2
  ComplexMatrix matrix;
};

ChoiMatrix choi(const Superoperator& s);

enum class DistanceMethod { sdp, sandwich };

struct DistanceReport {
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  DistanceMethod method = DistanceMethod::sdp;
  int iterations = 0;
  /// Set when the SDP was unavailable or did not converge and the report
  /// fell back to the sandwich bracket.
  bool degraded = false;
};

/// Half the trace norm of rho - sigma (the 1/2 convention is used for every
/// state-distance constant in this codebase).
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Diamond norm of the Hermiticity-preserving map with Choi matrix j.
DistanceReport diamond_norm_of_choi(const ChoiMatrix& j, DistanceMethod method);

/// ||Phi1 - Phi2||_diamond.
DistanceReport diamond_distance(const Superoperator& phi1,
                                const Superoperator& phi2,
                                DistanceMethod method = DistanceMethod::sdp);

/// ||L1 - L2||_diamond on the Liouvillian superoperators.
DistanceReport generator_distance(const Lindbladian& l1, const Lindbladian& l2,
                                  DistanceMethod method = DistanceMethod::sdp);

struct UniformErrorReport {
  double max_error = 0.0;  // max over the time grid
  double slack = 0.0;      // certified grid-resolution bound
  bool degraded = false;
  double certified() const { return max_error + slack; }
};

/// sup over s in [0, t] of || e^{fast * rate * s} - e^{target * s} ||_diamond,
/// evaluated on a uniform grid of grid_n+1 points with a Lipschitz slack that
/// certifies the true supremum within [max_error, max_error + slack].
UniformErrorReport uniform_generator_error(const Superoperator& fast,
                                           double rate,
                                           const Superoperator& target,
                                           double t, int grid_n,
                                           DistanceMethod method);

/// Theorem-style uniform simulation error of a dissipative Lindbladian at
/// rescaled time s/delta against the Hamiltonian dynamics e^{-iHs}.
UniformErrorReport uniform_error(const Lindbladian& dissipative_gen,
                                 const ComplexMatrix& hamiltonian, double t,
                                 double delta, int grid_n,
                                 DistanceMethod method = DistanceMethod::sdp);

/// Largest Hilbert-space dimension the dense interior-point diamond SDP is
/// run at; beyond it diamond_distance degrades to the sandwich bracket.
inline constexpr int kMaxSdpDim = 4;

}  // namespace dissim
