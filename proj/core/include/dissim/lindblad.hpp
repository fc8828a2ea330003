#pragma once

#include <optional>
#include <vector>

#include "dissim/numkernel.hpp"

namespace dissim {

/// Density matrix: Hermitian, unit trace, eigenvalues above the floor.
struct DensityMatrix {
  ComplexMatrix matrix;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m) : matrix(std::move(m)) {}

  int dim() const { return static_cast<int>(matrix.rows()); }

  /// Throws NumericalError when an invariant fails (no clipping, no renorm).
  void validate(const char* context = "density matrix") const;
};

DensityMatrix pure_state(const ComplexVector& psi);
DensityMatrix maximally_mixed(int dim);

/// GKSL generator data: optional Hamiltonian plus jump operators, with the
/// jump count m and the max spectral norm C cached at construction.
class Lindbladian {
 public:
  Lindbladian() : dim_(0) {}
  Lindbladian(int dim, std::optional<ComplexMatrix> hamiltonian,
              std::vector<ComplexMatrix> jumps);

  static Lindbladian hamiltonian_only(const ComplexMatrix& h);
  static Lindbladian dissipative(std::vector<ComplexMatrix> jumps);

  int dim() const { return dim_; }
  const std::optional<ComplexMatrix>& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& jumps() const { return jumps_; }
  int jump_count() const { return static_cast<int>(jumps_.size()); }
  /// C = max_j ||F_j||_inf, cached.
  double jump_bound() const { return jump_bound_; }
  bool purely_dissipative() const { return !hamiltonian_.has_value(); }

 private:
  int dim_;
  std::optional<ComplexMatrix> hamiltonian_;
  std::vector<ComplexMatrix> jumps_;
  double jump_bound_ = 0.0;
};

/// D x D matrix (D = dim^2) acting on column-vectorized density matrices.
struct Superoperator {
  enum class Kind { generator, propagator, map };

  int dim = 0;  // Hilbert-space dimension d; matrix is d^2 x d^2
  ComplexMatrix matrix;
  Kind kind = Kind::map;

  int super_dim() const { return dim * dim; }
};

/// Column-stacking convention, fixed once: vec(AXB) = (B^T (x) A) vec(X).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const ComplexVector& v, int dim);

/// Liouvillian matrix of the GKSL generator.
Superoperator liouvillian(const Lindbladian& l);

/// Superoperator of the Hamiltonian commutator -i[H, .] alone.
Superoperator hamiltonian_liouvillian(const ComplexMatrix& h);

/// Superoperator of the single dissipator F . F^dag - (1/2){F^dag F, .}.
Superoperator dissipator(const ComplexMatrix& jump);

/// e^{S tau}; requires a generator and tau >= 0.
Superoperator propagator(const Superoperator& s, double tau);

/// Apply a superoperator to a state.
DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho);

/// States at the given times, each validated against the density invariants.
std::vector<DensityMatrix> evolve_grid(const Lindbladian& l,
                                       const DensityMatrix& rho0,
                                       const std::vector<double>& times);

/// Cross-validation integrator: classic fixed-step fourth-order Runge-Kutta
/// on the master equation. Not used by any production path.
DensityMatrix evolve_rk4(const Lindbladian& l, const DensityMatrix& rho0,
                         double t, int steps);

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  double partial_trace_residual = 0.0;
  bool pass = false;
};

/// Choi positivity and partial-trace check of a propagator. Never throws on
/// failure; the report carries the offending numbers.
CptpReport cptp_certificate(const Superoperator& p);

}  // namespace dissim
