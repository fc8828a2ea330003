#pragma once

#include <vector>

#include "dissim/numkernel.hpp"

namespace dissim {

/// Sparse Hermitian constraint matrix, stored as explicit entries of both
/// triangles. Constraints in this codebase touch at most a handful of
/// entries, which keeps the Schur complement assembly cheap.
struct SdpConstraint {
  struct Entry {
    int row;
    int col;
    Complex value;
  };
  std::vector<Entry> entries;

  /// Adds value at (r,c) and its conjugate at (c,r).
  void add(int r, int c, Complex v) {
    entries.push_back({r, c, v});
    if (r != c) entries.push_back({c, r, std::conj(v)});
  }

  double inner(const ComplexMatrix& x) const {
    Complex acc = 0.0;
    for (const auto& e : entries) acc += e.value * x(e.col, e.row);
    return acc.real();
  }
};

struct SdpOptions {
  int max_iterations = 100;
  double gap_tolerance = 1e-9;   // complementarity mu * n, relative
  double feas_tolerance = 1e-8;  // primal/dual residuals, relative
};

struct SdpSolution {
  ComplexMatrix X;   // primal matrix, PSD
  ComplexMatrix Z;   // dual slack, PSD
  RealVector y;      // dual multipliers
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;              // |primal - dual| plus feasibility margins
  double primal_residual = 0.0;  // ||b - A(X)||_inf
  double dual_residual = 0.0;    // max |C - Z - A*(y)|
  int iterations = 0;
  bool converged = false;
};

/// Solves  min Re<C,X>  s.t.  Re Tr(A_i X) = b_i,  X >= 0 (Hermitian PSD)
/// with an infeasible-start HKM predictor-corrector interior-point method.
/// Both the primal and dual iterates stay strictly positive definite; the
/// reported gap is a certified bound on the distance to optimality given
/// the final feasibility residuals.
SdpSolution solve_sdp(const ComplexMatrix& c,
                      const std::vector<SdpConstraint>& constraints,
                      const RealVector& b, const SdpOptions& options = {});

}  // namespace dissim
