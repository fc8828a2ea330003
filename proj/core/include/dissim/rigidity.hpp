#pragma once

#include <functional>
#include <vector>

#include "dissim/lindblad.hpp"

namespace dissim {

/// delta-parameterized family of purely dissipative Lindbladians.
struct SmoothFamily {
  std::function<Lindbladian(double)> sampler;
  std::vector<double> delta_samples;  // positive, descending toward 0
  int dim = 0;
};

struct FirstOrderFit {
  Superoperator first_order;            // estimated M with L_{D,delta} = delta M + O(delta^2)
  std::vector<double> residuals;        // ||L_delta/delta - M|| per sample
  double residual_slope = 0.0;          // log-log slope of residual vs delta
  bool degraded = false;                // fit unstable (e.g. L_{D,0} != 0)
};

/// Richardson extrapolation of L_{D,delta}/delta toward delta -> 0.
FirstOrderFit first_order_fit(const SmoothFamily& family);

struct IdentityJumpReport {
  bool applicable = false;               // sum of dissipators vanished
  std::vector<Complex> scalars;          // c_j with F_{j,0} ~ c_j I
  std::vector<double> deviations;        // ||F_{j,0} - (Tr F/d) I||
  double max_variance = 0.0;             // worst <F^dag F> - |<F>|^2 on seeded pure states
  bool pass = false;
};

/// Zeroth-order rigidity step: jumps whose dissipators sum to zero must be
/// scalar multiples of the identity (zero variance on every pure state).
IdentityJumpReport zeroth_order_identity_check(
    const std::vector<ComplexMatrix>& jumps_at_zero, unsigned seed = 7);

/// || H - sum_j (c_j G_j^dag - c_j^* G_j) / (2i) ||_inf.
double first_order_jump_constraint(const std::vector<Complex>& c,
                                   const std::vector<ComplexMatrix>& g,
                                   const ComplexMatrix& h);

}  // namespace dissim
