#pragma once

#include <string>
#include <vector>

#include "dissim/lindblad.hpp"

namespace dissim {

/// Purely dissipative families whose generator equals delta * L_H plus an
/// explicit delta^2 dissipator.
struct MimicFamily {
  enum class Kind { single, generalA, unitary, local };

  Kind kind = Kind::single;
  double delta = 0.0;
  Lindbladian lindbladian;

  /// First-order target: the Hamiltonian whose commutator the family mimics
  /// (the anti-Hermitian part of A for the generalA kind).
  ComplexMatrix target_hamiltonian;
};

/// Jump F = I - i delta H; generator = delta L_H + delta^2 D_H exactly.
MimicFamily mimic_single(const ComplexMatrix& h, double delta);

/// Jump F = I - delta A; generator = delta L_H + delta^2 D_A with
/// H = (A - A^dag)/(2i) exactly.
MimicFamily mimic_general(const ComplexMatrix& a, double delta);

/// Jump F = e^{-i H delta}; generator within O(delta^2) of delta L_H.
MimicFamily mimic_unitary(const ComplexMatrix& h, double delta);

/// Jumps {I - i delta H_i}; generator = delta L_{sum H_i} + delta^2 sum D_{H_i}.
MimicFamily mimic_local(const std::vector<ComplexMatrix>& terms, double delta);

/// Hamiltonian H plus jump delta^{-1/2} (I + i delta H); the commutator
/// cancels exactly and the total generator equals delta D_H.
Lindbladian freeze_jump(const ComplexMatrix& h, double delta);

/// Purely dissipative conversion of a general Lindbladian: jumps
/// {I - i delta H} u {sqrt(delta) F_i}; generator = delta L + delta^2 D_H.
Lindbladian dissipate_lindbladian(const Lindbladian& l, double delta);

/// Unitary jump mixing plus identity shifts; leaves the Liouvillian fixed.
struct GaugeParams {
  ComplexMatrix unitary;  // m x m
  ComplexVector shifts;   // c, length m
};

GaugeParams identity_gauge(int jump_count);
GaugeParams inverse_gauge(const GaugeParams& g);

/// F_i' = sum_j U_ij F_j + c_i I;  H' = H - (i/2) sum_i (c_i^* F_i' - c_i F_i'^dag).
Lindbladian gauge_transform(const Lindbladian& l, const GaugeParams& g);

/// ||H||_inf + sum_i ||F_i||_inf^2 (the block-encoding simulation cost).
double gauge_cost(const Lindbladian& l);

struct GaugeOptimum {
  GaugeParams gauge;
  Lindbladian lindbladian;
  double cost = 0.0;
};

/// Derivative-free descent over the identity-shift orbit (U fixed to I):
/// coordinate-wise quadratic fits on Re/Im of each c_i. Cost never
/// increases; a stationary input is returned unchanged.
GaugeOptimum gauge_optimize(const Lindbladian& l, int budget);

/// Weighted layer-graph Hamiltonian on vertices (j, p), j = 0..n, p = 0/1
/// (index 2j + p), with unit edges following the running parity of `bits`.
/// Exactly n edges; a continuous-time walk from (0,0) computes the parity.
ComplexMatrix parity_hamiltonian(const std::string& bits);

}  // namespace dissim
