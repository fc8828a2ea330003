#pragma once

namespace dissim {

/// Central table of numeric tolerances. Every module and every acceptance
/// test references these by name; nothing hardcodes its own epsilon.
///
/// The defaults below are the contract. Setting the environment variable
/// DISSIM_TOL_TABLE to the path of a JSON object {"name": value, ...}
/// overrides individual entries at process start.
struct ToleranceTable {
  double hermiticity = 1e-10;          // Hermitian-input gates
  double hermiticity_strict = 1e-12;   // Hermitian-flagged matrix invariant
  double eig_reconstruction = 1e-10;   // ||M - V diag(w) V^dag|| / ||M||
  double orthonormality = 1e-10;       // ||V^dag V - I|| entrywise
  double unitarity = 1e-10;            // ||U^dag U - I|| entrywise
  double exact_identity = 1e-12;       // polynomial-in-delta generator identities
  double trace_preservation = 1e-10;   // vec(I)^dag L = 0 rows
  double density_trace = 1e-10;        // |Tr rho - 1|
  double density_min_eig = -1e-9;      // eigenvalue floor for density matrices
  double choi_min_eig = -1e-9;         // CP certificate floor
  double partial_trace = 1e-9;         // ||Tr_out J - I||
  double semigroup = 1e-8;             // P(a)P(b) = P(a+b)
  double gauge_invariance = 1e-11;     // ||L' - L|| after gauge transform
  double jump_bound = 1e-12;           // cached C vs recomputed max norm
  double sdp_gap = 1e-7;               // certified duality gap
  double sdp_bracket = 1e-6;           // DistanceReport upper - lower for method=sdp
  double duhamel_slack = 1e-6;         // additive slack in Lemma-style inequalities
  double det_relative = 1e-9;          // det(e^{TB}) = e^{T Tr S}
  double affine_consistency = 1e-11;   // Bloch affine map vs generator action
  double rigidity_residual = 1e-8;     // extrapolated ||M - L_H||
  double identity_jump = 1e-9;         // ||F - (Tr F / d) I|| in rigidity checks
  double dissipator_null = 1e-10;      // hypothesis gate: sum of dissipators = 0
  double variance_functional = 1e-12;  // <F^dag F> - |<F>|^2 on pure states
};

/// Process-wide table (reads DISSIM_TOL_TABLE once, then immutable).
const ToleranceTable& tol();

}  // namespace dissim
