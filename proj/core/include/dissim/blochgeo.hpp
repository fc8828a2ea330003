#pragma once

#include <utility>
#include <vector>

#include "dissim/lindblad.hpp"

namespace dissim {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Affine Bloch generator of a purely dissipative qubit Lindbladian:
/// rdot = (S + [omega x]) r + c with S symmetric negative semidefinite.
struct BlochAffine {
  Matrix3 S = Matrix3::Zero();
  Vector3 omega = Vector3::Zero();
  Vector3 c = Vector3::Zero();

  Matrix3 B() const;
};

/// F = a I + u . sigma.
std::pair<Complex, Eigen::Vector3cd> pauli_split(const ComplexMatrix& f);

/// S and omega from the jump decomposition; c recovered numerically from
/// the generator's action on I/2 and cross-checked against the generator's
/// action on the axis states.
BlochAffine bloch_affine(const Lindbladian& l);

/// [omega x] as a matrix.
Matrix3 cross_matrix(const Vector3& omega);

/// Rotation about z by `angle`.
Matrix3 rotation_z(double angle);

struct BudgetReport {
  double lhs = 0.0;  // |omega|^2
  double rhs = 0.0;  // m C^2 (-Tr S)
  bool pass = false;
};

/// |omega|^2 <= m C^2 (-Tr S).
BudgetReport budget_check(const BlochAffine& b, int m, double jump_bound);

/// Bloch-picture samples of the dissipative propagator against the target
/// rotation R_z(alpha tau), alpha = nu t / T.
struct TrajectoryDiagnostics {
  std::vector<Matrix3> linear_parts;    // A_tau on the grid
  std::vector<Vector3> translations;    // b_tau on the grid
  std::vector<double> taus;
  double path_length = 0.0;             // polygonal length of v = A_tau e_x
  Vector3 singular_values_at_T = Vector3::Zero();
  double sup_rotation_deviation = 0.0;  // sup ||A_tau - R_z(alpha tau)||
  double sup_translation = 0.0;         // sup |b_tau|
};

TrajectoryDiagnostics trajectory_diagnostics(const Lindbladian& dissipative,
                                             double nu, double t, double T,
                                             int grid_n);

struct LowerBoundCertificate {
  bool applicable = false;  // epsilon <= min(1, Theta)/100 gate
  double theta = 0.0;       // |nu| t
  double alpha = 0.0;       // Theta / T
  int m = 0;
  double C = 0.0;
  double epsilon = 0.0;
  double T_achieved = 0.0;
  double T_lower = 0.0;  // Theta^2 / (384 m C^2 epsilon)

  bool contraction_ok = false;    // -Tr S <= 6 eps / T
  bool rotation_rate_ok = false;  // |omega| >= Theta / (8 T)
  bool budget_ok = false;         // |omega|^2 <= m C^2 (-Tr S)
  bool bound_ok = false;          // T_achieved >= T_lower
  bool pass() const {
    return applicable && contraction_ok && rotation_rate_ok && budget_ok &&
           bound_ok;
  }
};

LowerBoundCertificate lower_bound_certificate(const BlochAffine& b,
                                              const TrajectoryDiagnostics& diag,
                                              int m, double jump_bound,
                                              double epsilon, double nu,
                                              double t, double T);

}  // namespace dissim
