#include "dissim/blochgeo.hpp"

#include <cmath>
#include <sstream>

#include "dissim/errors.hpp"
#include "dissim/tolerances.hpp"

namespace dissim {

namespace {

Vector3 bloch_vector(const ComplexMatrix& rho) {
  Vector3 r;
  for (int k = 1; k <= 3; ++k) r(k - 1) = (pauli(k) * rho).trace().real();
  return r;
}

ComplexMatrix generator_action(const Superoperator& gen, const ComplexMatrix& m) {
  return devectorize(gen.matrix * vectorize(m), gen.dim);
}

}  // namespace

Matrix3 BlochAffine::B() const { return S + cross_matrix(omega); }

std::pair<Complex, Eigen::Vector3cd> pauli_split(const ComplexMatrix& f) {
  if (f.rows() != 2 || f.cols() != 2) {
    throw InputError("pauli_split: matrix must be 2x2");
  }
  Complex a = 0.5 * f.trace();
  Eigen::Vector3cd u;
  for (int k = 1; k <= 3; ++k) u(k - 1) = 0.5 * (pauli(k) * f).trace();
  return {a, u};
}

Matrix3 cross_matrix(const Vector3& w) {
  Matrix3 m;
  m << 0, -w(2), w(1), w(2), 0, -w(0), -w(1), w(0), 0;
  return m;
}

Matrix3 rotation_z(double angle) {
  Matrix3 m;
  m << std::cos(angle), -std::sin(angle), 0, std::sin(angle), std::cos(angle),
      0, 0, 0, 1;
  return m;
}

BlochAffine bloch_affine(const Lindbladian& l) {
  if (l.dim() != 2) throw InputError("bloch_affine: qubit generators only");
  if (!l.purely_dissipative()) {
    throw InputError("bloch_affine: generator has a Hamiltonian part");
  }

  BlochAffine b;
  for (const auto& f : l.jumps()) {
    const auto [a, u] = pauli_split(f);
    b.S += 2.0 * ((u * u.adjoint()).real() -
                  u.squaredNorm() * Matrix3::Identity());
    b.omega += -2.0 * (std::conj(a) * u).imag();
  }

  // The translation is recovered from the generator's action on I/2.
  const Superoperator gen = liouvillian(l);
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  b.c = bloch_vector(generator_action(gen, 0.5 * id2));

  // Cross-check: rdot = B r + c must reproduce the generator on the four
  // states {I/2, (I + sigma_k)/2}.
  const Matrix3 bmat = b.B();
  for (int k = 0; k <= 3; ++k) {
    ComplexMatrix rho = 0.5 * id2;
    Vector3 r = Vector3::Zero();
    if (k > 0) {
      rho += 0.5 * pauli(k);
      r(k - 1) = 1.0;
    }
    const Vector3 lhs = bloch_vector(generator_action(gen, rho));
    const Vector3 rhs = bmat * r + b.c;
    if ((lhs - rhs).cwiseAbs().maxCoeff() > tol().affine_consistency) {
      std::ostringstream msg;
      msg << "bloch_affine: affine map disagrees with generator on state " << k
          << " by " << (lhs - rhs).cwiseAbs().maxCoeff();
      throw NumericalError(msg.str());
    }
  }
  return b;
}

BudgetReport budget_check(const BlochAffine& b, int m, double jump_bound) {
  BudgetReport r;
  r.lhs = b.omega.squaredNorm();
  r.rhs = m * jump_bound * jump_bound * (-b.S.trace());
  r.pass = r.lhs <= r.rhs + 1e-12;
  return r;
}

TrajectoryDiagnostics trajectory_diagnostics(const Lindbladian& dissipative,
                                             double nu, double t, double T,
                                             int grid_n) {
  if (dissipative.dim() != 2) {
    throw InputError("trajectory_diagnostics: qubit generators only");
  }
  if (T <= 0.0 || grid_n < 2) {
    throw InputError("trajectory_diagnostics: need T > 0 and grid_n >= 2");
  }
  const Superoperator gen = liouvillian(dissipative);
  const double alpha = nu * t / T;

  TrajectoryDiagnostics diag;
  diag.taus.reserve(grid_n + 1);
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);

  Vector3 prev_v = Vector3::Zero();
  for (int k = 0; k <= grid_n; ++k) {
    const double tau = T * k / grid_n;
    const Superoperator p = propagator(gen, tau);

    // A[k][l] = Tr(sigma_k Phi(sigma_l))/2, b[k] = Tr(sigma_k Phi(I))/2.
    Matrix3 a;
    Vector3 btr;
    const ComplexMatrix phi_id = devectorize(p.matrix * vectorize(id2), 2);
    for (int row = 1; row <= 3; ++row) {
      btr(row - 1) = 0.5 * (pauli(row) * phi_id).trace().real();
      for (int col = 1; col <= 3; ++col) {
        const ComplexMatrix img =
            devectorize(p.matrix * vectorize(pauli(col)), 2);
        a(row - 1, col - 1) = 0.5 * (pauli(row) * img).trace().real();
      }
    }

    diag.taus.push_back(tau);
    diag.linear_parts.push_back(a);
    diag.translations.push_back(btr);

    const Matrix3 dev = a - rotation_z(alpha * tau);
    diag.sup_rotation_deviation = std::max(
        diag.sup_rotation_deviation,
        dev.jacobiSvd().singularValues()(0));
    diag.sup_translation = std::max(diag.sup_translation, btr.norm());

    const Vector3 v = a * Vector3::UnitX();
    if (k > 0) diag.path_length += (v - prev_v).norm();
    prev_v = v;

    if (k == grid_n) {
      diag.singular_values_at_T = a.jacobiSvd().singularValues();
    }
  }
  return diag;
}

LowerBoundCertificate lower_bound_certificate(const BlochAffine& b,
                                              const TrajectoryDiagnostics& diag,
                                              int m, double jump_bound,
                                              double epsilon, double nu,
                                              double t, double T) {
  LowerBoundCertificate cert;
  cert.theta = std::abs(nu) * t;
  cert.alpha = cert.theta / T;
  cert.m = m;
  cert.C = jump_bound;
  cert.epsilon = epsilon;
  cert.T_achieved = T;
  cert.T_lower =
      cert.theta * cert.theta / (384.0 * m * jump_bound * jump_bound * epsilon);

  // The epsilon gate controls whether a bound violation is fatal; the
  // individual inequalities are still evaluated and reported outside it.
  cert.applicable =
      epsilon > 0.0 && epsilon <= std::min(1.0, cert.theta) / 100.0;

  const double neg_trace = -b.S.trace();
  cert.contraction_ok = neg_trace <= 6.0 * epsilon / T + 1e-12;
  cert.rotation_rate_ok = b.omega.norm() >= cert.theta / (8.0 * T) - 1e-12;
  cert.budget_ok = budget_check(b, m, jump_bound).pass;
  cert.bound_ok = T >= cert.T_lower;
  (void)diag;
  return cert;
}

}  // namespace dissim
