#include "dissim/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "dissim/errors.hpp"

namespace dissim {

namespace {

RealVector apply_constraints(const std::vector<SdpConstraint>& cons,
                             const ComplexMatrix& x) {
  RealVector out(cons.size());
  for (size_t i = 0; i < cons.size(); ++i) out(i) = cons[i].inner(x);
  return out;
}

ComplexMatrix adjoint_apply(const std::vector<SdpConstraint>& cons,
                            const RealVector& y, int n) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (size_t i = 0; i < cons.size(); ++i) {
    for (const auto& e : cons[i].entries) out(e.row, e.col) += y(i) * e.value;
  }
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

/// Largest alpha in (0, 1] with S + alpha dS positive definite, damped.
double step_length(const ComplexMatrix& s, const ComplexMatrix& ds) {
  Eigen::LLT<ComplexMatrix> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  ComplexMatrix g = llt.matrixL().solve(ds);
  g = llt.matrixL().solve(g.adjoint()).adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(g),
                                                   Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  if (lmin >= 0.0) return 1.0;
  return std::min(1.0, -0.98 / lmin);
}

}  // namespace

SdpSolution solve_sdp(const ComplexMatrix& c,
                      const std::vector<SdpConstraint>& constraints,
                      const RealVector& b, const SdpOptions& options) {
  const int n = static_cast<int>(c.rows());
  const int m = static_cast<int>(constraints.size());
  if (c.cols() != n) throw InputError("solve_sdp: objective is not square");
  if (b.size() != m) throw InputError("solve_sdp: b size mismatch");

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double scale_c = std::max(1.0, max_abs(c));
  const double scale_b = std::max(1.0, m ? b.cwiseAbs().maxCoeff() : 0.0);

  SdpSolution sol;
  sol.X = std::max(10.0, scale_b) * id;
  sol.Z = std::max(10.0, scale_c) * id;
  sol.y = RealVector::Zero(m);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double mu = (sol.X * sol.Z).trace().real() / n;
    const RealVector rp = b - apply_constraints(constraints, sol.X);
    const ComplexMatrix rd =
        c - sol.Z - adjoint_apply(constraints, sol.y, n);

    sol.primal_objective = (c.adjoint() * sol.X).trace().real();
    sol.dual_objective = m ? b.dot(sol.y) : 0.0;
    sol.primal_residual = m ? rp.cwiseAbs().maxCoeff() : 0.0;
    sol.dual_residual = max_abs(rd);
    sol.iterations = iter;

    const double obj_scale =
        1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective);
    if (sol.primal_residual <= options.feas_tolerance * scale_b &&
        sol.dual_residual <= options.feas_tolerance * scale_c &&
        mu * n <= options.gap_tolerance * obj_scale) {
      sol.converged = true;
      break;
    }

    Eigen::LLT<ComplexMatrix> lltz(sol.Z);
    if (lltz.info() != Eigen::Success) break;
    const ComplexMatrix zinv = lltz.solve(id);

    // Schur complement M_ij = Re Tr(A_i X A_j Z^{-1}), assembled from the
    // sparse constraint entries.
    RealMatrix schur = RealMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j <= i; ++j) {
        Complex acc = 0.0;
        for (const auto& e : constraints[i].entries) {
          for (const auto& f : constraints[j].entries) {
            acc += e.value * f.value * sol.X(e.col, f.row) * zinv(f.col, e.row);
          }
        }
        schur(i, j) = acc.real();
        schur(j, i) = acc.real();
      }
    }
    // Tiny diagonal lift keeps the factorization stable near convergence.
    schur.diagonal().array() += 1e-14 * (1.0 + schur.diagonal().maxCoeff());
    Eigen::LDLT<RealMatrix> schur_fact(schur);

    const RealVector a_zinv = apply_constraints(constraints, zinv);

    auto solve_direction = [&](double nu, const ComplexMatrix& correction,
                               RealVector& dy, ComplexMatrix& dz,
                               ComplexMatrix& dx) {
      const ComplexMatrix p = (sol.X * rd + correction) * zinv;
      RealVector rhs = b - nu * a_zinv + apply_constraints(constraints, p);
      dy = m ? RealVector(schur_fact.solve(rhs)) : RealVector(0);
      dz = rd - adjoint_apply(constraints, dy, n);
      dx = hermitian_part(nu * zinv - sol.X - (sol.X * dz + correction) * zinv);
    };

    // Predictor (affine scaling).
    RealVector dy_aff;
    ComplexMatrix dz_aff, dx_aff;
    solve_direction(0.0, ComplexMatrix::Zero(n, n), dy_aff, dz_aff, dx_aff);
    const double ap_aff = step_length(sol.X, dx_aff);
    const double ad_aff = step_length(sol.Z, dz_aff);
    const double mu_aff = ((sol.X + ap_aff * dx_aff) * (sol.Z + ad_aff * dz_aff))
                              .trace()
                              .real() /
                          n;
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::clamp(sigma, 1e-8, 1.0);

    // Corrector.
    RealVector dy;
    ComplexMatrix dz, dx;
    solve_direction(sigma * mu, ComplexMatrix(dx_aff * dz_aff), dy, dz, dx);
    const double ap = step_length(sol.X, dx);
    const double ad = step_length(sol.Z, dz);
    if (ap <= 1e-14 || ad <= 1e-14) break;

    sol.X += ap * dx;
    sol.Z += ad * dz;
    if (m) sol.y += ad * dy;
  }

  // Certified optimality margin: duality gap plus the reach of the
  // remaining infeasibilities.
  const double y_scale = m ? 1.0 + sol.y.cwiseAbs().maxCoeff() : 1.0;
  const double x_scale = 1.0 + sol.X.trace().real();
  sol.gap = std::abs(sol.primal_objective - sol.dual_objective) +
            m * sol.primal_residual * y_scale +
            n * sol.dual_residual * x_scale;
  return sol;
}

}  // namespace dissim
