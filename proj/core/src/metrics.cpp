#include "dissim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dissim/errors.hpp"
#include "dissim/sdp.hpp"
#include "dissim/tolerances.hpp"

namespace dissim {

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw InputError("trace_distance: dimension mismatch");
  }
  return 0.5 * trace_norm(rho.matrix - sigma.matrix);
}

ChoiMatrix choi(const Superoperator& s) {
  const int d = s.dim;
  const int dd = d * d;
  if (s.matrix.rows() != dd || s.matrix.cols() != dd) {
    throw InputError("choi: superoperator is not d^2 x d^2");
  }
  ChoiMatrix j;
  j.dim = d;
  j.matrix = ComplexMatrix::Zero(dd, dd);
  for (int row = 0; row < d; ++row) {
    for (int col = 0; col < d; ++col) {
      // vec(E_{row,col}) has its single 1 at index col*d + row.
      const ComplexMatrix image = devectorize(s.matrix.col(col * d + row), d);
      j.matrix.block(row * d, col * d, d, d) = image;
    }
  }
  return j;
}

namespace {

DistanceReport sandwich_report(const ChoiMatrix& j, bool degraded) {
  DistanceReport r;
  const double tn = trace_norm(j.matrix);
  r.lower_bound = tn / j.dim;
  r.upper_bound = tn;
  r.value = tn;  // conservative side for <= epsilon checks
  r.method = DistanceMethod::sandwich;
  r.degraded = degraded;
  return r;
}

/// Watrous SDP:  max Re Tr(J^dag X)  s.t.  [[rho0 (x) I, X], [X^dag,
/// rho1 (x) I]] >= 0 with rho0, rho1 density matrices. The value is the
/// diamond norm of the Hermiticity-preserving map with Choi matrix J.
DistanceReport diamond_sdp(const ChoiMatrix& j) {
  const int d = j.dim;
  const int dd = d * d;
  const int n = 2 * dd;

  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  c.block(0, dd, dd, dd) = -0.5 * j.matrix;
  c.block(dd, 0, dd, dd) = -0.5 * j.matrix.adjoint();

  std::vector<SdpConstraint> cons;
  RealVector b;
  std::vector<double> bvals;

  for (int block = 0; block < 2; ++block) {
    const int off = block * dd;

    // Tr(rho (x) I) = d.
    SdpConstraint trace_con;
    for (int p = 0; p < dd; ++p) trace_con.add(off + p, off + p, 1.0);
    cons.push_back(std::move(trace_con));
    bvals.push_back(double(d));

    // Entries off-diagonal in the output factor vanish.
    for (int p = 0; p < dd; ++p) {
      for (int q = p + 1; q < dd; ++q) {
        if (p % d == q % d) continue;  // same output index
        SdpConstraint re;
        re.add(off + p, off + q, 1.0);
        cons.push_back(std::move(re));
        bvals.push_back(0.0);
        SdpConstraint im;
        im.add(off + p, off + q, Complex(0.0, 1.0));
        cons.push_back(std::move(im));
        bvals.push_back(0.0);
      }
    }

    // Output-diagonal entries are independent of the output index.
    for (int i = 0; i < d; ++i) {
      for (int jdx = i; jdx < d; ++jdx) {
        for (int a = 1; a < d; ++a) {
          const int p0 = i * d, q0 = jdx * d;
          const int pa = i * d + a, qa = jdx * d + a;
          SdpConstraint re;
          re.add(off + pa, off + qa, 1.0);
          re.add(off + p0, off + q0, -1.0);
          cons.push_back(std::move(re));
          bvals.push_back(0.0);
          if (i != jdx) {
            SdpConstraint im;
            im.add(off + pa, off + qa, Complex(0.0, 1.0));
            im.add(off + p0, off + q0, Complex(0.0, -1.0));
            cons.push_back(std::move(im));
            bvals.push_back(0.0);
          }
        }
      }
    }
  }
  b = Eigen::Map<const RealVector>(bvals.data(), bvals.size());

  const SdpSolution sol = solve_sdp(c, cons, b);
  if (!sol.converged) return sandwich_report(j, /*degraded=*/true);

  DistanceReport r;
  r.method = DistanceMethod::sdp;
  r.iterations = sol.iterations;
  r.value = -sol.primal_objective;
  const DistanceReport sandwich = sandwich_report(j, false);
  r.lower_bound = std::max(r.value - sol.gap, sandwich.lower_bound);
  r.upper_bound = std::min(r.value + sol.gap, sandwich.upper_bound);
  return r;
}

}  // namespace

DistanceReport diamond_norm_of_choi(const ChoiMatrix& j, DistanceMethod method) {
  if (max_abs(j.matrix) < 1e-14) {
    DistanceReport r;
    r.method = method;
    return r;
  }
  if (hermiticity_defect(j.matrix) > 1e-8 * std::max(1.0, max_abs(j.matrix))) {
    throw InputError("diamond_norm: map is not Hermiticity-preserving");
  }
  if (method == DistanceMethod::sandwich || j.dim > kMaxSdpDim) {
    return sandwich_report(j, j.dim > kMaxSdpDim && method == DistanceMethod::sdp);
  }
  return diamond_sdp(j);
}

DistanceReport diamond_distance(const Superoperator& phi1,
                                const Superoperator& phi2,
                                DistanceMethod method) {
  if (phi1.dim != phi2.dim) {
    throw InputError("diamond_distance: dimension mismatch");
  }
  Superoperator diff;
  diff.dim = phi1.dim;
  diff.kind = Superoperator::Kind::map;
  diff.matrix = phi1.matrix - phi2.matrix;
  return diamond_norm_of_choi(choi(diff), method);
}

DistanceReport generator_distance(const Lindbladian& l1, const Lindbladian& l2,
                                  DistanceMethod method) {
  if (l1.dim() != l2.dim()) {
    throw InputError("generator_distance: dimension mismatch");
  }
  return diamond_distance(liouvillian(l1), liouvillian(l2), method);
}

UniformErrorReport uniform_generator_error(const Superoperator& fast,
                                           double rate,
                                           const Superoperator& target,
                                           double t, int grid_n,
                                           DistanceMethod method) {
  if (grid_n < 8) throw InputError("uniform_error: grid_n must be >= 8");
  if (fast.dim != target.dim) {
    throw InputError("uniform_error: dimension mismatch");
  }
  if (t <= 0.0) throw InputError("uniform_error: t must be positive");

  UniformErrorReport report;
  for (int k = 0; k <= grid_n; ++k) {
    const double s = t * k / grid_n;
    const DistanceReport d = diamond_distance(propagator(fast, rate * s),
                                              propagator(target, s), method);
    report.max_error = std::max(report.max_error, d.value);
    report.degraded = report.degraded || d.degraded;
  }

  // Lipschitz constant of s -> ||e^{fast rate s} - e^{target s}||_diamond:
  // both the Duhamel bound ||rate*fast - target||_diamond (contractivity of
  // the two semigroups) and the sum of generator norms are valid; take the
  // smaller, each certified from above by its Choi trace norm.
  Superoperator diff;
  diff.dim = fast.dim;
  diff.matrix = rate * fast.matrix - target.matrix;
  const double lip_tight = trace_norm(choi(diff).matrix);
  const double lip_loose = rate * trace_norm(choi(fast).matrix) +
                           trace_norm(choi(target).matrix);
  const double ds = t / grid_n;
  report.slack = 0.5 * ds * std::min(lip_tight, lip_loose);
  return report;
}

UniformErrorReport uniform_error(const Lindbladian& dissipative_gen,
                                 const ComplexMatrix& hamiltonian, double t,
                                 double delta, int grid_n,
                                 DistanceMethod method) {
  if (delta <= 0.0) throw InputError("uniform_error: delta must be positive");
  const Superoperator fast = liouvillian(dissipative_gen);
  Superoperator target;
  if (hamiltonian.size() == 0 || max_abs(hamiltonian) == 0.0) {
    target.dim = dissipative_gen.dim();
    target.kind = Superoperator::Kind::generator;
    target.matrix = ComplexMatrix::Zero(fast.matrix.rows(), fast.matrix.cols());
  } else {
    target = hamiltonian_liouvillian(hamiltonian);
  }
  return uniform_generator_error(fast, 1.0 / delta, target, t, grid_n, method);
}

}  // namespace dissim
