#include "dissim/lindblad.hpp"

#include <cmath>
#include <sstream>

#include "dissim/errors.hpp"
#include "dissim/metrics.hpp"
#include "dissim/tolerances.hpp"

namespace dissim {

void DensityMatrix::validate(const char* context) const {
  const auto& t = tol();
  if (hermiticity_defect(matrix) > t.hermiticity) {
    throw NumericalError(std::string(context) + ": state not Hermitian");
  }
  const double trace_err = std::abs(matrix.trace() - Complex(1.0, 0.0));
  if (trace_err > t.density_trace) {
    std::ostringstream msg;
    msg << context << ": trace deviates from 1 by " << trace_err;
    throw NumericalError(msg.str());
  }
  const Spectrum spec = hermitian_eig(matrix);
  if (spec.values.minCoeff() < t.density_min_eig) {
    std::ostringstream msg;
    msg << context << ": eigenvalue " << spec.values.minCoeff()
        << " below floor " << t.density_min_eig;
    throw NumericalError(msg.str());
  }
}

DensityMatrix pure_state(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InputError("pure_state: zero vector");
  ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / double(dim));
}

Lindbladian::Lindbladian(int dim, std::optional<ComplexMatrix> hamiltonian,
                         std::vector<ComplexMatrix> jumps)
    : dim_(dim), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  if (dim <= 0) throw InputError("Lindbladian: dimension must be positive");
  if (hamiltonian_) {
    if (hamiltonian_->rows() != dim || hamiltonian_->cols() != dim) {
      throw InputError("Lindbladian: Hamiltonian dimension mismatch");
    }
    require_hermitian(*hamiltonian_, tol().hermiticity, "Lindbladian Hamiltonian");
  }
  for (const auto& f : jumps_) {
    if (f.rows() != dim || f.cols() != dim) {
      throw InputError("Lindbladian: jump operator dimension mismatch");
    }
    require_finite(f, "Lindbladian jump");
    jump_bound_ = std::max(jump_bound_, spectral_norm(f));
  }
}

Lindbladian Lindbladian::hamiltonian_only(const ComplexMatrix& h) {
  return Lindbladian(static_cast<int>(h.rows()), h, {});
}

Lindbladian Lindbladian::dissipative(std::vector<ComplexMatrix> jumps) {
  if (jumps.empty()) throw InputError("Lindbladian::dissipative: no jumps");
  const int d = static_cast<int>(jumps.front().rows());
  return Lindbladian(d, std::nullopt, std::move(jumps));
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix devectorize(const ComplexVector& v, int dim) {
  if (v.size() != Eigen::Index(dim) * dim) {
    throw InputError("devectorize: length is not dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

Superoperator hamiltonian_liouvillian(const ComplexMatrix& h) {
  require_hermitian(h, tol().hermiticity, "hamiltonian_liouvillian");
  const int d = static_cast<int>(h.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  Superoperator s;
  s.dim = d;
  s.kind = Superoperator::Kind::generator;
  s.matrix = Complex(0, -1) * (kron(id, h) - kron(h.transpose(), id));
  return s;
}

Superoperator dissipator(const ComplexMatrix& jump) {
  const int d = static_cast<int>(jump.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix ff = jump.adjoint() * jump;
  Superoperator s;
  s.dim = d;
  s.kind = Superoperator::Kind::generator;
  s.matrix = kron(jump.conjugate(), jump) -
             0.5 * (kron(id, ff) + kron(ff.transpose(), id));
  return s;
}

Superoperator liouvillian(const Lindbladian& l) {
  const int d = l.dim();
  const int dd = d * d;
  Superoperator s;
  s.dim = d;
  s.kind = Superoperator::Kind::generator;
  s.matrix = ComplexMatrix::Zero(dd, dd);
  if (l.hamiltonian()) {
    s.matrix += hamiltonian_liouvillian(*l.hamiltonian()).matrix;
  }
  for (const auto& f : l.jumps()) {
    s.matrix += dissipator(f).matrix;
  }
  return s;
}

Superoperator propagator(const Superoperator& s, double tau) {
  if (s.kind != Superoperator::Kind::generator) {
    throw InputError("propagator: input is not flagged as a generator");
  }
  if (tau < 0.0) {
    throw InputError("propagator: negative time on a dissipative generator");
  }
  Superoperator p;
  p.dim = s.dim;
  p.kind = Superoperator::Kind::propagator;
  p.matrix = expm(ComplexMatrix(s.matrix * tau));
  return p;
}

DensityMatrix apply(const Superoperator& s, const DensityMatrix& rho) {
  if (rho.dim() != s.dim) throw InputError("apply: dimension mismatch");
  return DensityMatrix(devectorize(s.matrix * vectorize(rho.matrix), s.dim));
}

std::vector<DensityMatrix> evolve_grid(const Lindbladian& l,
                                       const DensityMatrix& rho0,
                                       const std::vector<double>& times) {
  if (!times.empty() && times.front() < 0.0) {
    throw InputError("evolve_grid: times must start at >= 0");
  }
  const Superoperator gen = liouvillian(l);
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) {
    DensityMatrix rho = apply(propagator(gen, t), rho0);
    try {
      rho.validate("evolve_grid");
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << e.what() << " at time " << t;
      throw NumericalError(msg.str());
    }
    out.push_back(std::move(rho));
  }
  return out;
}

DensityMatrix evolve_rk4(const Lindbladian& l, const DensityMatrix& rho0,
                         double t, int steps) {
  if (steps <= 0) throw InputError("evolve_rk4: steps must be positive");
  const Superoperator gen = liouvillian(l);
  ComplexVector v = vectorize(rho0.matrix);
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const ComplexVector k1 = gen.matrix * v;
    const ComplexVector k2 = gen.matrix * (v + 0.5 * h * k1);
    const ComplexVector k3 = gen.matrix * (v + 0.5 * h * k2);
    const ComplexVector k4 = gen.matrix * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix(devectorize(v, l.dim()));
}

CptpReport cptp_certificate(const Superoperator& p) {
  if (p.matrix.rows() != p.matrix.cols()) {
    throw InputError("cptp_certificate: superoperator is not square");
  }
  const ChoiMatrix j = choi(p);
  CptpReport report;
  report.min_choi_eigenvalue = hermitian_eig(
      ComplexMatrix(0.5 * (j.matrix + j.matrix.adjoint()))).values.minCoeff();

  const int d = p.dim;
  ComplexMatrix traced = ComplexMatrix::Zero(d, d);
  for (int jj = 0; jj < d; ++jj) {
    for (int kk = 0; kk < d; ++kk) {
      Complex acc = 0.0;
      for (int a = 0; a < d; ++a) acc += j.matrix(jj * d + a, kk * d + a);
      traced(jj, kk) = acc;
    }
  }
  report.partial_trace_residual =
      spectral_norm(traced - ComplexMatrix::Identity(d, d));

  report.pass = report.min_choi_eigenvalue >= tol().choi_min_eig &&
                report.partial_trace_residual <= tol().partial_trace;
  return report;
}

}  // namespace dissim
