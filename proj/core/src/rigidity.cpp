#include "dissim/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dissim/errors.hpp"
#include "dissim/tolerances.hpp"

namespace dissim {

FirstOrderFit first_order_fit(const SmoothFamily& family) {
  if (family.delta_samples.size() < 3) {
    throw InputError("first_order_fit: need >= 3 delta samples");
  }
  std::vector<double> deltas = family.delta_samples;
  std::sort(deltas.begin(), deltas.end(), std::greater<double>());
  if (deltas.back() <= 0.0) {
    throw InputError("first_order_fit: deltas must be positive");
  }
  if (deltas.front() / deltas.back() < 10.0) {
    throw InputError("first_order_fit: samples must span at least a decade");
  }

  std::vector<ComplexMatrix> scaled;  // L_delta / delta
  scaled.reserve(deltas.size());
  for (double d : deltas) {
    const Lindbladian l = family.sampler(d);
    if (!l.purely_dissipative()) {
      throw InputError("first_order_fit: family is not purely dissipative");
    }
    scaled.push_back(liouvillian(l).matrix / d);
  }

  // Two-point Richardson on the two smallest deltas removes the O(delta)
  // term: with X(delta) = M + K delta + O(delta^2),
  //   M = (d1 X(d2) - d2 X(d1)) / (d1 - d2).
  const size_t k = deltas.size();
  const double d1 = deltas[k - 2], d2 = deltas[k - 1];
  FirstOrderFit fit;
  fit.first_order.dim = family.dim;
  fit.first_order.kind = Superoperator::Kind::generator;
  fit.first_order.matrix =
      (d1 * scaled[k - 1] - d2 * scaled[k - 2]) / (d1 - d2);

  fit.residuals.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    fit.residuals.push_back(
        spectral_norm(scaled[i] - fit.first_order.matrix));
  }

  // Least-squares slope of log residual against log delta; a smooth family
  // has slope >= 1, a diverging one (L_{D,0} != 0) has negative slope.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = 0; i + 1 < k; ++i) {  // the smallest delta defines M; skip it
    if (fit.residuals[i] <= 0.0) continue;
    const double x = std::log(deltas[i]);
    const double y = std::log(fit.residuals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2 && sxx * count - sx * sx > 0) {
    fit.residual_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  fit.degraded = count < 2 || fit.residual_slope < 0.5;
  return fit;
}

IdentityJumpReport zeroth_order_identity_check(
    const std::vector<ComplexMatrix>& jumps_at_zero, unsigned seed) {
  if (jumps_at_zero.empty()) {
    throw InputError("zeroth_order_identity_check: no jumps");
  }
  const int d = static_cast<int>(jumps_at_zero.front().rows());
  const int dd = d * d;

  ComplexMatrix total = ComplexMatrix::Zero(dd, dd);
  for (const auto& f : jumps_at_zero) total += dissipator(f).matrix;

  IdentityJumpReport report;
  if (spectral_norm(total) > tol().dissipator_null) {
    report.applicable = false;  // hypothesis of the step fails
    return report;
  }
  report.applicable = true;

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  bool all_close = true;
  for (const auto& f : jumps_at_zero) {
    const Complex c = f.trace() / double(d);
    report.scalars.push_back(c);
    const double dev = spectral_norm(f - c * id);
    report.deviations.push_back(dev);
    all_close = all_close && dev <= tol().identity_jump;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexVector psi(d);
    for (int i = 0; i < d; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi /= psi.norm();
    for (const auto& f : jumps_at_zero) {
      const double second = (psi.adjoint() * f.adjoint() * f * psi)(0).real();
      const Complex mean = (psi.adjoint() * f * psi)(0);
      report.max_variance =
          std::max(report.max_variance, second - std::norm(mean));
    }
  }

  report.pass = all_close && report.max_variance <= tol().variance_functional;
  return report;
}

double first_order_jump_constraint(const std::vector<Complex>& c,
                                   const std::vector<ComplexMatrix>& g,
                                   const ComplexMatrix& h) {
  if (c.size() != g.size()) {
    throw InputError("first_order_jump_constraint: list length mismatch");
  }
  ComplexMatrix acc = ComplexMatrix::Zero(h.rows(), h.cols());
  for (size_t j = 0; j < c.size(); ++j) {
    acc += (c[j] * g[j].adjoint() - std::conj(c[j]) * g[j]) / Complex(0.0, 2.0);
  }
  return spectral_norm(h - acc);
}

}  // namespace dissim
