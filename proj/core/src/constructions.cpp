#include "dissim/constructions.hpp"

#include <cmath>

#include "dissim/errors.hpp"
#include "dissim/tolerances.hpp"

namespace dissim {

namespace {

void require_delta(double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw InputError("mimic construction: delta must be in (0, 1]");
  }
}

ComplexMatrix anti_hermitian_part_over_i(const ComplexMatrix& a) {
  // (A - A^dag) / (2i)
  return (a - a.adjoint()) / Complex(0.0, 2.0);
}

}  // namespace

MimicFamily mimic_single(const ComplexMatrix& h, double delta) {
  require_delta(delta);
  require_hermitian(h, tol().hermiticity, "mimic_single");
  const int d = static_cast<int>(h.rows());
  ComplexMatrix jump =
      ComplexMatrix::Identity(d, d) - Complex(0.0, delta) * h;
  MimicFamily fam;
  fam.kind = MimicFamily::Kind::single;
  fam.delta = delta;
  fam.target_hamiltonian = h;
  fam.lindbladian = Lindbladian::dissipative({std::move(jump)});
  return fam;
}

MimicFamily mimic_general(const ComplexMatrix& a, double delta) {
  require_delta(delta);
  require_finite(a, "mimic_general");
  const int d = static_cast<int>(a.rows());
  ComplexMatrix jump = ComplexMatrix::Identity(d, d) - delta * a;
  MimicFamily fam;
  fam.kind = MimicFamily::Kind::generalA;
  fam.delta = delta;
  fam.target_hamiltonian = anti_hermitian_part_over_i(a);
  fam.lindbladian = Lindbladian::dissipative({std::move(jump)});
  return fam;
}

MimicFamily mimic_unitary(const ComplexMatrix& h, double delta) {
  if (delta < 0.0 || delta > 1.0) {
    throw InputError("mimic_unitary: delta must be in [0, 1]");
  }
  require_hermitian(h, tol().hermiticity, "mimic_unitary");
  ComplexMatrix jump = expm(ComplexMatrix(Complex(0.0, -delta) * h));
  MimicFamily fam;
  fam.kind = MimicFamily::Kind::unitary;
  fam.delta = delta;
  fam.target_hamiltonian = h;
  fam.lindbladian = Lindbladian::dissipative({std::move(jump)});
  return fam;
}

MimicFamily mimic_local(const std::vector<ComplexMatrix>& terms, double delta) {
  require_delta(delta);
  if (terms.empty()) throw InputError("mimic_local: no terms");
  const int d = static_cast<int>(terms.front().rows());
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  std::vector<ComplexMatrix> jumps;
  jumps.reserve(terms.size());
  for (const auto& hi : terms) {
    if (hi.rows() != d || hi.cols() != d) {
      throw InputError("mimic_local: terms have mixed dimensions");
    }
    require_hermitian(hi, tol().hermiticity, "mimic_local term");
    total += hi;
    jumps.push_back(ComplexMatrix::Identity(d, d) - Complex(0.0, delta) * hi);
  }
  MimicFamily fam;
  fam.kind = MimicFamily::Kind::local;
  fam.delta = delta;
  fam.target_hamiltonian = std::move(total);
  fam.lindbladian = Lindbladian::dissipative(std::move(jumps));
  return fam;
}

Lindbladian freeze_jump(const ComplexMatrix& h, double delta) {
  require_delta(delta);
  require_hermitian(h, tol().hermiticity, "freeze_jump");
  const int d = static_cast<int>(h.rows());
  ComplexMatrix jump =
      (ComplexMatrix::Identity(d, d) + Complex(0.0, delta) * h) /
      std::sqrt(delta);
  return Lindbladian(d, h, {std::move(jump)});
}

Lindbladian dissipate_lindbladian(const Lindbladian& l, double delta) {
  require_delta(delta);
  const int d = l.dim();
  std::vector<ComplexMatrix> jumps;
  jumps.reserve(l.jumps().size() + 1);
  const ComplexMatrix h = l.hamiltonian() ? *l.hamiltonian()
                                          : ComplexMatrix::Zero(d, d);
  jumps.push_back(ComplexMatrix::Identity(d, d) - Complex(0.0, delta) * h);
  for (const auto& f : l.jumps()) jumps.push_back(std::sqrt(delta) * f);
  return Lindbladian::dissipative(std::move(jumps));
}

GaugeParams identity_gauge(int jump_count) {
  return {ComplexMatrix::Identity(jump_count, jump_count),
          ComplexVector::Zero(jump_count)};
}

GaugeParams inverse_gauge(const GaugeParams& g) {
  return {g.unitary.adjoint(),
          ComplexVector(-(g.unitary.adjoint() * g.shifts))};
}

Lindbladian gauge_transform(const Lindbladian& l, const GaugeParams& g) {
  const int m = l.jump_count();
  if (g.unitary.rows() != m || g.unitary.cols() != m ||
      g.shifts.size() != m) {
    throw InputError("gauge_transform: gauge size does not match jump count");
  }
  const ComplexMatrix uu =
      g.unitary.adjoint() * g.unitary - ComplexMatrix::Identity(m, m);
  if (max_abs(uu) > tol().unitarity) {
    throw InputError("gauge_transform: U is not unitary");
  }

  const int d = l.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> jumps(m, ComplexMatrix::Zero(d, d));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) jumps[i] += g.unitary(i, j) * l.jumps()[j];
    jumps[i] += g.shifts(i) * id;
  }

  ComplexMatrix h = l.hamiltonian() ? *l.hamiltonian() : ComplexMatrix::Zero(d, d);
  for (int i = 0; i < m; ++i) {
    h -= Complex(0.0, 0.5) * (std::conj(g.shifts(i)) * jumps[i] -
                              g.shifts(i) * jumps[i].adjoint());
  }
  h = 0.5 * (h + h.adjoint());  // drop the numerically zero skew part

  const bool keep_h = l.hamiltonian().has_value() || max_abs(h) > 0.0;
  return Lindbladian(d, keep_h ? std::optional<ComplexMatrix>(h) : std::nullopt,
                     std::move(jumps));
}

double gauge_cost(const Lindbladian& l) {
  double cost = 0.0;
  if (l.hamiltonian()) cost += spectral_norm(*l.hamiltonian());
  for (const auto& f : l.jumps()) {
    const double n = spectral_norm(f);
    cost += n * n;
  }
  return cost;
}

GaugeOptimum gauge_optimize(const Lindbladian& l, int budget) {
  if (budget < 1) throw InputError("gauge_optimize: budget must be >= 1");
  const int m = l.jump_count();

  GaugeOptimum best;
  best.gauge = identity_gauge(m);
  best.lindbladian = l;
  best.cost = gauge_cost(l);
  if (m == 0) return best;

  ComplexVector c = ComplexVector::Zero(m);
  auto cost_at = [&](const ComplexVector& shifts) {
    GaugeParams g{ComplexMatrix::Identity(m, m), shifts};
    return gauge_cost(gauge_transform(l, g));
  };

  double current = best.cost;
  double step = 0.25 * std::max(1.0, l.jump_bound());
  for (int iter = 0; iter < budget; ++iter) {
    bool improved = false;
    for (int i = 0; i < m; ++i) {
      for (int part = 0; part < 2; ++part) {
        const Complex dir = part == 0 ? Complex(1, 0) : Complex(0, 1);
        ComplexVector plus = c, minus = c;
        plus(i) += step * dir;
        minus(i) -= step * dir;
        const double f0 = current;
        const double fp = cost_at(plus);
        const double fm = cost_at(minus);
        // Quadratic fit through the three samples; fall back to the best
        // sampled point when the fit is not convex.
        double cand_shift = 0.0;
        const double curvature = fp - 2.0 * f0 + fm;
        if (curvature > 1e-15) {
          cand_shift = -0.5 * step * (fp - fm) / curvature;
          cand_shift = std::clamp(cand_shift, -4.0 * step, 4.0 * step);
        } else if (fp < f0 || fm < f0) {
          cand_shift = fp < fm ? step : -step;
        }
        if (cand_shift != 0.0) {
          ComplexVector cand = c;
          cand(i) += cand_shift * dir;
          const double fc = cost_at(cand);
          if (fc < current - 1e-15) {
            c = cand;
            current = fc;
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-9) break;
  }

  if (current < best.cost) {
    best.gauge = GaugeParams{ComplexMatrix::Identity(m, m), c};
    best.lindbladian = gauge_transform(l, best.gauge);
    best.cost = current;
  }
  return best;
}

ComplexMatrix parity_hamiltonian(const std::string& bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 1 || n > 10) {
    throw InputError("parity_hamiltonian: need 1..10 bits");
  }
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw InputError("parity_hamiltonian: bits must be 0/1");
    }
  }
  const int dim = 2 * (n + 1);
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  int parity = 0;
  for (int j = 0; j < n; ++j) {
    const int next = parity ^ (bits[j] == '1' ? 1 : 0);
    const int u = 2 * j + parity;
    const int v = 2 * (j + 1) + next;
    h(u, v) = 1.0;
    h(v, u) = 1.0;
    parity = next;
  }
  return h;
}

}  // namespace dissim
