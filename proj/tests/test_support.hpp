#pragma once

#include <random>

#include "dissim/constructions.hpp"
#include "dissim/lindblad.hpp"
#include "dissim/metrics.hpp"
#include "dissim/numkernel.hpp"

namespace dissim::testing {

inline ComplexMatrix random_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const ComplexMatrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(d, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

inline ComplexVector random_pure(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector psi(d);
  for (int i = 0; i < d; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  return psi / psi.norm();
}

inline DensityMatrix random_density(int d, std::mt19937_64& rng) {
  const ComplexMatrix m = random_matrix(d, rng);
  ComplexMatrix rho = m * m.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho);
}

inline Lindbladian random_lindbladian(int d, int jumps, std::mt19937_64& rng,
                                      double scale = 0.5) {
  std::vector<ComplexMatrix> fs;
  for (int j = 0; j < jumps; ++j) fs.push_back(scale * random_matrix(d, rng));
  return Lindbladian(d, random_hermitian(d, rng), fs);
}

/// sigma_- = |0><1|, decays the excited basis state |1> into |0>.
inline ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

/// Monte-Carlo lower bound on the diamond norm of the map with Choi matrix j:
/// max over sampled ancilla-extended pure states of ||(Phi (x) id)(psi)||_1.
inline double brute_force_diamond_lower(const ChoiMatrix& j,
                                        std::mt19937_64& rng,
                                        int samples = 400) {
  const int d = j.dim;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const ComplexVector psi = random_pure(d * d, rng);
    // psi = sum_{j,a} w(j,a) |j>|a>, system index j, ancilla a. Then
    // (Phi (x) id)(|psi><psi|)[(x,a),(y,b)] =
    //   sum_{jk} Phi(E_jk)(x,y) w(j,a) conj(w(k,b)),
    // with Phi(E_jk) the (j,k) block of the Choi matrix.
    ComplexMatrix w(d, d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) w(a, b) = psi(b * d + a);
    }
    ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
    for (int jj = 0; jj < d; ++jj) {
      for (int kk = 0; kk < d; ++kk) {
        const ComplexMatrix phi = j.matrix.block(jj * d, kk * d, d, d);
        for (int a = 0; a < d; ++a) {
          for (int b = 0; b < d; ++b) {
            for (int x = 0; x < d; ++x) {
              for (int y = 0; y < d; ++y) {
                out(a * d + x, b * d + y) +=
                    phi(x, y) * w(jj, a) * std::conj(w(kk, b));
              }
            }
          }
        }
      }
    }
    best = std::max(best, trace_norm(out));
  }
  return best;
}

}  // namespace dissim::testing
