#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "dissim/blochgeo.hpp"
#include "dissim/constructions.hpp"
#include "dissim/errors.hpp"
#include "dissim/tolerances.hpp"
#include "test_support.hpp"

using namespace dissim;
using testing::random_hermitian;
using testing::random_matrix;
using testing::random_unitary;

namespace {

double decomposition_residual(const Lindbladian& l, const ComplexMatrix& h,
                              double delta,
                              const std::vector<ComplexMatrix>& d2_jumps) {
  ComplexMatrix want = delta * hamiltonian_liouvillian(h).matrix;
  for (const auto& f : d2_jumps) {
    want += delta * delta * dissipator(f).matrix;
  }
  return max_abs(liouvillian(l).matrix - want);
}

}  // namespace

TEST_CASE("mimic_single jump for sigma_z/2 at delta = 0.1") {
  const MimicFamily fam = mimic_single(0.5 * pauli_z(), 0.1);
  const ComplexMatrix& f = fam.lindbladian.jumps().front();
  CHECK(std::abs(f(0, 0) - Complex(1.0, -0.05)) < 1e-15);
  CHECK(std::abs(f(1, 1) - Complex(1.0, 0.05)) < 1e-15);
  CHECK(std::abs(f(0, 1)) == 0.0);
}

TEST_CASE("mimic_single decomposition is exact for seeded Hamiltonians") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 4;
    const ComplexMatrix h = random_hermitian(d, rng);
    const double delta = 0.01 * (trial + 1);
    const MimicFamily fam = mimic_single(h, delta);
    CHECK(decomposition_residual(fam.lindbladian, h, delta, {h}) < 1e-13);
  }
}

TEST_CASE("mimic_single delta = eps/t bookkeeping") {
  const double t = 10.0, eps = 0.1;
  const double delta = eps / t;
  CHECK(delta == doctest::Approx(0.01));
  CHECK(t / delta == doctest::Approx(1000.0));
}

TEST_CASE("mimic_single rejects non-Hermitian input and bad delta") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(mimic_single(bad, 0.1), InputError);
  CHECK_THROWS_AS(mimic_single(pauli_z(), 0.0), InputError);
  CHECK_THROWS_AS(mimic_single(pauli_z(), 1.5), InputError);
}

TEST_CASE("mimic_general with A = i sigma_x matches mimic_single") {
  const ComplexMatrix a = Complex(0, 1) * pauli_x();
  const MimicFamily general = mimic_general(a, 0.05);
  const MimicFamily single = mimic_single(pauli_x(), 0.05);
  CHECK(max_abs(general.lindbladian.jumps().front() -
                single.lindbladian.jumps().front()) == 0.0);
  CHECK(max_abs(general.target_hamiltonian - pauli_x()) < 1e-15);
}

TEST_CASE("mimic_general with Hermitian A has zero first-order term") {
  const MimicFamily fam = mimic_general(pauli_z(), 0.1);
  CHECK(max_abs(fam.target_hamiltonian) == 0.0);
  const ComplexMatrix want = 0.01 * dissipator(pauli_z()).matrix;
  CHECK(max_abs(liouvillian(fam.lindbladian).matrix - want) < 1e-14);
}

TEST_CASE("mimic_general decomposition for A = G + iH") {
  std::mt19937_64 rng(23);
  const ComplexMatrix g = random_hermitian(3, rng);
  const ComplexMatrix h = random_hermitian(3, rng);
  const ComplexMatrix a = g + Complex(0, 1) * h;
  const double delta = 0.02;
  const MimicFamily fam = mimic_general(a, delta);
  CHECK(max_abs(fam.target_hamiltonian - h) < 1e-14);
  const ComplexMatrix want = delta * hamiltonian_liouvillian(h).matrix +
                             delta * delta * dissipator(a).matrix;
  CHECK(max_abs(liouvillian(fam.lindbladian).matrix - want) < 1e-13);
}

TEST_CASE("mimic_unitary at delta = 0 is the zero generator") {
  const MimicFamily fam = mimic_unitary(0.5 * pauli_z(), 0.0);
  CHECK(max_abs(liouvillian(fam.lindbladian).matrix) < 1e-15);
}

TEST_CASE("mimic_unitary second-order coefficient is delta-independent") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const Superoperator lh = hamiltonian_liouvillian(h);
  double coeff[2];
  const double deltas[2] = {1e-2, 1e-3};
  for (int i = 0; i < 2; ++i) {
    const MimicFamily fam = mimic_unitary(h, deltas[i]);
    coeff[i] = spectral_norm(liouvillian(fam.lindbladian).matrix -
                             deltas[i] * lh.matrix) /
               (deltas[i] * deltas[i]);
  }
  CHECK(std::abs(coeff[0] - coeff[1]) < 0.05 * coeff[1]);
}

TEST_CASE("mimic_unitary generator is unital") {
  const MimicFamily fam = mimic_unitary(0.5 * pauli_z(), 0.3);
  const ComplexVector out =
      liouvillian(fam.lindbladian).matrix *
      vectorize(ComplexMatrix::Identity(2, 2));
  CHECK(out.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mimic_local single term reduces to mimic_single") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const MimicFamily local = mimic_local({h}, 0.1);
  const MimicFamily single = mimic_single(h, 0.1);
  CHECK(max_abs(liouvillian(local.lindbladian).matrix -
                liouvillian(single.lindbladian).matrix) == 0.0);
}

TEST_CASE("mimic_local decomposition for sigma_z x I + I x sigma_z") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix h1 = kron(pauli_z(), id);
  const ComplexMatrix h2 = kron(id, pauli_z());
  const double delta = 0.05;
  const MimicFamily fam = mimic_local({h1, h2}, delta);
  CHECK(decomposition_residual(fam.lindbladian, h1 + h2, delta, {h1, h2}) <
        1e-13);
  // cost bookkeeping: each term has unit norm
  double cost = 0.0;
  for (const auto& hi : {h1, h2}) {
    const double n = spectral_norm(hi);
    cost += n * n;
  }
  CHECK(cost == doctest::Approx(2.0));
}

TEST_CASE("freeze_jump total generator equals delta D_H exactly") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix h = random_hermitian(3, rng);
    const double delta = 0.003 * (trial + 1);
    const Lindbladian l = freeze_jump(h, delta);
    const ComplexMatrix want = delta * dissipator(h).matrix;
    CHECK(max_abs(liouvillian(l).matrix - want) < 1e-12);
  }
}

TEST_CASE("freeze_jump keeps states close over time") {
  const double delta = 1e-3;
  const Lindbladian l = freeze_jump(0.5 * pauli_z(), delta);
  ComplexVector psi(2);
  psi << 1.0, 1.0;
  const DensityMatrix rho0 = pure_state(psi);
  const DensityMatrix rho1 = apply(propagator(liouvillian(l), 1.0), rho0);
  CHECK(trace_norm(rho1.matrix - rho0.matrix) <= 4.0 * delta);
}

TEST_CASE("freeze_jump at delta = 1 is the bare dissipator") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const Lindbladian l = freeze_jump(h, 1.0);
  CHECK(max_abs(liouvillian(l).matrix - dissipator(h).matrix) < 1e-12);
}

TEST_CASE("dissipate_lindbladian of an H-only input matches mimic_single") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const Lindbladian conv =
      dissipate_lindbladian(Lindbladian::hamiltonian_only(h), 0.02);
  const MimicFamily single = mimic_single(h, 0.02);
  CHECK(max_abs(liouvillian(conv).matrix -
                liouvillian(single.lindbladian).matrix) < 1e-15);
}

TEST_CASE("dissipate_lindbladian exact decomposition on a damped qubit") {
  const ComplexMatrix h = 0.5 * pauli_z();
  const ComplexMatrix f = std::sqrt(0.3) * testing::sigma_minus();
  const Lindbladian l(2, h, {f});
  const double delta = 0.01;
  const Lindbladian conv = dissipate_lindbladian(l, delta);
  const ComplexMatrix want = delta * liouvillian(l).matrix +
                             delta * delta * dissipator(h).matrix;
  CHECK(max_abs(liouvillian(conv).matrix - want) < 1e-13);
}

TEST_CASE("identity gauge returns the identical Lindbladian") {
  std::mt19937_64 rng(31);
  const Lindbladian l = testing::random_lindbladian(2, 3, rng);
  const Lindbladian out = gauge_transform(l, identity_gauge(3));
  CHECK(max_abs(*out.hamiltonian() - *l.hamiltonian()) < 1e-14);
  for (int i = 0; i < 3; ++i) {
    CHECK(max_abs(out.jumps()[i] - l.jumps()[i]) == 0.0);
  }
}

TEST_CASE("the worked gauge c = -1 turns the mimic jump into -i delta H") {
  const double delta = 0.1;
  const ComplexMatrix ht = 0.5 * pauli_z();
  const Lindbladian mimic = mimic_single(ht, delta).lindbladian;
  GaugeParams g = identity_gauge(1);
  g.shifts(0) = -1.0;
  const Lindbladian out = gauge_transform(mimic, g);
  CHECK(max_abs(out.jumps().front() - Complex(0, -delta) * ht) < 1e-14);
  REQUIRE(out.hamiltonian().has_value());
  CHECK(max_abs(*out.hamiltonian() - delta * ht) < 1e-14);
  // cost drops from 1 + delta^2/4 to delta/2 + delta^2/4
  CHECK(gauge_cost(mimic) ==
        doctest::Approx(1.0 + delta * delta / 4.0).epsilon(1e-12));
  CHECK(gauge_cost(out) ==
        doctest::Approx(delta / 2.0 + delta * delta / 4.0).epsilon(1e-12));
}

TEST_CASE("gauge_transform leaves the Liouvillian invariant") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const Lindbladian l = testing::random_lindbladian(2, 3, rng);
    GaugeParams g;
    g.unitary = random_unitary(3, rng);
    g.shifts = ComplexVector(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 3; ++i) g.shifts(i) = Complex(gauss(rng), gauss(rng));
    const Lindbladian out = gauge_transform(l, g);
    CHECK(max_abs(liouvillian(out).matrix - liouvillian(l).matrix) <
          tol().gauge_invariance);
  }
}

TEST_CASE("gauge_transform composed with its inverse is the identity") {
  std::mt19937_64 rng(35);
  const Lindbladian l = testing::random_lindbladian(3, 2, rng);
  GaugeParams g;
  g.unitary = random_unitary(2, rng);
  g.shifts = ComplexVector(2);
  g.shifts << Complex(0.3, -0.7), Complex(-1.1, 0.2);
  const Lindbladian back = gauge_transform(gauge_transform(l, g), inverse_gauge(g));
  CHECK(max_abs(*back.hamiltonian() - *l.hamiltonian()) < 1e-10);
  for (int i = 0; i < 2; ++i) {
    CHECK(max_abs(back.jumps()[i] - l.jumps()[i]) < 1e-10);
  }
}

TEST_CASE("gauge_transform rejects non-unitary U") {
  std::mt19937_64 rng(37);
  const Lindbladian l = testing::random_lindbladian(2, 2, rng);
  GaugeParams g = identity_gauge(2);
  g.unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(gauge_transform(l, g), InputError);
}

TEST_CASE("gauge_cost of an empty Lindbladian is zero") {
  CHECK(gauge_cost(Lindbladian(2, std::nullopt, {})) == 0.0);
}

TEST_CASE("gauge_optimize is stationary on traceless jumps with H = 0") {
  const Lindbladian l = Lindbladian::dissipative({pauli_x(), 0.5 * pauli_z()});
  const GaugeOptimum opt = gauge_optimize(l, 50);
  CHECK(opt.cost == doctest::Approx(gauge_cost(l)));
  CHECK(opt.gauge.shifts.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gauge_optimize finds the c = -1 branch of the mimic family") {
  const double delta = 0.1;
  const Lindbladian mimic = mimic_single(0.5 * pauli_z(), delta).lindbladian;
  const GaugeOptimum opt = gauge_optimize(mimic, 400);
  CHECK(opt.cost <= delta / 2.0 + delta * delta / 4.0 + 1e-9);
  CHECK(max_abs(liouvillian(opt.lindbladian).matrix -
                liouvillian(mimic).matrix) < tol().gauge_invariance);
}

TEST_CASE("gauge_optimize never increases the cost") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Lindbladian l = testing::random_lindbladian(2, 2, rng);
    const GaugeOptimum opt = gauge_optimize(l, 100);
    CHECK(opt.cost <= gauge_cost(l) + 1e-12);
    CHECK(max_abs(liouvillian(opt.lindbladian).matrix -
                  liouvillian(l).matrix) < tol().gauge_invariance);
  }
}

TEST_CASE("parity_hamiltonian for one bit couples (0,0) to (1, bit)") {
  const ComplexMatrix h = parity_hamiltonian("1");
  CHECK(h.rows() == 4);
  CHECK(std::abs(h(0, 3) - 1.0) == 0.0);  // (0,0) -- (1,1)
  CHECK(std::abs(h(3, 0) - 1.0) == 0.0);
  CHECK(h.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("parity_hamiltonian has exactly n path edges") {
  for (const char* bits : {"101", "000", "111"}) {
    const ComplexMatrix h = parity_hamiltonian(bits);
    const int n = static_cast<int>(std::string(bits).size());
    CHECK(h.rows() == 2 * (n + 1));
    int edges = 0;
    int max_degree = 0;
    for (int r = 0; r < h.rows(); ++r) {
      int degree = 0;
      for (int c = 0; c < h.cols(); ++c) {
        if (std::abs(h(r, c)) > 0) {
          ++degree;
          if (c > r) ++edges;
        }
      }
      max_degree = std::max(max_degree, degree);
    }
    CHECK(edges == n);
    CHECK(max_degree <= 2);
    CHECK(hermiticity_defect(h) == 0.0);
    CHECK(spectral_norm(h) <= 2.0 + 1e-12);
  }
}

TEST_CASE("walk on the one-bit parity graph transfers at tau = pi/2") {
  const ComplexMatrix h = parity_hamiltonian("1");
  const ComplexMatrix u = expm(ComplexMatrix(Complex(0, -M_PI_2) * h));
  // start at vertex (0,0) = index 0; full transfer onto (1,1) = index 3
  CHECK(std::abs(std::abs(u(3, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(u(0, 0)) < 1e-12);
}

TEST_CASE("parity_hamiltonian rejects bad strings") {
  CHECK_THROWS_AS(parity_hamiltonian(""), InputError);
  CHECK_THROWS_AS(parity_hamiltonian("10a"), InputError);
  CHECK_THROWS_AS(parity_hamiltonian("01010101010"), InputError);
}

TEST_CASE("shift sensitivity: I - i delta H rotates, -i delta H does not") {
  const double delta = 0.1;
  const ComplexMatrix h = 0.5 * pauli_z();
  const BlochAffine with_id =
      bloch_affine(mimic_single(h, delta).lindbladian);
  CHECK(with_id.omega.norm() == doctest::Approx(delta).epsilon(1e-12));
  const BlochAffine without_id =
      bloch_affine(Lindbladian::dissipative({Complex(0, -delta) * h}));
  CHECK(without_id.omega.norm() < 1e-14);
}

TEST_CASE("every construction yields a valid Lindbladian") {
  std::mt19937_64 rng(47);
  const ComplexMatrix h = random_hermitian(2, rng);
  for (const Lindbladian& l :
       {mimic_single(h, 0.1).lindbladian, mimic_general(random_matrix(2, rng), 0.1).lindbladian,
        mimic_unitary(h, 0.1).lindbladian, freeze_jump(h, 0.1),
        dissipate_lindbladian(Lindbladian(2, h, {pauli_x()}), 0.1)}) {
    const Superoperator s = liouvillian(l);
    const ComplexVector vec_id = vectorize(ComplexMatrix::Identity(2, 2));
    CHECK((vec_id.adjoint() * s.matrix).cwiseAbs().maxCoeff() <
          tol().trace_preservation);
    CHECK(cptp_certificate(propagator(s, 0.7)).pass);
  }
}
