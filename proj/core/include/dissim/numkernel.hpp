#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dissim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hermitian eigendecomposition result. `values` ascend; the columns of
/// `vectors` are the matching orthonormal eigenvectors.
struct Spectrum {
  RealVector values;
  ComplexMatrix vectors;

  ComplexMatrix reconstruct() const {
    return vectors * values.asDiagonal() * vectors.adjoint();
  }
};

bool is_finite(const ComplexMatrix& m);
void require_finite(const ComplexMatrix& m, const char* what);

/// Max entrywise deviation |M_jk - conj(M_kj)|.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance);
/// Throws InputError naming the offending entry pair.
void require_hermitian(const ComplexMatrix& m, double tolerance, const char* what);

/// e^M by Pade-13 with 1-norm based scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix (gate at tol().hermiticity).
Spectrum hermitian_eig(const ComplexMatrix& m);

/// Singular values, descending.
RealVector singular_values(const ComplexMatrix& m);

/// Largest singular value (operator norm, written ||.||_inf throughout).
double spectral_norm(const ComplexMatrix& m);
/// Sum of singular values (trace norm, ||.||_1).
double trace_norm(const ComplexMatrix& m);
/// Largest entry magnitude.
double max_abs(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Qubit basics, used by constructions, blochgeo and most tests.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix pauli(int k);  // 1,2,3 -> x,y,z

}  // namespace dissim
