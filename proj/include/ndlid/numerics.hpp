// Dense complex linear algebra used throughout the library.
//
// Matrices are Eigen dynamic-size types. Eigen's storage is column-major,
// but every index convention in this project is expressed through (row, col)
// accessors so the storage order never leaks into the math.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ndlid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
/// Hermiticity, trace and positivity checks on construction.
inline constexpr double kConstruction = 1e-10;
/// Residual of eigen/singular decompositions and unitarity.
inline constexpr double kDecomposition = 1e-9;
/// Default for equality assertions.
inline constexpr double kEquality = 1e-9;
}  // namespace tol

/// Thrown when a matrix argument violates a precondition (shape, symmetry, finiteness).
class MatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HermitianEig {
  RealVector values;     // descending
  ComplexMatrix vectors; // column k pairs with values[k]
};

/// Largest entry of |H - H^dagger|.
double hermiticity_residual(const ComplexMatrix& h);

/// Throws MatrixError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized
/// before decomposition; it must already be Hermitian within 1e-10.
HermitianEig hermitian_eig(const ComplexMatrix& h);

/// Singular values in descending order.
RealVector singular_values(const ComplexMatrix& m);

/// exp(iH) for Hermitian H, computed through the eigendecomposition of H.
ComplexMatrix matrix_exp_i(const ComplexMatrix& h);

/// Kronecker product. (A (x) B)(i*rB + k, j*cB + l) = A(i, j) * B(k, l),
/// i.e. the second factor's index runs fastest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry of |U^dagger U - I|.
double unitarity_residual(const ComplexMatrix& u);

}  // namespace ndlid
