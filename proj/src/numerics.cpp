#include "ndlid/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ndlid {

double hermiticity_residual(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw MatrixError(std::string(what) + ": non-finite entry at (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
    }
  }
}

HermitianEig hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw MatrixError("hermitian_eig: matrix is not square");
  require_finite(h, "hermitian_eig");
  const double residual = hermiticity_residual(h);
  if (residual > tol::kConstruction) {
    throw MatrixError("hermitian_eig: matrix is not Hermitian (residual " + std::to_string(residual) + ")");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const RealVector& ascending = solver.eigenvalues();
  const auto n = ascending.size();

  // Eigen returns ascending order; reverse into descending while keeping the
  // solver's relative order inside ties.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return ascending[a] > ascending[b]; });

  HermitianEig out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = ascending[order[static_cast<std::size_t>(k)]];
    out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& m) {
  require_finite(m, "singular_values");
  if (m.size() == 0) return RealVector();
  if (m.rows() == 2 && m.cols() == 2) {
    // s1^2 + s2^2 = ||M||_F^2 and s1 * s2 = |det M|.
    const double fro2 = m.squaredNorm();
    const double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
    const double s1 = std::sqrt(std::max(0.0, 0.5 * (fro2 + disc)));
    const double s2 = s1 > 0.0 ? det / s1 : 0.0;
    RealVector s(2);
    s << s1, s2;
    return s;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();  // already descending
}

ComplexMatrix matrix_exp_i(const ComplexMatrix& h) {
  const HermitianEig eig = hermitian_eig(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) phases[k] = std::polar(1.0, eig.values[k]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace ndlid
