#include "ndlid/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace ndlid {
namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid state:";
  for (const auto& v : violations) out << ' ' << v.invariant << " (residual " << v.residual << ");";
  return out.str();
}

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Fill in row-major order so the draw sequence does not depend on storage.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix qubit_from_bloch(double sx, double sy, double sz) {
  ComplexMatrix r(2, 2);
  r << 0.5 * (1.0 + sz), 0.5 * Complex(sx, -sy), 0.5 * Complex(sx, sy), 0.5 * (1.0 - sz);
  return r;
}

void require_unit_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    std::ostringstream out;
    out << name << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw std::invalid_argument(out.str());
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::invalid_argument(describe(violations)), violations_(std::move(violations)) {}

std::vector<Violation> check_state(const ComplexMatrix& rho, int dA, int dB) {
  std::vector<Violation> out;
  if (dA < 1 || dB < 1) {
    out.push_back({"dimensions must be positive", 0.0});
    return out;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dA) * dB;
  if (rho.rows() != n || rho.cols() != n) {
    out.push_back({"shape must be (dA*dB) x (dA*dB)",
                   static_cast<double>(std::max(std::abs(rho.rows() - n), std::abs(rho.cols() - n)))});
    return out;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!std::isfinite(rho(i, j).real()) || !std::isfinite(rho(i, j).imag())) {
        out.push_back({"entries must be finite", std::numeric_limits<double>::infinity()});
        return out;
      }
    }
  }
  const double herm = hermiticity_residual(rho);
  if (herm > tol::kConstruction) out.push_back({"hermiticity", herm});
  const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > tol::kConstruction) out.push_back({"unit trace", trace_err});
  const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol::kConstruction) out.push_back({"positivity (minimum eigenvalue)", -min_eig});
  return out;
}

BipartiteState BipartiteState::validate(const ComplexMatrix& rho, int dA, int dB) {
  auto violations = check_state(rho, dA, dB);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return BipartiteState(rho, dA, dB);
}

void require_density(const ComplexMatrix& rho, const char* what) {
  auto violations = check_state(rho, static_cast<int>(rho.rows()), 1);
  if (!violations.empty()) {
    for (auto& v : violations) v.invariant = std::string(what) + ": " + v.invariant;
    throw ValidationError(std::move(violations));
  }
}

PureState::PureState(ComplexVector amplitudes, int dA, int dB)
    : dA_(dA), dB_(dB), amplitudes_(std::move(amplitudes)) {
  if (dA < 1 || dB < 1 || amplitudes_.size() != static_cast<Eigen::Index>(dA) * dB) {
    throw std::invalid_argument("PureState: amplitude length must equal dA*dB");
  }
  const double norm_err = std::abs(amplitudes_.norm() - 1.0);
  if (norm_err > tol::kConstruction) {
    throw ValidationError({{"unit norm", norm_err}});
  }
}

ComplexMatrix PureState::coefficient_matrix() const {
  ComplexMatrix c(dA_, dB_);
  for (int i = 0; i < dA_; ++i)
    for (int j = 0; j < dB_; ++j) c(i, j) = amplitudes_[i * dB_ + j];
  return c;
}

BipartiteState PureState::to_state() const {
  return BipartiteState::validate(amplitudes_ * amplitudes_.adjoint(), dA_, dB_);
}

double SchmidtDecomposition::moment(double q) const {
  double sum = 0.0;
  for (Eigen::Index m = 0; m < coefficients.size(); ++m) {
    if (coefficients[m] > 0.0) sum += std::pow(coefficients[m], q);
  }
  return sum;
}

ComplexMatrix partial_trace(const BipartiteState& state, Subsystem over) {
  const int dA = state.dA();
  const int dB = state.dB();
  const ComplexMatrix& rho = state.rho();
  if (over == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j)
        for (int k = 0; k < dB; ++k) out(i, j) += rho(i * dB + k, j * dB + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
  for (int k = 0; k < dB; ++k)
    for (int l = 0; l < dB; ++l)
      for (int i = 0; i < dA; ++i) out(k, l) += rho(i * dB + k, i * dB + l);
  return out;
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

SchmidtDecomposition schmidt(const PureState& psi) {
  Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficient_matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues().array().square();
  const double total = out.coefficients.sum();
  out.coefficients /= total;
  out.left = svd.matrixU();
  // psi = sum_m s_m u_m v_m^dagger in coefficient form, so |e_m^B> = conj(v_m).
  out.right = svd.matrixV().conjugate();
  return out;
}

PureState pure_from_schmidt(const RealVector& lambdas, int dim) {
  const int n = static_cast<int>(lambdas.size());
  if (n == 0) throw std::invalid_argument("pure_from_schmidt: empty Schmidt vector");
  for (Eigen::Index m = 0; m < lambdas.size(); ++m) {
    if (!(lambdas[m] >= 0.0)) throw std::invalid_argument("pure_from_schmidt: negative Schmidt coefficient");
  }
  if (std::abs(lambdas.sum() - 1.0) > tol::kConstruction) {
    throw std::invalid_argument("pure_from_schmidt: Schmidt coefficients must sum to one");
  }
  const int d = std::max(dim, n);
  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int m = 0; m < n; ++m) amps[m * d + m] = std::sqrt(lambdas[m]);
  amps /= amps.norm();
  return PureState(std::move(amps), d, d);
}

PureState maximally_entangled(int d) {
  return pure_from_schmidt(RealVector::Constant(d, 1.0 / d));
}

BipartiteState werner(double a) {
  require_unit_range(a, -1.0, 1.0, "werner: a");
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) swap(k * 2 + l, l * 2 + k) = 1.0;
  const ComplexMatrix rho = ((2.0 - a) / 6.0) * ComplexMatrix::Identity(4, 4) + ((2.0 * a - 1.0) / 6.0) * swap;
  return BipartiteState::validate(rho, 2, 2);
}

BipartiteState qc_state(double p, double s0, double s1, double phi) {
  require_unit_range(p, 0.0, 1.0, "qc_state: p");
  require_unit_range(s0, 0.0, 1.0, "qc_state: s0");
  require_unit_range(s1, 0.0, 1.0, "qc_state: s1");
  require_unit_range(phi, 0.0, std::numbers::pi, "qc_state: phi");
  const ComplexMatrix rho0 = qubit_from_bloch(0.0, 0.0, s0);
  const ComplexMatrix rho1 = qubit_from_bloch(s1 * std::sin(phi), 0.0, s1 * std::cos(phi));
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  return BipartiteState::validate(p * kron(rho0, zero) + (1.0 - p) * kron(rho1, one), 2, 2);
}

BipartiteState cq_state(const std::vector<double>& weights, const ComplexMatrix& a_basis,
                        const std::vector<ComplexMatrix>& b_states) {
  if (weights.empty() || weights.size() != b_states.size() ||
      static_cast<Eigen::Index>(weights.size()) > a_basis.cols()) {
    throw std::invalid_argument("cq_state: need one A basis vector and one B state per weight");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("cq_state: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::kConstruction) throw std::invalid_argument("cq_state: weights must sum to one");
  const ComplexMatrix cols = a_basis.leftCols(static_cast<Eigen::Index>(weights.size()));
  const double ortho = (cols.adjoint() * cols - ComplexMatrix::Identity(cols.cols(), cols.cols())).cwiseAbs().maxCoeff();
  if (ortho > tol::kConstruction) throw std::invalid_argument("cq_state: A basis is not orthonormal");

  const int dA = static_cast<int>(a_basis.rows());
  const int dB = static_cast<int>(b_states.front().rows());
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(dA) * dB, static_cast<Eigen::Index>(dA) * dB);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (b_states[i].rows() != dB) throw std::invalid_argument("cq_state: B states differ in dimension");
    require_density(b_states[i], "cq_state B state");
    if (weights[i] == 0.0) continue;
    const ComplexVector a = cols.col(static_cast<Eigen::Index>(i));
    rho += weights[i] * kron(a * a.adjoint(), b_states[i]);
  }
  return BipartiteState::validate(rho, dA, dB);
}

BipartiteState random_state(int dA, int dB, int rank, std::uint64_t seed) {
  const int n = dA * dB;
  if (dA < 1 || dB < 1 || rank < 1 || rank > n) throw std::invalid_argument("random_state: rank must lie in [1, dA*dB]");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(n, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return BipartiteState::validate(rho, dA, dB);
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unitary: dimension must be positive");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

PureState random_pure_state(int dA, int dB, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexVector v = ginibre(dA * dB, 1, rng).col(0);
  v /= v.norm();
  return PureState(std::move(v), dA, dB);
}

BipartiteState attach_ancilla(const BipartiteState& state, const ComplexMatrix& rho_c) {
  require_density(rho_c, "attach_ancilla ancilla");
  const int dC = static_cast<int>(rho_c.rows());
  // |i_A, (j_B, k_C)> with k fastest is exactly kron(rho, rhoC) in this ordering.
  return BipartiteState::validate(kron(state.rho(), rho_c), state.dA(), state.dB() * dC);
}

BipartiteState apply_local_unitary(const BipartiteState& state, const ComplexMatrix& u_a, const ComplexMatrix& v_b) {
  const ComplexMatrix w = kron(u_a, v_b);
  ComplexMatrix rho = w * state.rho() * w.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return BipartiteState::validate(rho, state.dA(), state.dB());
}

}  // namespace ndlid
