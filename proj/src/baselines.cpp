#include "ndlid/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ndlid {
namespace {

std::array<ComplexMatrix, 3> paulis() {
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  return {sx, sy, sz};
}

}  // namespace

void QcParams::validate() const {
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  if (!in(p, 0.0, 1.0) || !in(s0, 0.0, 1.0) || !in(s1, 0.0, 1.0) || !in(phi, 0.0, std::numbers::pi)) {
    throw std::invalid_argument("QcParams: parameter out of range");
  }
}

double geometric_discord_2q(const BipartiteState& state) {
  if (state.dA() != 2 || state.dB() != 2) throw std::invalid_argument("geometric_discord_2q: two-qubit state required");
  const auto s = paulis();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  RealVector x(3);
  RealMatrix t(3, 3);
  for (int i = 0; i < 3; ++i) {
    x[i] = (kron(s[i], id) * state.rho()).trace().real();
    for (int j = 0; j < 3; ++j) t(i, j) = (kron(s[i], s[j]) * state.rho()).trace().real();
  }
  const RealMatrix k = x * x.transpose() + t * t.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(k, Eigen::EigenvaluesOnly);
  const double kmax = solver.eigenvalues().maxCoeff();
  return std::max(0.0, 0.25 * (x.squaredNorm() + t.squaredNorm() - kmax));
}

double one_norm_gd_qc(const QcParams& params) {
  params.validate();
  return 0.5 * std::sin(params.phi) * std::min(params.p * params.s0, (1.0 - params.p) * params.s1);
}

double one_norm_gd_werner(double a) {
  if (!(a >= -1.0 && a <= 1.0)) throw std::invalid_argument("one_norm_gd_werner: a outside [-1, 1]");
  return (1.0 - 2.0 * a) * (1.0 - 2.0 * a) / 18.0;
}

double q_measure_qc(const QcParams& params) {
  params.validate();
  return 4.0 * params.p * (1.0 - params.p) * params.s0 * params.s1 * std::sin(params.phi);
}

}  // namespace ndlid
