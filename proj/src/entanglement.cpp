#include "ndlid/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ndlid/measures.hpp"

namespace ndlid {
namespace {

constexpr double kRankTolerance = 1e-10;

// Schmidt coefficients of an unnormalized vector, normalized to sum one.
RealVector schmidt_weights(const ComplexVector& v, int dA, int dB) {
  ComplexMatrix c(dA, dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j) c(i, j) = v[i * dB + j];
  RealVector s = singular_values(c).array().square();
  const double total = s.sum();
  if (total > 0.0) s /= total;
  return s;
}

// A pure-state score that tolerates the tiny normalization drift of
// numerically generated Schmidt vectors.
double lsb_value(RealVector lambdas, double p) {
  for (Eigen::Index m = 0; m < lambdas.size(); ++m) lambdas[m] = std::max(0.0, lambdas[m]);
  lambdas /= lambdas.sum();
  return d_p_lsb_pure(lambdas, p);
}

struct Spectral {
  std::vector<ComplexVector> scaled;  // sqrt(mu_k) v_k for the nonzero part of the spectrum
};

Spectral spectral_ensemble(const BipartiteState& state) {
  const HermitianEig eig = hermitian_eig(state.rho());
  Spectral out;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] > kRankTolerance) out.scaled.push_back(std::sqrt(eig.values[k]) * eig.vectors.col(k));
  }
  return out;
}

double ensemble_value(const Spectral& spec, const ComplexMatrix& u, int dA, int dB, double p) {
  const auto r = static_cast<Eigen::Index>(spec.scaled.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    ComplexVector member = ComplexVector::Zero(spec.scaled.front().size());
    for (Eigen::Index k = 0; k < r; ++k) member += u(i, k) * spec.scaled[static_cast<std::size_t>(k)];
    const double weight = member.squaredNorm();
    if (weight < 1e-300) continue;
    total += weight * lsb_value(schmidt_weights(member, dA, dB), p);
  }
  return total;
}

}  // namespace

bool monotone_regime_verified(double p, int d) {
  if (d <= 1) return true;
  if (d == 2) return p >= 1.0 && p <= 3.0;
  if (d == 3) return p == 1.0;
  return false;
}

double e_p_pure(const PureState& psi, double p) { return lsb_value(schmidt(psi).coefficients, p); }

ComplexMatrix EnsembleDecomposition::mixture() const {
  if (pureStates.empty()) return ComplexMatrix();
  const auto n = pureStates.front().amplitudes().size();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < pureStates.size(); ++i) {
    const ComplexVector& a = pureStates[i].amplitudes();
    rho += weights[i] * a * a.adjoint();
  }
  return rho;
}

EnsembleDecomposition ensemble_from_isometry(const BipartiteState& state, const ComplexMatrix& unitary) {
  const Spectral spec = spectral_ensemble(state);
  const auto r = static_cast<Eigen::Index>(spec.scaled.size());
  if (unitary.cols() < r) throw std::invalid_argument("ensemble_from_isometry: unitary narrower than rank");
  EnsembleDecomposition out;
  for (Eigen::Index i = 0; i < unitary.rows(); ++i) {
    ComplexVector member = ComplexVector::Zero(state.dim());
    for (Eigen::Index k = 0; k < r; ++k) member += unitary(i, k) * spec.scaled[static_cast<std::size_t>(k)];
    const double weight = member.squaredNorm();
    if (weight < 1e-300) continue;
    out.weights.push_back(weight);
    out.pureStates.emplace_back(member / std::sqrt(weight), state.dA(), state.dB());
  }
  return out;
}

RoofResult e_p_convex_roof(const BipartiteState& state, double p, const OptimizerConfig& config, int ensembleCap) {
  if (!(p >= 1.0)) throw std::invalid_argument("e_p_convex_roof: p must be >= 1");
  const int dA = state.dA();
  const int dB = state.dB();
  const Spectral spec = spectral_ensemble(state);
  const int r = static_cast<int>(spec.scaled.size());

  RoofResult out;
  out.rank = r;
  out.unverifiedMonotone = !monotone_regime_verified(p, std::min(dA, dB));
  const int cap = ensembleCap > 0 ? std::max(ensembleCap, r) : r * r;

  const ComplexMatrix identity = ComplexMatrix::Identity(r, r);
  out.eigenEnsembleValue = ensemble_value(spec, identity, dA, dB, p);
  out.value = out.eigenEnsembleValue;
  ComplexMatrix best_unitary = identity;
  if (r > 1) {
    for (int n = r; n <= cap; ++n) {
      const Objective objective = [&](const RealVector& theta) {
        return ensemble_value(spec, unitary_from_params(theta, n), dA, dB, p);
      };
      const OptimizationResult run = minimize(objective, n * n - 1, config);
      out.converged = out.converged && run.diagnostics.converged;
      if (run.value < out.value) {
        out.value = run.value;
        best_unitary = unitary_from_params(run.params, n);
      }
    }
  }
  out.ensemble = ensemble_from_isometry(state, best_unitary);
  return out;
}

double concurrence_pure(const PureState& psi) {
  if (psi.dA() != 2 || psi.dB() != 2) throw std::invalid_argument("concurrence_pure: two-qubit state required");
  const RealVector l = schmidt(psi).coefficients;
  return 2.0 * std::sqrt(std::max(0.0, l[0] * l[1]));
}

double concurrence(const BipartiteState& state) {
  if (state.dA() != 2 || state.dB() != 2) throw std::invalid_argument("concurrence: two-qubit state required");
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  // sigma_y (x) sigma_y is the anti-diagonal (-1, 1, 1, -1).
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix flipped = yy * state.rho().conjugate() * yy;
  const HermitianEig eig = hermitian_eig(state.rho());
  RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix sqrt_rho = eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  ComplexMatrix r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint());
  const RealVector s = hermitian_eig(r).values.cwiseMax(0.0).cwiseSqrt();
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

SchurReport schur_concavity_check(double p, int d, int samples, std::uint64_t seed) {
  if (d != 2 && d != 3) throw std::invalid_argument("schur_concavity_check: d must be 2 or 3");
  constexpr double kStep = 1e-6;
  constexpr double kTolerance = 1e-8;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  SchurReport report;
  report.worstValue = -std::numeric_limits<double>::infinity();
  RealVector lambda(d);
  while (report.samples < samples) {
    for (int m = 0; m < d; ++m) lambda[m] = expo(rng);
    lambda /= lambda.sum();
    if (lambda.minCoeff() <= 2.0 * kStep) continue;
    ++report.samples;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        RealVector plus = lambda;
        RealVector minus = lambda;
        plus[i] += kStep;
        plus[j] -= kStep;
        minus[i] -= kStep;
        minus[j] += kStep;
        const double derivative = (d_p_lsb_pure(plus, p) - d_p_lsb_pure(minus, p)) / (2.0 * kStep);
        const double condition = (lambda[i] - lambda[j]) * derivative;
        report.worstValue = std::max(report.worstValue, condition);
        if (condition > kTolerance) ++report.violations;
      }
    }
  }
  return report;
}

}  // namespace ndlid
