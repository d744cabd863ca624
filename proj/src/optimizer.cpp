#include "ndlid/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ndlid/bloch.hpp"

namespace ndlid {

void OptimizerConfig::validate() const {
  if (starts < 1) throw std::invalid_argument("optimizer: starts must be >= 1");
  if (maxIterations < 1) throw std::invalid_argument("optimizer: maxIterations must be >= 1");
  if (!(functionTolerance > 0.0) || !(parameterTolerance > 0.0) || !(initialStep > 0.0)) {
    throw std::invalid_argument("optimizer: tolerances and step must be positive");
  }
}

ComplexMatrix unitary_from_params(const RealVector& theta, int d) {
  if (d < 1) throw std::invalid_argument("unitary_from_params: d must be positive");
  if (d == 1) {
    if (theta.size() != 0) throw std::invalid_argument("unitary_from_params: expected 0 parameters for d = 1");
    return ComplexMatrix::Identity(1, 1);
  }
  const SuAlgebra& alg = shared_su_algebra(d);
  if (theta.size() != alg.size()) {
    throw std::invalid_argument("unitary_from_params: expected d^2 - 1 parameters");
  }
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int r = 0; r < alg.size(); ++r) {
    if (theta[r] != 0.0) h += theta[r] * alg.generators[static_cast<std::size_t>(r)];
  }
  return matrix_exp_i(h);
}

RealVector params_from_unitary(const ComplexMatrix& u) {
  const int d = static_cast<int>(u.rows());
  if (u.rows() != u.cols()) throw MatrixError("params_from_unitary: matrix is not square");
  if (unitarity_residual(u) > tol::kDecomposition) throw MatrixError("params_from_unitary: matrix is not unitary");
  if (d == 1) return RealVector();
  // A unitary is normal, so its Schur form is diagonal up to rounding.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& q = schur.matrixU();
  const ComplexMatrix& t = schur.matrixT();
  RealVector angles(d);
  for (int k = 0; k < d; ++k) angles[k] = std::arg(t(k, k));
  ComplexMatrix h = q * angles.cast<Complex>().asDiagonal() * q.adjoint();
  h -= (h.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
  const SuAlgebra& alg = shared_su_algebra(d);
  RealVector theta(alg.size());
  for (int r = 0; r < alg.size(); ++r) theta[r] = 0.5 * (h * alg.generators[static_cast<std::size_t>(r)]).trace().real();
  return theta;
}

RealVector random_start(int dimension, std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(-std::numbers::pi, std::numbers::pi);
  RealVector x(dimension);
  for (int i = 0; i < dimension; ++i) x[i] = uniform(rng);
  return x;
}

namespace {

struct SimplexRun {
  RealVector best;
  double value;
  int iterations;
  int evaluations;
  bool converged;
};

// One Nelder-Mead descent with dimension-adaptive coefficients.
SimplexRun simplex_descent(const Objective& objective, const RealVector& start, double fstart, double step,
                           int budget, double ftol, double xtol) {
  const int n = static_cast<int>(start.size());
  const bool adaptive = n >= 2;
  const double alpha = 1.0;
  const double beta = adaptive ? 1.0 + 2.0 / n : 2.0;
  const double gamma = adaptive ? 0.75 - 1.0 / (2.0 * n) : 0.5;
  const double delta = adaptive ? 1.0 - 1.0 / n : 0.5;

  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), start);
  std::vector<double> vals(static_cast<std::size_t>(n + 1), fstart);
  int evals = 0;
  for (int i = 0; i < n; ++i) {
    pts[static_cast<std::size_t>(i + 1)][i] += step;
    vals[static_cast<std::size_t>(i + 1)] = objective(pts[static_cast<std::size_t>(i + 1)]);
    ++evals;
  }
  std::vector<int> order(static_cast<std::size_t>(n + 1));
  int iter = 0;
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const RealVector& xbest = pts[order.front()];
    double fspread = 0.0;
    double xspread = 0.0;
    for (int k = 1; k <= n; ++k) {
      fspread = std::max(fspread, std::abs(vals[order[k]] - vals[order.front()]));
      xspread = std::max(xspread, (pts[order[k]] - xbest).cwiseAbs().maxCoeff());
    }
    if (fspread <= ftol && xspread <= xtol) {
      converged = true;
      break;
    }
    if (iter >= budget) break;
    ++iter;

    const int worst = order.back();
    const int second = order[n - 1];
    RealVector centroid = RealVector::Zero(n);
    for (int k = 0; k < n; ++k) centroid += pts[order[k]];
    centroid /= n;

    const RealVector xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = objective(xr);
    ++evals;
    if (fr < vals[order.front()]) {
      const RealVector xe = centroid + beta * (xr - centroid);
      const double fe = objective(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + gamma * (xr - centroid))
                                  : RealVector(centroid - gamma * (centroid - pts[worst]));
    const double fc = objective(xc);
    ++evals;
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    // Shrink towards the best vertex.
    const int b = order.front();
    for (int k = 0; k <= n; ++k) {
      if (k == b) continue;
      pts[k] = pts[b] + delta * (pts[k] - pts[b]);
      vals[k] = objective(pts[k]);
      ++evals;
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], iter, evals, converged};
}

}  // namespace

OptimizationResult nelder_mead(const Objective& objective, const RealVector& start, const OptimizerConfig& config) {
  config.validate();
  OptimizationResult out;
  out.params = start;
  out.value = objective(start);
  out.diagnostics.startsUsed = 1;
  out.diagnostics.evaluations = 1;
  if (start.size() == 0) {
    out.diagnostics.startValues = {out.value};
    return out;
  }
  constexpr int kMaxRestarts = 12;
  int remaining = config.maxIterations;
  bool converged = false;
  for (int restart = 0; restart <= kMaxRestarts && remaining > 0; ++restart) {
    const SimplexRun run = simplex_descent(objective, out.params, out.value, config.initialStep, remaining,
                                           config.functionTolerance, config.parameterTolerance);
    remaining -= run.iterations;
    out.diagnostics.iterations += run.iterations;
    out.diagnostics.evaluations += run.evaluations;
    const double improvement = out.value - run.value;
    if (run.value < out.value) {
      out.value = run.value;
      out.params = run.best;
    }
    converged = run.converged;
    if (!run.converged || improvement <= config.functionTolerance) break;
  }
  out.diagnostics.converged = converged;
  out.diagnostics.startValues = {out.value};
  return out;
}

OptimizationResult minimize(const Objective& objective, int dimension, const OptimizerConfig& config,
                            std::span<const RealVector> extra_starts) {
  config.validate();
  if (dimension < 0) throw std::invalid_argument("minimize: negative dimension");
  std::vector<RealVector> starts;
  if (config.includeCanonicalStarts) starts.push_back(RealVector::Zero(dimension));
  for (const RealVector& s : extra_starts) {
    if (s.size() != dimension) throw std::invalid_argument("minimize: extra start has wrong dimension");
    starts.push_back(s);
  }
  for (int k = 0; k < config.starts; ++k) starts.push_back(random_start(dimension, config.seed, k));

  OptimizationResult best;
  best.value = std::numeric_limits<double>::infinity();
  OptimizerDiagnostics diag;
  for (const RealVector& s : starts) {
    const OptimizationResult run = nelder_mead(objective, s, config);
    diag.iterations += run.diagnostics.iterations;
    diag.evaluations += run.diagnostics.evaluations;
    diag.startValues.push_back(run.value);
    if (run.value < best.value) {
      best.value = run.value;
      best.params = run.params;
      diag.converged = run.diagnostics.converged;
    }
  }
  diag.startsUsed = static_cast<int>(starts.size());
  std::vector<double> sorted = diag.startValues;
  std::sort(sorted.begin(), sorted.end());
  diag.gap = sorted.size() > 1 ? sorted[1] - sorted[0] : 0.0;
  best.diagnostics = std::move(diag);
  return best;
}

}  // namespace ndlid
