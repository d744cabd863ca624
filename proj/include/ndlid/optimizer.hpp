// Unitary-group parameterization and derivative-free multi-start
// minimization.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ndlid/numerics.hpp"

namespace ndlid {

struct OptimizerConfig {
  int starts = 16;             // seeded random starts, in addition to fixed ones
  int maxIterations = 2000;    // per start, summed over simplex restarts
  double functionTolerance = 1e-9;
  double parameterTolerance = 1e-8;
  std::uint64_t seed = 0;
  bool includeCanonicalStarts = true;  // the all-zero point
  double initialStep = 0.25;           // radians per coordinate

  /// Throws std::invalid_argument on nonpositive counts or tolerances.
  void validate() const;
};

struct OptimizerDiagnostics {
  int startsUsed = 0;
  int iterations = 0;   // summed over all starts
  int evaluations = 0;  // summed over all starts
  double gap = 0.0;     // second-best minus best terminal value (0 with one start)
  bool converged = true;  // the start that produced the best value converged
  std::vector<double> startValues;  // terminal value per start, in start order
};

struct OptimizationResult {
  RealVector params;
  double value = 0.0;
  OptimizerDiagnostics diagnostics;
};

using Objective = std::function<double(const RealVector&)>;

/// exp(i sum_r theta_r g_r) with the su(d) generators. The global phase is
/// not parameterized.
ComplexMatrix unitary_from_params(const RealVector& theta, int d);

/// Parameters whose unitary equals u up to a global phase.
RealVector params_from_unitary(const ComplexMatrix& u);

/// Nelder-Mead from a single starting point, restarting the simplex around
/// the incumbent until a restart stops improving.
OptimizationResult nelder_mead(const Objective& objective, const RealVector& start, const OptimizerConfig& config);

/// Multi-start minimization. Start order: the zero point (if enabled), the
/// caller's extra starts, then `config.starts` seeded points uniform in
/// [-pi, pi]^dimension. Start k's seed depends only on (config.seed, k), so
/// a longer start list extends a shorter one.
OptimizationResult minimize(const Objective& objective, int dimension, const OptimizerConfig& config,
                            std::span<const RealVector> extra_starts = {});

/// The k-th seeded random start point.
RealVector random_start(int dimension, std::uint64_t seed, int index);

}  // namespace ndlid
