// Entanglement measure E_p built from the local-Schmidt-basis score, its
// convex roof for mixed states, Wootters concurrence, and a numerical
// Schur-concavity checker.

#pragma once

#include <cstdint>
#include <vector>

#include "ndlid/optimizer.hpp"
#include "ndlid/states.hpp"

namespace ndlid {

/// True in the (p, d) regimes where the pure-state score is known to be an
/// entanglement monotone: d = 2 with p <= 3, or d = 3 with p = 1.
bool monotone_regime_verified(double p, int d);

/// E_p(psi) = d_p_lsb_pure(schmidt(psi).coefficients, p).
double e_p_pure(const PureState& psi, double p);

struct EnsembleDecomposition {
  std::vector<double> weights;
  std::vector<PureState> pureStates;

  /// sum_i w_i |psi_i><psi_i|
  ComplexMatrix mixture() const;
};

struct RoofResult {
  double value = 0.0;
  EnsembleDecomposition ensemble;
  double eigenEnsembleValue = 0.0;  // E averaged over the spectral decomposition
  int rank = 0;
  bool unverifiedMonotone = false;  // (p, d) outside the verified regimes
  bool converged = true;
};

/// Ensemble of a size-n decomposition obtained from the spectral
/// decomposition of rho through the first r columns of an n x n unitary
/// (r = rank rho). Zero-weight members are dropped.
EnsembleDecomposition ensemble_from_isometry(const BipartiteState& state, const ComplexMatrix& unitary);

/// Convex-roof estimate inf sum_i p_i E_p(psi_i). Decompositions of size n
/// = r .. ensembleCap are searched (cap defaults to r^2); the result never
/// exceeds the value at the spectral decomposition.
RoofResult e_p_convex_roof(const BipartiteState& state, double p, const OptimizerConfig& config = {},
                           int ensembleCap = 0);

/// 2 sqrt(l1 l2) for a two-qubit pure state.
double concurrence_pure(const PureState& psi);

/// Wootters concurrence max(0, s1 - s2 - s3 - s4) for a two-qubit state.
double concurrence(const BipartiteState& state);

struct SchurReport {
  int samples = 0;
  int violations = 0;
  double worstValue = 0.0;  // largest value of (l_i - l_j)(dF/dl_i - dF/dl_j) seen
};

/// Samples Schmidt vectors uniformly on the simplex and evaluates the Schur
/// condition (l_i - l_j)(dF/dl_i - dF/dl_j) <= 0 for every pair with central
/// differences of step 1e-6 along e_i - e_j. Values above 1e-8 count as
/// violations. Requires d in {2, 3}.
SchurReport schur_concavity_check(double p, int d, int samples, std::uint64_t seed);

}  // namespace ndlid
