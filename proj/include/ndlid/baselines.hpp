// Reference correlation measures used for comparison: geometric discord,
// one-norm geometric discord and the Q measure for the quantum-classical
// family, all taken with respect to subsystem A.

#pragma once

#include "ndlid/states.hpp"

namespace ndlid {

struct QcParams {
  double p = 0.0;
  double s0 = 0.0;
  double s1 = 0.0;
  double phi = 0.0;

  /// Throws std::invalid_argument when a parameter leaves its range.
  void validate() const;
};

/// D_G = (||x||^2 + ||T||_F^2 - k_max) / 4 with x_i = Tr[(s_i (x) I) rho],
/// T_ij = Tr[(s_i (x) s_j) rho] (Pauli s_i) and k_max the largest
/// eigenvalue of x x^t + T T^t.
double geometric_discord_2q(const BipartiteState& state);

/// (sin(phi)/2) min{p s0, (1 - p) s1}.
double one_norm_gd_qc(const QcParams& params);

/// One-norm geometric discord of the two-qubit Werner state, (1 - 2a)^2 / 18.
double one_norm_gd_werner(double a);

/// Q = 4 p (1 - p) |s0 x s1| = 4 p (1 - p) s0 s1 sin(phi).
double q_measure_qc(const QcParams& params);

}  // namespace ndlid
