// su(d) generators and the Bloch (coherence vector / correlation matrix)
// representation of bipartite states.
//
// Conventions:
//   Tr(g_i) = 0,  Tr(g_i g_j) = 2 delta_ij,  [g_i, g_j] = i sum_k f_ijk g_k.
// The bracket carries no factor 2, so for d = 2 the structure constants are
// f_ijk = 2 epsilon_ijk.
//
// Generator order: symmetric off-diagonal pairs (j < k, lexicographic),
// antisymmetric pairs in the same order, then the d - 1 diagonal generators.
//
// Coherence vectors and the correlation matrix carry dimension-dependent
// scale factors:
//   x_i  = (dA/2)      Tr[(g_i (x) I) rho]
//   y_j  = (dB/2)      Tr[(I (x) g_j) rho]
//   t_ij = (dA dB / 4) Tr[(g_i (x) g_j) rho]
// so that rho = (I (x) I + x.g (x) I + I (x) y.g + sum t_ij g_i (x) g_j) / (dA dB).

#pragma once

#include <vector>

#include "ndlid/states.hpp"

namespace ndlid {

struct SuAlgebra {
  int d = 0;
  std::vector<ComplexMatrix> generators;  // d^2 - 1 entries
  std::vector<double> f;                  // f_ijk stored at (i * n + j) * n + k
  std::vector<ComplexMatrix> adjoint;     // (F_r)_pq = -i f_pqr

  int size() const noexcept { return static_cast<int>(generators.size()); }
  double structure_constant(int i, int j, int k) const {
    const int n = size();
    return f[static_cast<std::size_t>((i * n + j) * n + k)];
  }
};

/// Builds the algebra for d >= 2; f is computed from the trace formula
/// f_ijk = -(i/2) Tr([g_i, g_j] g_k).
SuAlgebra su_algebra(int d);

/// Thread-safe cached instance; the reference stays valid for the program's lifetime.
const SuAlgebra& shared_su_algebra(int d);

struct BlochForm {
  RealVector x;  // dA^2 - 1
  RealVector y;  // dB^2 - 1
  RealMatrix T;  // (dA^2 - 1) x (dB^2 - 1)
};

BlochForm bloch_decompose(const BipartiteState& state);

/// Inverse of bloch_decompose. Throws std::invalid_argument on a dimension
/// mismatch and ValidationError when the result is not a density matrix.
BipartiteState bloch_reconstruct(const BlochForm& form, int dA, int dB);

/// sum_r F_r M F_r^T for a real symmetric M of size d^2 - 1.
///
/// With F_r purely imaginary and antisymmetric this equals sum_r (f_r) M (f_r)
/// where (f_r)_pq = f_pqr, which is real, symmetric and negative semidefinite
/// for positive semidefinite M. For d = 2 it reduces to 4 (M - Tr(M) I).
RealMatrix script_f(const RealMatrix& m, const SuAlgebra& algebra);

}  // namespace ndlid
