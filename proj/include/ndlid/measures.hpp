// Commutator-based quantum-correlation measures D_p.
//
// For an orthonormal B basis {|phi_i>} the A-blocks are
//   A_ij = <phi_i| rho |phi_j>                      (dA x dA operators)
// and the basis score is
//   D_p^Phi = [ sum' || [A_ij, A_kl] ||_p^p ]^(1/p)
// where sum' runs over unordered pairs {ij, kl} with ij != kl. The measure
// D_p is the minimum of the score over all B bases. A state scores zero in
// every basis exactly when it is classical on A.
//
// At p = 2 the score does not depend on the basis and has a closed form in
// terms of the Bloch data (see d2_closed).

#pragma once

#include <string>
#include <vector>

#include "ndlid/bloch.hpp"
#include "ndlid/optimizer.hpp"
#include "ndlid/states.hpp"

namespace ndlid {

/// Orthonormal basis of the B subsystem, stored as the unitary whose columns
/// are the basis vectors.
class BasisCandidate {
 public:
  /// Throws MatrixError if u is not unitary within 1e-9.
  explicit BasisCandidate(ComplexMatrix u);
  static BasisCandidate canonical(int dB);

  int dim() const noexcept { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& unitary() const noexcept { return u_; }

 private:
  ComplexMatrix u_;
};

enum class Method { closed, direct, optimized };
std::string to_string(Method m);

struct MeasureDiagnostics {
  int startsUsed = 0;
  int iterations = 0;
  double gap = 0.0;
  bool converged = true;
  bool radicandClamped = false;
};

struct MeasureResult {
  double value = 0.0;
  double p = 2.0;
  Method method = Method::closed;
  BasisCandidate basis = BasisCandidate::canonical(1);
  MeasureDiagnostics diagnostics;
};

/// <phi_i| rho |phi_j> as a dA x dA matrix.
ComplexMatrix a_block(const BipartiteState& state, const BasisCandidate& basis, int i, int j);

/// All dB^2 blocks, block (i, j) at position i * dB + j.
std::vector<ComplexMatrix> a_blocks(const BipartiteState& state, const BasisCandidate& basis);

/// (sum_k sigma_k^p)^(1/p). Throws std::invalid_argument for p < 1.
double schatten_norm(const ComplexMatrix& m, double p);

enum class PairSum {
  unordered,    // each unordered pair {ij, kl}, ij != kl, once
  ordered_half  // half the sum over all ordered pairs
};

/// Sum of ||[A_I, A_J]||_p^p over block pairs.
double commutator_power_sum(const std::vector<ComplexMatrix>& blocks, double p, PairSum pairs = PairSum::unordered);

/// The basis score D_p^Phi.
double d_p_in_basis(const BipartiteState& state, const BasisCandidate& basis, double p);

/// Closed form of D_2 from the Bloch data,
///   D_2 = 2/(dA^2 dB^2) sqrt(-Tr{ F(T T^t) [dB x x^t + T T^t] })
/// with F the map of script_f. The radicand is accumulated as an equivalent
/// sum of squares and cross-checked against the trace form; a disagreement
/// beyond 1e-9 (relative) throws std::logic_error, since it can only come
/// from inconsistent conventions. radicandClamped reports a trace form
/// below -1e-12 (rounding noise near classical states).
MeasureResult d2_closed(const BipartiteState& state);

/// The same closed form evaluated with caller-supplied su(dA) data. Used to
/// check that a corrupted algebra is caught by the basis-independence test.
MeasureResult d2_closed(const BipartiteState& state, const SuAlgebra& algebra);

/// Score in the canonical basis, tagged `direct`. Equals D_2 at p = 2.
MeasureResult d_p_direct(const BipartiteState& state, double p);

/// Multi-start minimization of the basis score. Besides the optimizer's own
/// starts, the eigenbasis of the reduced state on B is tried.
MeasureResult d_p_optimized(const BipartiteState& state, double p, const OptimizerConfig& config);

/// D_p: the closed form at p = 2, the optimizer otherwise.
MeasureResult d_p(const BipartiteState& state, double p, const OptimizerConfig& config = {});

/// Score of a pure state in its local Schmidt basis:
///   [ sum_{i<k} (l_i l_k)^(p/2) ((l_i^p + l_k^p) + mu_{p/2} (l_i^(p/2) + l_k^(p/2))) ]^(1/p)
/// with mu_q = sum_m l_m^q. An upper bound on D_p of the pure state.
double d_p_lsb_pure(const RealVector& lambdas, double p);

/// Factor picked up by D_p when an ancilla rhoC is attached on the B side:
/// (sum_i l_i^p)^(2/p) over the eigenvalues of rhoC. Only for 1 <= p <= 2.
double lambda_p(const ComplexMatrix& rho_c, double p);

}  // namespace ndlid
