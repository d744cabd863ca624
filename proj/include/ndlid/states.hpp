// Bipartite density matrices, pure states and the state families used by
// the measures.
//
// Index convention: basis vector |i_A, j_B> sits at row i * dB + j, so the B
// index runs fastest. This matches ndlid::kron(A, B).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndlid/numerics.hpp"

namespace ndlid {

/// One violated invariant together with the measured residual.
struct Violation {
  std::string invariant;
  double residual = 0.0;
};

/// Raised when a matrix fails state validation. Every violated invariant is
/// listed, not just the first one encountered.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Runs every state check and returns the violations (empty means valid).
std::vector<Violation> check_state(const ComplexMatrix& rho, int dA, int dB);

class BipartiteState {
 public:
  /// Validates and wraps rho. Throws ValidationError listing each failure.
  static BipartiteState validate(const ComplexMatrix& rho, int dA, int dB);

  int dA() const noexcept { return dA_; }
  int dB() const noexcept { return dB_; }
  int dim() const noexcept { return dA_ * dB_; }
  const ComplexMatrix& rho() const noexcept { return rho_; }

 private:
  BipartiteState(ComplexMatrix rho, int dA, int dB) : dA_(dA), dB_(dB), rho_(std::move(rho)) {}

  int dA_;
  int dB_;
  ComplexMatrix rho_;
};

class PureState {
 public:
  /// Requires unit norm within 1e-10.
  PureState(ComplexVector amplitudes, int dA, int dB);

  int dA() const noexcept { return dA_; }
  int dB() const noexcept { return dB_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  /// dA x dB matrix with entry (i, j) = <i_A j_B|psi>.
  ComplexMatrix coefficient_matrix() const;
  BipartiteState to_state() const;

 private:
  int dA_;
  int dB_;
  ComplexVector amplitudes_;
};

struct SchmidtDecomposition {
  RealVector coefficients;  // lambda_m, descending, summing to one
  ComplexMatrix left;       // columns |e_m^A>
  ComplexMatrix right;      // columns |e_m^B>

  /// mu_q = sum_m lambda_m^q.
  double moment(double q) const;
};

enum class Subsystem { A, B };

ComplexMatrix partial_trace(const BipartiteState& state, Subsystem over);

/// Tr(rho^2).
double purity(const ComplexMatrix& rho);

SchmidtDecomposition schmidt(const PureState& psi);

/// sum_m sqrt(lambda_m) |m m> in a d x d space, d = lambdas.size() unless
/// a larger `dim` is given.
PureState pure_from_schmidt(const RealVector& lambdas, int dim = 0);

/// (1/sqrt(d)) sum_m |m m>.
PureState maximally_entangled(int d);

/// Two-qubit Werner family ((2 - a)/6) I + ((2a - 1)/6) F, F the swap.
BipartiteState werner(double a);

/// p rho0 (x) |0><0| + (1 - p) rho1 (x) |1><1| with qubit Bloch vectors
/// s0 = (0, 0, s0) and s1 = (s1 sin(phi), 0, s1 cos(phi)).
BipartiteState qc_state(double p, double s0, double s1, double phi);

/// sum_i w_i |a_i><a_i| (x) rho_i^B. Zero-weight terms are dropped.
BipartiteState cq_state(const std::vector<double>& weights, const ComplexMatrix& a_basis,
                        const std::vector<ComplexMatrix>& b_states);

/// Ginibre-induced random state of the given rank, deterministic per seed.
BipartiteState random_state(int dA, int dB, int rank, std::uint64_t seed);

/// Haar-random unitary: QR of a complex Gaussian matrix with R's diagonal
/// made positive.
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// Random pure state with Haar-distributed amplitudes.
PureState random_pure_state(int dA, int dB, std::uint64_t seed);

/// rho (x) rhoC with the ancilla appended to the B side (new dB = dB * dC).
BipartiteState attach_ancilla(const BipartiteState& state, const ComplexMatrix& rho_c);

/// (U (x) V) rho (U (x) V)^dagger.
BipartiteState apply_local_unitary(const BipartiteState& state, const ComplexMatrix& u_a,
                                   const ComplexMatrix& v_b);

/// Throws ValidationError if rho is not a density matrix on a d-dimensional space.
void require_density(const ComplexMatrix& rho, const char* what);

}  // namespace ndlid
