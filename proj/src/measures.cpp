#include "ndlid/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ndlid/bloch.hpp"

namespace ndlid {
namespace {

void require_p(double p, const char* where) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument(std::string(where) + ": p must be >= 1");
}

// rho expressed in the basis |a> (x) |phi_i>.
ComplexMatrix rotate_b(const BipartiteState& state, const ComplexMatrix& u) {
  const ComplexMatrix w = kron(ComplexMatrix::Identity(state.dA(), state.dA()), u);
  const ComplexMatrix r = w.adjoint() * state.rho() * w;
  return 0.5 * (r + r.adjoint());  // exact Hermiticity makes block (j,i) the exact adjoint of (i,j)
}

std::vector<ComplexMatrix> blocks_of(const ComplexMatrix& rotated, int dA, int dB) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(dB) * dB);
  for (int i = 0; i < dB; ++i) {
    for (int j = 0; j < dB; ++j) {
      ComplexMatrix a(dA, dA);
      for (int r = 0; r < dA; ++r)
        for (int c = 0; c < dA; ++c) a(r, c) = rotated(r * dB + i, c * dB + j);
      out.push_back(std::move(a));
    }
  }
  return out;
}

double power_norm(const ComplexMatrix& m, double p) {
  if (p == 2.0) return m.squaredNorm();
  const RealVector s = singular_values(m);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s[k] > 0.0) sum += p == 1.0 ? s[k] : std::pow(s[k], p);
  }
  return sum;
}

double clamp_value(double v) { return v < 0.0 ? 0.0 : v; }

// Rotation in the plane of basis vectors k and l. Column phases leave every
// commutator norm unchanged, so two parameters per plane are enough.
ComplexMatrix plane_rotation(int d, int k, int l, double angle, double phase) {
  ComplexMatrix r = ComplexMatrix::Identity(d, d);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex e = std::polar(1.0, phase);
  r(k, k) = c;
  r(l, l) = c;
  r(l, k) = s * e;
  r(k, l) = -s * std::conj(e);
  return r;
}

// Jacobi-style sweeps over all planes, each a two-parameter simplex search.
// Nelder-Mead on the full d^2 - 1 chart stalls on the nonsmooth p = 1
// landscape once dB >= 4; the sweeps keep descending from its best point.
double refine_by_rotations(const std::function<double(const ComplexMatrix&)>& score, ComplexMatrix& u, double value,
                           const OptimizerConfig& config, int& iterations) {
  const int d = static_cast<int>(u.rows());
  OptimizerConfig local = config;
  local.maxIterations = 400;
  constexpr int kMaxSweeps = 200;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = value;
    for (int k = 0; k < d; ++k) {
      for (int l = k + 1; l < d; ++l) {
        const Objective plane = [&](const RealVector& t) { return score(u * plane_rotation(d, k, l, t[0], t[1])); };
        // The plane score is nonsmooth, so a few angles seed the search.
        for (const double angle : {0.0, 0.6, -0.6}) {
          RealVector start(2);
          start << angle, 0.0;
          const OptimizationResult r = nelder_mead(plane, start, local);
          iterations += r.diagnostics.iterations;
          if (r.value < value) {
            u = u * plane_rotation(d, k, l, r.params[0], r.params[1]);
            value = r.value;
          }
        }
      }
    }
    if (before - value <= config.functionTolerance) break;
  }
  // Undo the slow drift from unitarity accumulated by repeated products.
  Eigen::HouseholderQR<ComplexMatrix> qr(u);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(rr(j, j)));
  u = q;
  return score(u);
}

}  // namespace

BasisCandidate::BasisCandidate(ComplexMatrix u) : u_(std::move(u)) {
  if (u_.rows() != u_.cols() || u_.rows() < 1) throw MatrixError("BasisCandidate: matrix must be square");
  const double residual = unitarity_residual(u_);
  if (residual > tol::kDecomposition) {
    throw MatrixError("BasisCandidate: columns are not orthonormal (residual " + std::to_string(residual) + ")");
  }
}

BasisCandidate BasisCandidate::canonical(int dB) { return BasisCandidate(ComplexMatrix::Identity(dB, dB)); }

std::string to_string(Method m) {
  switch (m) {
    case Method::closed:
      return "closed";
    case Method::direct:
      return "direct";
    case Method::optimized:
      return "optimized";
  }
  return "unknown";
}

ComplexMatrix a_block(const BipartiteState& state, const BasisCandidate& basis, int i, int j) {
  const int dA = state.dA();
  const int dB = state.dB();
  if (basis.dim() != dB) throw std::invalid_argument("a_block: basis dimension differs from dB");
  if (i < 0 || j < 0 || i >= dB || j >= dB) throw std::out_of_range("a_block: index out of range");
  const ComplexMatrix& u = basis.unitary();
  const ComplexMatrix& rho = state.rho();
  // sum_{k,l} conj(u(k,i)) rho(r dB + k, c dB + l) u(l,j)
  ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
  for (int r = 0; r < dA; ++r)
    for (int c = 0; c < dA; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < dB; ++k)
        for (int l = 0; l < dB; ++l) s += std::conj(u(k, i)) * rho(r * dB + k, c * dB + l) * u(l, j);
      out(r, c) = s;
    }
  return out;
}

std::vector<ComplexMatrix> a_blocks(const BipartiteState& state, const BasisCandidate& basis) {
  if (basis.dim() != state.dB()) throw std::invalid_argument("a_blocks: basis dimension differs from dB");
  return blocks_of(rotate_b(state, basis.unitary()), state.dA(), state.dB());
}

double schatten_norm(const ComplexMatrix& m, double p) {
  require_p(p, "schatten_norm");
  const double sum = power_norm(m, p);
  return p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

double commutator_power_sum(const std::vector<ComplexMatrix>& blocks, double p, PairSum pairs) {
  require_p(p, "commutator_power_sum");
  const std::size_t n = blocks.size();
  double sum = 0.0;
  if (pairs == PairSum::unordered) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const ComplexMatrix m = blocks[a] * blocks[b] - blocks[b] * blocks[a];
        sum += power_norm(m, p);
      }
    return sum;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ComplexMatrix m = blocks[a] * blocks[b] - blocks[b] * blocks[a];
      sum += power_norm(m, p);
    }
  return 0.5 * sum;
}

double d_p_in_basis(const BipartiteState& state, const BasisCandidate& basis, double p) {
  require_p(p, "d_p_in_basis");
  const double sum = commutator_power_sum(a_blocks(state, basis), p);
  return p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

MeasureResult d2_closed(const BipartiteState& state) {
  if (state.dA() < 2) return d2_closed(state, SuAlgebra{});
  return d2_closed(state, shared_su_algebra(state.dA()));
}

MeasureResult d2_closed(const BipartiteState& state, const SuAlgebra& algebra) {
  MeasureResult out;
  out.p = 2.0;
  out.method = Method::closed;
  out.basis = BasisCandidate::canonical(state.dB());
  const int dA = state.dA();
  const int dB = state.dB();
  if (dA < 2 || dB < 2) return out;  // a single A-block, or scalar blocks: nothing fails to commute

  const BlochForm form = bloch_decompose(state);
  if (algebra.d != dA) throw std::invalid_argument("d2_closed: algebra dimension differs from dA");
  const RealMatrix ttt = form.T * form.T.transpose();
  const RealMatrix g = dB * form.x * form.x.transpose() + ttt;
  const double traced = -(script_f(ttt, algebra).cwiseProduct(g)).sum();  // -Tr(F G), both symmetric

  // With G = L L^t, L = [sqrt(dB) x | T], and f_r antisymmetric, the same
  // radicand is sum_r ||L^t f_r T||_F^2. The sum of squares has no
  // cancellation, so classical states come out at rounding level instead of
  // at the square root of it.
  const int n = algebra.size();
  RealMatrix l(n, 1 + form.T.cols());
  l.col(0) = std::sqrt(static_cast<double>(dB)) * form.x;
  l.rightCols(form.T.cols()) = form.T;
  RealMatrix fr(n, n);
  double radicand = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) fr(p, q) = algebra.structure_constant(p, q, r);
    radicand += (l.transpose() * fr * form.T).squaredNorm();
  }
  if (std::abs(traced - radicand) > 1e-9 * std::max(1.0, radicand)) {
    throw std::logic_error("d2_closed: trace form " + std::to_string(traced) + " disagrees with sum of squares " +
                           std::to_string(radicand));
  }
  out.diagnostics.radicandClamped = traced < -1e-12;
  out.value = 2.0 / (dA * dA * dB * dB) * std::sqrt(radicand);
  return out;
}

MeasureResult d_p_direct(const BipartiteState& state, double p) {
  MeasureResult out;
  out.p = p;
  out.method = Method::direct;
  out.basis = BasisCandidate::canonical(state.dB());
  out.value = clamp_value(d_p_in_basis(state, out.basis, p));
  return out;
}

MeasureResult d_p_optimized(const BipartiteState& state, double p, const OptimizerConfig& config) {
  require_p(p, "d_p_optimized");
  const int dA = state.dA();
  const int dB = state.dB();
  const int dim = dB * dB - 1;
  auto score = [&](const ComplexMatrix& u) {
    const double sum = commutator_power_sum(blocks_of(rotate_b(state, u), dA, dB), p);
    return std::pow(sum, 1.0 / p);
  };
  const Objective objective = [&](const RealVector& theta) { return score(unitary_from_params(theta, dB)); };

  std::vector<RealVector> extra;
  if (dB > 1) {
    const HermitianEig eig = hermitian_eig(partial_trace(state, Subsystem::A));
    extra.push_back(params_from_unitary(eig.vectors));
  }
  const OptimizationResult run = minimize(objective, dim, config, extra);

  MeasureResult out;
  out.p = p;
  out.method = Method::optimized;
  ComplexMatrix u = unitary_from_params(run.params, dB);
  double value = run.value;
  int iterations = run.diagnostics.iterations;
  if (dB >= 3) {
    const double refined = refine_by_rotations(score, u, value, config, iterations);
    if (refined < value) {
      value = refined;
    } else {
      u = unitary_from_params(run.params, dB);
    }
  }
  out.basis = BasisCandidate(u);
  out.value = clamp_value(value);
  out.diagnostics.startsUsed = run.diagnostics.startsUsed;
  out.diagnostics.iterations = iterations;
  out.diagnostics.gap = run.diagnostics.gap;
  out.diagnostics.converged = run.diagnostics.converged;
  return out;
}

MeasureResult d_p(const BipartiteState& state, double p, const OptimizerConfig& config) {
  require_p(p, "d_p");
  if (p == 2.0) return d2_closed(state);
  return d_p_optimized(state, p, config);
}

double d_p_lsb_pure(const RealVector& lambdas, double p) {
  require_p(p, "d_p_lsb_pure");
  if (lambdas.size() == 0) throw std::invalid_argument("d_p_lsb_pure: empty Schmidt vector");
  for (Eigen::Index m = 0; m < lambdas.size(); ++m) {
    if (!(lambdas[m] >= 0.0)) throw std::invalid_argument("d_p_lsb_pure: negative Schmidt coefficient");
  }
  if (std::abs(lambdas.sum() - 1.0) > tol::kConstruction) {
    throw std::invalid_argument("d_p_lsb_pure: Schmidt coefficients must sum to one");
  }
  const double half = 0.5 * p;
  double mu_half = 0.0;
  for (Eigen::Index m = 0; m < lambdas.size(); ++m) mu_half += std::pow(lambdas[m], half);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    for (Eigen::Index k = i + 1; k < lambdas.size(); ++k) {
      const double li = lambdas[i];
      const double lk = lambdas[k];
      sum += std::pow(li * lk, half) *
             ((std::pow(li, p) + std::pow(lk, p)) + mu_half * (std::pow(li, half) + std::pow(lk, half)));
    }
  }
  return std::pow(sum, 1.0 / p);
}

double lambda_p(const ComplexMatrix& rho_c, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("lambda_p: p must lie in [1, 2]");
  require_density(rho_c, "lambda_p");
  const HermitianEig eig = hermitian_eig(rho_c);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double l = std::max(0.0, eig.values[k]);
    if (l > 0.0) sum += std::pow(l, p);
  }
  return std::pow(sum, 2.0 / p);
}

}  // namespace ndlid
