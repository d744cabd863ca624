#include "ndlid/bloch.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ndlid {

SuAlgebra su_algebra(int d) {
  if (d < 2) throw std::invalid_argument("su_algebra: d must be at least 2");
  SuAlgebra alg;
  alg.d = d;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      alg.generators.push_back(std::move(g));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = Complex(0.0, -1.0);
      g(k, j) = Complex(0.0, 1.0);
      alg.generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) g(j, j) = scale;
    g(l, l) = -l * scale;
    alg.generators.push_back(std::move(g));
  }

  const int n = alg.size();
  alg.f.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const ComplexMatrix comm = alg.generators[i] * alg.generators[j] - alg.generators[j] * alg.generators[i];
      for (int k = 0; k < n; ++k) {
        // f_ijk = -(i/2) Tr([g_i, g_j] g_k), real by construction.
        const double v = (Complex(0.0, -0.5) * (comm * alg.generators[k]).trace()).real();
        const double clean = std::abs(v) < 1e-14 ? 0.0 : v;
        alg.f[static_cast<std::size_t>((i * n + j) * n + k)] = clean;
        alg.f[static_cast<std::size_t>((j * n + i) * n + k)] = -clean;
      }
    }
  }

  alg.adjoint.reserve(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    ComplexMatrix fr(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) fr(p, q) = Complex(0.0, -alg.structure_constant(p, q, r));
    alg.adjoint.push_back(std::move(fr));
  }
  return alg;
}

const SuAlgebra& shared_su_algebra(int d) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const SuAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, std::make_unique<const SuAlgebra>(su_algebra(d))).first;
  return *it->second;
}

BlochForm bloch_decompose(const BipartiteState& state) {
  const int dA = state.dA();
  const int dB = state.dB();
  if (dA < 2 || dB < 2) throw std::invalid_argument("bloch_decompose: both subsystems need dimension >= 2");
  const SuAlgebra& algA = shared_su_algebra(dA);
  const SuAlgebra& algB = shared_su_algebra(dB);
  const int nA = algA.size();
  const int nB = algB.size();
  const ComplexMatrix& rho = state.rho();

  // Tr[(g_i (x) h_j) rho] = sum_{a,b,c,e} g_i(a,b) h_j(c,e) rho(b dB + e, a dB + c).
  // Contract over B first: R_j(b, a) = sum_{c,e} h_j(c,e) rho(b dB + e, a dB + c).
  auto contract_b = [&](const ComplexMatrix& h) {
    ComplexMatrix r = ComplexMatrix::Zero(dA, dA);
    for (int b = 0; b < dA; ++b)
      for (int a = 0; a < dA; ++a)
        for (int c = 0; c < dB; ++c)
          for (int e = 0; e < dB; ++e) {
            if (h(c, e) == Complex(0.0, 0.0)) continue;
            r(b, a) += h(c, e) * rho(b * dB + e, a * dB + c);
          }
    return r;
  };
  auto trace_a = [&](const ComplexMatrix& g, const ComplexMatrix& r) {
    Complex s = 0.0;
    for (int a = 0; a < dA; ++a)
      for (int b = 0; b < dA; ++b) s += g(a, b) * r(b, a);
    return s.real();
  };

  BlochForm form{RealVector(nA), RealVector(nB), RealMatrix(nA, nB)};
  const ComplexMatrix reduced_a = contract_b(ComplexMatrix::Identity(dB, dB));
  for (int i = 0; i < nA; ++i) form.x[i] = 0.5 * dA * trace_a(algA.generators[i], reduced_a);
  for (int j = 0; j < nB; ++j) {
    const ComplexMatrix r = contract_b(algB.generators[j]);
    form.y[j] = 0.5 * dB * r.trace().real();
    for (int i = 0; i < nA; ++i) form.T(i, j) = 0.25 * dA * dB * trace_a(algA.generators[i], r);
  }
  return form;
}

BipartiteState bloch_reconstruct(const BlochForm& form, int dA, int dB) {
  if (dA < 2 || dB < 2) throw std::invalid_argument("bloch_reconstruct: both subsystems need dimension >= 2");
  const SuAlgebra& algA = shared_su_algebra(dA);
  const SuAlgebra& algB = shared_su_algebra(dB);
  const int nA = algA.size();
  const int nB = algB.size();
  if (form.x.size() != nA || form.y.size() != nB || form.T.rows() != nA || form.T.cols() != nB) {
    throw std::invalid_argument("bloch_reconstruct: form dimensions do not match dA, dB");
  }
  const ComplexMatrix idA = ComplexMatrix::Identity(dA, dA);
  const ComplexMatrix idB = ComplexMatrix::Identity(dB, dB);
  ComplexMatrix xa = ComplexMatrix::Zero(dA, dA);
  for (int i = 0; i < nA; ++i) xa += form.x[i] * algA.generators[i];
  ComplexMatrix yb = ComplexMatrix::Zero(dB, dB);
  for (int j = 0; j < nB; ++j) yb += form.y[j] * algB.generators[j];
  ComplexMatrix rho = kron(idA, idB) + kron(xa, idB) + kron(idA, yb);
  for (int j = 0; j < nB; ++j) {
    ComplexMatrix ta = ComplexMatrix::Zero(dA, dA);
    for (int i = 0; i < nA; ++i) ta += form.T(i, j) * algA.generators[i];
    rho += kron(ta, algB.generators[j]);
  }
  rho /= static_cast<double>(dA * dB);
  return BipartiteState::validate(rho, dA, dB);
}

RealMatrix script_f(const RealMatrix& m, const SuAlgebra& algebra) {
  const int n = algebra.size();
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("script_f: matrix size must be d^2 - 1");
  RealMatrix out = RealMatrix::Zero(n, n);
  RealMatrix fr(n, n);
  for (int r = 0; r < n; ++r) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) fr(p, q) = algebra.structure_constant(p, q, r);
    // F_r M F_r^T with F_r = -i fr equals fr M fr, since fr^T = -fr.
    out.noalias() += fr * m * fr;
  }
  return out;
}

}  // namespace ndlid
