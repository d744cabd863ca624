#include "ndlid/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ndlid/baselines.hpp"
#include "ndlid/entanglement.hpp"
#include "ndlid/measures.hpp"

namespace ndlid {
namespace {

using Clock = std::chrono::steady_clock;

struct Sizes {
  int algebraDims;
  int roundTrips;
  int statesP2;
  int basesP2;
  int structural;
  int classical;
  int luP1;
  int pureBound;
  int ancillaP2;
  int ancillaP1;
  int maxBound;
  int schurSamples;
  int qcGrid;
  int roofStates;
};

constexpr Sizes kQuick{3, 5, 6, 6, 5, 10, 2, 4, 5, 1, 20, 1000, 3, 1};
constexpr Sizes kFull{3, 20, 20, 20, 20, 50, 6, 20, 20, 3, 200, 10000, 5, 3};

// Per-property seed stream: distinct properties never share random inputs.
std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t i) {
  return seed * 1000003ULL + tag * 10007ULL + i;
}

OptimizerConfig search_config(std::uint64_t seed, int starts = 16) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.starts = starts;
  return cfg;
}

BipartiteState random_cq(int dA, int dB, std::uint64_t seed) {
  std::vector<double> w(static_cast<std::size_t>(dA));
  std::vector<ComplexMatrix> b;
  const RealVector mix = random_state(dA, 1, dA, seed).rho().diagonal().real();
  for (int i = 0; i < dA; ++i) {
    w[static_cast<std::size_t>(i)] = mix[i];
    b.push_back(random_state(dB, 1, 1 + static_cast<int>((seed + i) % dB), seed + 1 + i).rho());
  }
  return cq_state(w, random_unitary(dA, seed + 100), b);
}

class Runner {
 public:
  Runner(const SelftestOptions& opt) : opt_(opt), n_(opt.level == SelftestLevel::full ? kFull : kQuick) {}

  SelftestReport run();

 private:
  void check(const std::string& name, const std::string& relation, double threshold,
             const std::function<double()>& measure) {
    if (!opt_.filter.empty() && name.find(opt_.filter) == std::string::npos) return;
    PropertyCheck c;
    c.name = name;
    c.relation = relation;
    c.threshold = threshold;
    const auto t0 = Clock::now();
    try {
      c.measured = measure();
      c.passed = relation == ">" ? c.measured > threshold : c.measured <= threshold;
    } catch (const std::exception&) {
      c.measured = std::numeric_limits<double>::quiet_NaN();
      c.passed = false;
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report_.checks.push_back(std::move(c));
  }

  double d2(const BipartiteState& s) const {
    if (opt_.qubitAlgebraOverride && s.dA() == 2) return d2_closed(s, *opt_.qubitAlgebraOverride).value;
    return d2_closed(s).value;
  }

  double dp(const BipartiteState& s, double p, const OptimizerConfig& cfg) const {
    return p == 2.0 ? d2(s) : d_p(s, p, cfg).value;
  }

  std::uint64_t seed(std::uint64_t tag, std::uint64_t i) const { return derive(opt_.seed, tag, i); }

  const SelftestOptions& opt_;
  Sizes n_;
  SelftestReport report_;
};

SelftestReport Runner::run() {
  const auto start = Clock::now();

  check("su(d) commutator relation [g_i, g_j] = i f_ijk g_k", "<=", 1e-12, [&] {
    double worst = 0.0;
    for (int d = 2; d < 2 + n_.algebraDims; ++d) {
      const SuAlgebra& alg = shared_su_algebra(d);
      for (int i = 0; i < alg.size(); ++i)
        for (int j = 0; j < alg.size(); ++j) {
          ComplexMatrix lhs = alg.generators[i] * alg.generators[j] - alg.generators[j] * alg.generators[i];
          for (int k = 0; k < alg.size(); ++k) lhs -= Complex(0.0, alg.structure_constant(i, j, k)) * alg.generators[k];
          worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
        }
    }
    return worst;
  });

  check("Bloch decompose/reconstruct round trip", "<=", 1e-10, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.roundTrips; ++k) {
      const int dA = 2 + k % 2, dB = 2 + (k / 2) % 2;
      const BipartiteState s = random_state(dA, dB, 1 + k % (dA * dB), seed(1, k));
      worst = std::max(worst, (bloch_reconstruct(bloch_decompose(s), dA, dB).rho() - s.rho()).cwiseAbs().maxCoeff());
    }
    return worst;
  });

  check("basis independence at p = 2 (spread and closed-form agreement)", "<=", 1e-9, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.statesP2; ++k) {
      const int dB = 2 + k % 2;
      const BipartiteState s = random_state(2, dB, 1 + k % (2 * dB), seed(2, k));
      const double closed = d2(s);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int b = 0; b < n_.basesP2; ++b) {
        const double v = d_p_in_basis(s, BasisCandidate(random_unitary(dB, seed(3, k * 1000 + b))), 2.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        worst = std::max(worst, std::abs(v - closed));
      }
      worst = std::max(worst, hi - lo);
    }
    return worst;
  });

  check("A-block adjoint closure A_ij^dagger = A_ji", "<=", 0.0, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.structural; ++k) {
      const int dB = 2 + k % 2;
      const BipartiteState s = random_state(3, dB, 3, seed(4, k));
      const auto blocks = a_blocks(s, BasisCandidate(random_unitary(dB, seed(5, k))));
      for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j) {
          const ComplexMatrix diff = blocks[static_cast<std::size_t>(i * dB + j)].adjoint() -
                                     blocks[static_cast<std::size_t>(j * dB + i)];
          worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
    }
    return worst;
  });

  check("unordered pair sum equals half the ordered sum (relative)", "<=", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.structural; ++k) {
      const BipartiteState s = random_state(2, 3, 6, seed(6, k));
      const auto blocks = a_blocks(s, BasisCandidate(random_unitary(3, seed(7, k))));
      for (double p : {1.0, 2.0, 3.0}) {
        const double u = commutator_power_sum(blocks, p, PairSum::unordered);
        const double h = commutator_power_sum(blocks, p, PairSum::ordered_half);
        worst = std::max(worst, std::abs(u - h) / std::max(1e-300, std::abs(u)));
      }
    }
    return worst;
  });

  check("D_p vanishes on classical-quantum states, p in {1,2,3}", "<=", 1e-8, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.classical; ++k) {
      const BipartiteState s = random_cq(2 + k % 2, 2 + (k / 2) % 2, seed(8, k));
      for (double p : {1.0, 2.0, 3.0}) worst = std::max(worst, dp(s, p, search_config(seed(9, k), 2)));
    }
    return worst;
  });

  check("generic states are nonclassical: min D_2", ">", 1e-6, [&] {
    double least = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_.classical; ++k) {
      const int dB = 2 + k % 2;
      least = std::min(least, d2(random_state(2, dB, 2 * dB, seed(10, k))));
    }
    return least;
  });

  check("local-unitary invariance, p = 2", "<=", 1e-8, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.statesP2; ++k) {
      const BipartiteState s = random_state(2, 2, 1 + k % 4, seed(11, k));
      const BipartiteState t = apply_local_unitary(s, random_unitary(2, seed(12, k)), random_unitary(2, seed(13, k)));
      worst = std::max(worst, std::abs(d2(s) - d2(t)));
    }
    return worst;
  });

  check("local-unitary invariance, p = 1", "<=", 1e-3, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.luP1; ++k) {
      const BipartiteState s = random_state(2, 2, 1 + k % 4, seed(14, k));
      const BipartiteState t = apply_local_unitary(s, random_unitary(2, seed(15, k)), random_unitary(2, seed(16, k)));
      const OptimizerConfig cfg = search_config(seed(17, k));
      worst = std::max(worst, std::abs(d_p(s, 1.0, cfg).value - d_p(t, 1.0, cfg).value));
    }
    return worst;
  });

  check("pure-state upper bound D_p <= LSB value, p in {1,2}", "<=", 1e-6, [&] {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_.pureBound; ++k) {
      const int dB = 2 + k % 2;
      const PureState psi = random_pure_state(2 + (k / 2) % 2, dB, seed(18, k));
      const RealVector lam = schmidt(psi).coefficients;
      for (double p : {1.0, 2.0}) {
        worst = std::max(worst, dp(psi.to_state(), p, search_config(seed(19, k), 4)) - d_p_lsb_pure(lam, p));
      }
    }
    return worst;
  });

  check("ancilla factors Lambda_1 = 1 and Lambda_2 = purity", "<=", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.ancillaP2; ++k) {
      const int dc = 2 + k % 2;
      const ComplexMatrix rc = random_state(dc, 1, 1 + k % dc, seed(20, k)).rho();
      worst = std::max(worst, std::abs(lambda_p(rc, 1.0) - 1.0));
      worst = std::max(worst, std::abs(lambda_p(rc, 2.0) - purity(rc)));
    }
    return worst;
  });

  check("ancilla factorization, p = 2", "<=", 1e-8, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.ancillaP2; ++k) {
      const BipartiteState s = random_state(2, 2, 1 + k % 4, seed(21, k));
      const ComplexMatrix rc = random_state(2, 1, 1 + k % 2, seed(22, k)).rho();
      worst = std::max(worst, std::abs(d2(attach_ancilla(s, rc)) - d2(s) * lambda_p(rc, 2.0)));
    }
    return worst;
  });

  check("ancilla factorization, p = 1", "<=", 1e-3, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.ancillaP1; ++k) {
      const BipartiteState s = random_state(2, 2, 2 + k % 3, seed(23, k));
      const ComplexMatrix rc = random_state(2, 1, 2, seed(24, k)).rho();
      OptimizerConfig big = search_config(seed(25, k), 6);
      big.maxIterations = 8000;
      const double with = d_p(attach_ancilla(s, rc), 1.0, big).value;
      const double without = d_p(s, 1.0, search_config(seed(26, k))).value;
      worst = std::max(worst, std::abs(with - without * lambda_p(rc, 1.0)));
    }
    return worst;
  });

  check("two-qubit maximum D_p <= 6^(1/p)/4, p in {1,2,3}", "<=", 1e-9, [&] {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_.maxBound; ++k) {
      const BipartiteState s = random_state(2, 2, 1 + k % 4, seed(27, k));
      for (double p : {1.0, 2.0, 3.0}) {
        worst = std::max(worst, dp(s, p, search_config(seed(28, k), 2)) - 0.25 * std::pow(6.0, 1.0 / p));
      }
    }
    return worst;
  });

  check("Schur condition holds: violations for d=2 p<=3 and d=3 p=1", "<=", 0.0, [&] {
    int violations = 0;
    for (double p : {1.0, 2.0, 3.0}) violations += schur_concavity_check(p, 2, n_.schurSamples, seed(29, static_cast<std::uint64_t>(p))).violations;
    violations += schur_concavity_check(1.0, 3, n_.schurSamples, seed(30, 0)).violations;
    return static_cast<double>(violations);
  });

  check("Schur condition fails: violations for d=2 p=4", ">", 0.0, [&] {
    return static_cast<double>(schur_concavity_check(4.0, 2, n_.schurSamples, seed(31, 0)).violations);
  });

  check("Werner chain D_1 = sqrt6 D_2 = 3 D_G = 3 D_G1", "<=", 1e-4, [&] {
    double worst = 0.0;
    for (double a : {-1.0, -0.5, 0.0, 0.25, 1.0}) {
      const BipartiteState w = werner(a);
      const double d1 = d_p(w, 1.0, search_config(seed(32, 0))).value;
      const double two = d2(w);
      worst = std::max({worst, std::abs(d1 - std::sqrt(6.0) * two), std::abs(d1 - 3 * geometric_discord_2q(w)),
                        std::abs(d1 - 3 * one_norm_gd_werner(a))});
    }
    return worst;
  });

  check("closed-form chains sqrt6 D_2 = 3 D_G (Werner), D_2 = Q/(4 sqrt2) (QC)", "<=", 1e-9, [&] {
    double worst = 0.0;
    for (double a : {-1.0, -0.5, 0.0, 0.25, 1.0}) {
      worst = std::max(worst, std::abs(std::sqrt(6.0) * d2(werner(a)) - 3 * geometric_discord_2q(werner(a))));
    }
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) {
        const QcParams q{i / 4.0, 1.0 / 3, 1.0 / 3, std::numbers::pi * j / 4.0};
        worst = std::max(worst, std::abs(d2(qc_state(q.p, q.s0, q.s1, q.phi)) - q_measure_qc(q) / (4 * std::sqrt(2.0))));
      }
    return worst;
  });

  check("QC chain D_1 = sqrt2 D_2 = Q/4", "<=", 1e-4, [&] {
    double worst = 0.0;
    for (int i = 0; i < n_.qcGrid; ++i)
      for (int j = 0; j < n_.qcGrid; ++j) {
        const double p = (i + 0.5) / n_.qcGrid;
        const double phi = std::numbers::pi * (j + 0.5) / n_.qcGrid;
        const QcParams q{p, 1.0 / 3, 1.0 / 3, phi};
        const BipartiteState s = qc_state(q.p, q.s0, q.s1, q.phi);
        const double two = d2(s);
        const double d1 = d_p(s, 1.0, search_config(seed(33, i * 10 + j))).value;
        worst = std::max({worst, std::abs(d1 - std::sqrt(2.0) * two), std::abs(d1 - q_measure_qc(q) / 4)});
      }
    return worst;
  });

  check("geometric discord nonnegative and zero on classical-quantum states", "<=", 1e-9, [&] {
    double worst = 0.0;
    for (int k = 0; k < n_.structural; ++k) {
      worst = std::max(worst, std::abs(geometric_discord_2q(random_cq(2, 2, seed(34, k)))));
      worst = std::max(worst, -geometric_discord_2q(random_state(2, 2, 1 + k % 4, seed(35, k))));
    }
    return worst;
  });

  check("convex roof: pure inputs and never above the eigen-ensemble", "<=", 1e-6, [&] {
    double worst = 0.0;
    OptimizerConfig cfg = search_config(seed(36, 0), 4);
    for (int k = 0; k < n_.roofStates; ++k) {
      const PureState psi = random_pure_state(2, 2, seed(37, k));
      worst = std::max(worst, std::abs(e_p_convex_roof(psi.to_state(), 1.0, cfg).value - e_p_pure(psi, 1.0)));
      const RoofResult r = e_p_convex_roof(random_state(2, 2, 2, seed(38, k)), 1.0, cfg, 2);
      worst = std::max(worst, r.value - r.eigenEnsembleValue);
      worst = std::max(worst, (r.ensemble.mixture() - random_state(2, 2, 2, seed(38, k)).rho()).cwiseAbs().maxCoeff());
    }
    return worst;
  });

  check("optimizer determinism (repeat run difference)", "<=", 0.0, [&] {
    const BipartiteState s = random_state(2, 3, 3, seed(39, 0));
    const OptimizerConfig cfg = search_config(seed(40, 0), 3);
    const MeasureResult a = d_p(s, 1.0, cfg);
    const MeasureResult b = d_p(s, 1.0, cfg);
    return std::abs(a.value - b.value) + (a.basis.unitary() - b.basis.unitary()).cwiseAbs().maxCoeff();
  });

  report_.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return std::move(report_);
}

}  // namespace

SelftestLevel parse_selftest_level(const std::string& name) {
  if (name == "quick") return SelftestLevel::quick;
  if (name == "full") return SelftestLevel::full;
  throw std::invalid_argument("unknown selftest level '" + name + "' (expected quick or full)");
}

bool SelftestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* SelftestReport::find(const std::string& name) const {
  for (const PropertyCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

SelftestReport run_selftest(const SelftestOptions& options) { return Runner(options).run(); }

std::string format_report(const SelftestReport& report) {
  std::string out;
  char line[512];
  for (const PropertyCheck& c : report.checks) {
    std::snprintf(line, sizeof line, "%s  %-72s measured %.3e %s %.1e  (%.2f s)\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.relation.c_str(), c.threshold, c.seconds);
    out += line;
  }
  int failed = 0;
  for (const PropertyCheck& c : report.checks) failed += c.passed ? 0 : 1;
  std::snprintf(line, sizeof line, "%zu properties, %d failed, %.1f s\n", report.checks.size(), failed, report.seconds);
  out += line;
  return out;
}

}  // namespace ndlid
