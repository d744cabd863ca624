#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ndlid/state_io.hpp"
#include "ndlid/states.hpp"

using namespace ndlid;

namespace {

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

ComplexMatrix swap_operator() {
  ComplexMatrix f = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) f(2 * k + l, 2 * l + k) = 1.0;
  return f;
}

bool has_violation(const std::vector<Violation>& v, const std::string& name) {
  for (const auto& x : v)
    if (x.invariant.find(name) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Validate, MaximallyMixedIsValid) {
  EXPECT_NO_THROW(BipartiteState::validate(ComplexMatrix::Identity(4, 4) / 4.0, 2, 2));
}

TEST(Validate, ReportsEachViolation) {
  // diag(0.6, 0.6, -0.1, -0.1) has unit trace; only positivity fails.
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.diagonal() << 0.6, 0.6, -0.1, -0.1;
  auto violations = check_state(m, 2, 2);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_TRUE(has_violation(violations, "positivity"));
  EXPECT_NEAR(violations[0].residual, 0.1, 1e-12);

  // Scale it so the trace breaks too: both are listed with their residuals.
  m *= 2.0;
  try {
    BipartiteState::validate(m, 2, 2);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 2u);
    EXPECT_TRUE(has_violation(e.violations(), "trace"));
    EXPECT_TRUE(has_violation(e.violations(), "positivity"));
    for (const auto& v : e.violations()) {
      EXPECT_NEAR(v.residual, v.invariant.find("trace") != std::string::npos ? 1.0 : 0.2, 1e-12);
    }
  }
}

TEST(Validate, ShapeAndHermiticity) {
  EXPECT_THROW(BipartiteState::validate(ComplexMatrix::Identity(3, 3) / 3.0, 2, 2), ValidationError);
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 0.1;
  EXPECT_TRUE(has_violation(check_state(m, 2, 2), "hermiticity"));
}

TEST(Validate, BellProjectorIsRankOne) {
  const BipartiteState bell = maximally_entangled(2).to_state();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(bell.rho());
  int rank = 0;
  for (int k = 0; k < 4; ++k) rank += s.eigenvalues()[k] > 1e-10;
  EXPECT_EQ(rank, 1);
  EXPECT_NEAR(purity(bell.rho()), 1.0, 1e-12);
}

TEST(PartialTrace, ProductAndEntangled) {
  const BipartiteState a = random_state(2, 1, 2, 1);
  const BipartiteState b = random_state(3, 1, 3, 2);
  const BipartiteState prod = BipartiteState::validate(kron(a.rho(), b.rho()), 2, 3);
  EXPECT_LE(max_abs(partial_trace(prod, Subsystem::B) - a.rho()), 1e-12);
  EXPECT_LE(max_abs(partial_trace(prod, Subsystem::A) - b.rho()), 1e-12);

  const BipartiteState bell = maximally_entangled(2).to_state();
  EXPECT_LE(max_abs(partial_trace(bell, Subsystem::B) - ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
}

TEST(PartialTrace, WernerMarginalsAreMaximallyMixed) {
  for (double a : {-1.0, -0.3, 0.0, 0.5, 1.0}) {
    const BipartiteState w = werner(a);
    EXPECT_LE(max_abs(partial_trace(w, Subsystem::A) - ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
    EXPECT_LE(max_abs(partial_trace(w, Subsystem::B) - ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
  }
}

TEST(Schmidt, Examples) {
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = 1.0;
  const SchmidtDecomposition product = schmidt(PureState(v, 2, 2));
  EXPECT_NEAR(product.coefficients[0], 1.0, 1e-12);
  EXPECT_NEAR(product.coefficients[1], 0.0, 1e-12);

  const SchmidtDecomposition bell = schmidt(maximally_entangled(2));
  EXPECT_NEAR(bell.coefficients[0], 0.5, 1e-12);
  EXPECT_NEAR(bell.coefficients[1], 0.5, 1e-12);
}

TEST(Schmidt, RandomReconstruction) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState psi = random_pure_state(3, 3, seed);
    const SchmidtDecomposition s = schmidt(psi);
    EXPECT_NEAR(s.coefficients.sum(), 1.0, 1e-12);
    ComplexVector rebuilt = ComplexVector::Zero(9);
    for (int m = 0; m < 3; ++m) {
      ComplexMatrix outer = kron(s.left.col(m), s.right.col(m));
      rebuilt += std::sqrt(s.coefficients[m]) * outer.col(0);
    }
    EXPECT_LE((rebuilt - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Schmidt, RoundTripsThroughPureFromSchmidt) {
  RealVector l(2);
  l << 0.25, 0.75;
  const SchmidtDecomposition s = schmidt(pure_from_schmidt(l));
  EXPECT_NEAR(s.coefficients[0], 0.75, 1e-12);
  EXPECT_NEAR(s.coefficients[1], 0.25, 1e-12);

  RealVector l3(3);
  l3 << 0.5, 0.3, 0.2;
  const SchmidtDecomposition s3 = schmidt(pure_from_schmidt(l3));
  EXPECT_LE((s3.coefficients - l3).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(s3.moment(2.0), 0.25 + 0.09 + 0.04, 1e-12);
}

TEST(PureFromSchmidt, ExamplesAndErrors) {
  RealVector one(1);
  one << 1.0;
  const PureState single = pure_from_schmidt(one, 2);
  EXPECT_NEAR(std::abs(single.amplitudes()[0]), 1.0, 1e-15);

  RealVector half(2);
  half << 0.5, 0.5;
  const PureState bell = pure_from_schmidt(half);
  EXPECT_NEAR(bell.amplitudes()[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(bell.amplitudes()[3].real(), 1.0 / std::sqrt(2.0), 1e-15);

  RealVector bad(2);
  bad << -0.1, 1.1;
  EXPECT_THROW(pure_from_schmidt(bad), std::invalid_argument);
  bad << 0.3, 0.3;
  EXPECT_THROW(pure_from_schmidt(bad), std::invalid_argument);
}

TEST(Werner, FactoryValues) {
  EXPECT_LE(max_abs(werner(0.5).rho() - ComplexMatrix::Identity(4, 4) / 4.0), 1e-15);
  const ComplexMatrix singlet = (ComplexMatrix::Identity(4, 4) - swap_operator()) / 2.0;
  EXPECT_LE(max_abs(werner(-1.0).rho() - singlet), 1e-15);
  const ComplexMatrix triplet = (ComplexMatrix::Identity(4, 4) + swap_operator()) / 2.0;
  EXPECT_LE(max_abs(werner(1.0).rho() - triplet / 3.0), 1e-15);
  EXPECT_THROW(werner(1.5), std::invalid_argument);
}

TEST(QcState, FactoryValues) {
  // p = 1 gives rho0 (x) |0><0|.
  const BipartiteState s = qc_state(1.0, 0.4, 0.9, 1.0);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.7;
  expected(2, 2) = 0.3;
  EXPECT_LE(max_abs(s.rho() - expected), 1e-15);

  // Zero Bloch vectors: (I/2) (x) diag(p, 1 - p).
  const BipartiteState z = qc_state(0.3, 0.0, 0.0, 2.0);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 0.3;
  b(1, 1) = 0.7;
  EXPECT_LE(max_abs(z.rho() - kron(ComplexMatrix::Identity(2, 2) / 2.0, b)), 1e-15);

  // Hand-assembled blocks at p = 2/3, s0 = s1 = 1/3, phi = pi/3.
  const double p = 2.0 / 3.0, s0 = 1.0 / 3.0, s1 = 1.0 / 3.0, phi = std::numbers::pi / 3.0;
  const BipartiteState q = qc_state(p, s0, s1, phi);
  const double sx = s1 * std::sin(phi), sz = s1 * std::cos(phi);
  EXPECT_NEAR(q.rho()(0, 0).real(), p * (1 + s0) / 2, 1e-15);
  EXPECT_NEAR(q.rho()(2, 2).real(), p * (1 - s0) / 2, 1e-15);
  EXPECT_NEAR(q.rho()(1, 1).real(), (1 - p) * (1 + sz) / 2, 1e-15);
  EXPECT_NEAR(q.rho()(3, 3).real(), (1 - p) * (1 - sz) / 2, 1e-15);
  EXPECT_NEAR(q.rho()(1, 3).real(), (1 - p) * sx / 2, 1e-15);
  EXPECT_NEAR(q.rho()(0, 2).real(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q.rho()(0, 1)), 0.0, 1e-15);

  EXPECT_THROW(qc_state(1.2, 0.1, 0.1, 0.1), std::invalid_argument);
  EXPECT_THROW(qc_state(0.5, 0.1, 0.1, 4.0), std::invalid_argument);
}

TEST(CqState, ProductAndErrors) {
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(1, 1) = 1.0;
  const BipartiteState s = cq_state({1.0}, ComplexMatrix::Identity(2, 2), {b});
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  EXPECT_LE(max_abs(s.rho() - kron(a0, b)), 1e-15);

  EXPECT_THROW(cq_state({0.5, 0.6}, ComplexMatrix::Identity(2, 2), {b, b}), std::invalid_argument);
  ComplexMatrix skew = ComplexMatrix::Identity(2, 2);
  skew(0, 1) = 0.5;
  EXPECT_THROW(cq_state({0.5, 0.5}, skew, {b, b}), std::invalid_argument);
  // Zero-weight terms are allowed.
  EXPECT_NO_THROW(cq_state({1.0, 0.0}, ComplexMatrix::Identity(2, 2), {b, b}));
}

TEST(RandomState, RankDeterminismAndPurity) {
  const BipartiteState pure = random_state(2, 3, 1, 5);
  EXPECT_NEAR(purity(pure.rho()), 1.0, 1e-10);
  EXPECT_EQ(random_state(3, 2, 4, 42).rho(), random_state(3, 2, 4, 42).rho());
  EXPECT_NE(random_state(3, 2, 4, 42).rho(), random_state(3, 2, 4, 43).rho());
  EXPECT_THROW(random_state(2, 2, 5, 1), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BipartiteState s = random_state(2, 3, 1 + static_cast<int>(seed % 6), seed);
    const double mu = purity(s.rho());
    EXPECT_GE(mu, 1.0 / 6.0 - 1e-10);
    EXPECT_LE(mu, 1.0 + 1e-10);
  }
}

TEST(RandomUnitary, OrthonormalAndDeterministic) {
  for (int d = 1; d <= 6; ++d) EXPECT_LE(unitarity_residual(random_unitary(d, 100 + d)), 1e-10);
  EXPECT_EQ(random_unitary(3, 8), random_unitary(3, 8));
}

TEST(Ancilla, EmbeddingPurityAndRecovery) {
  const BipartiteState s = random_state(2, 2, 3, 77);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const BipartiteState embedded = attach_ancilla(s, zero);
  EXPECT_EQ(embedded.dA(), 2);
  EXPECT_EQ(embedded.dB(), 4);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(s.rho()), e2(embedded.rho());
  EXPECT_LE((e2.eigenvalues().tail(4) - e1.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);

  const BipartiteState mixed = attach_ancilla(s, ComplexMatrix::Identity(2, 2) / 2.0);
  EXPECT_NEAR(purity(mixed.rho()), purity(s.rho()) / 2.0, 1e-12);

  ComplexMatrix rc = ComplexMatrix::Zero(2, 2);
  rc(0, 0) = 0.7;
  rc(1, 1) = 0.3;
  const BipartiteState with_c = attach_ancilla(s, rc);
  const BipartiteState regrouped = BipartiteState::validate(with_c.rho(), 4, 2);
  EXPECT_LE(max_abs(partial_trace(regrouped, Subsystem::B) - s.rho()), 1e-10);
}

TEST(StateFile, RoundTripIsBitExact) {
  const BipartiteState s = random_state(2, 3, 4, 2024);
  const RawState raw = parse_state(serialize_state(s));
  EXPECT_EQ(raw.dA, 2);
  EXPECT_EQ(raw.dB, 3);
  EXPECT_EQ(raw.rho, s.rho());
}

TEST(StateFile, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_state("not json"), StateFormatError);
  EXPECT_THROW(parse_state(R"({"dA": 2, "dB": 2, "re": [[1]], "im": [[0]]})"), StateFormatError);
  EXPECT_THROW(parse_state(R"({"dA": 1, "dB": 1, "re": [[1]]})"), StateFormatError);
  EXPECT_THROW(parse_state(R"({"dA": 1, "dB": 1, "re": [["x"]], "im": [[0]]})"), StateFormatError);
  const RawState ok = parse_state(R"({"dA": 1, "dB": 1, "re": [[1]], "im": [[0]]})");
  EXPECT_EQ(ok.rho(0, 0), Complex(1.0, 0.0));
}
