#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ndlid/baselines.hpp"
#include "ndlid/measures.hpp"

using namespace ndlid;

namespace {

double qc_geometric_closed(double p, double s0, double s1, double phi) {
  const double a = p * p * s0 * s0;
  const double b = (1 - p) * (1 - p) * s1 * s1;
  return 0.25 * (a + b - std::sqrt(a * a + 2 * a * b * std::cos(2 * phi) + b * b));
}

}  // namespace

TEST(GeometricDiscord, Werner) {
  EXPECT_NEAR(geometric_discord_2q(werner(-1.0)), 0.5, 1e-12);
  EXPECT_NEAR(geometric_discord_2q(werner(0.5)), 0.0, 1e-15);
  for (double a : {-0.5, 0.0, 0.25, 1.0}) {
    EXPECT_NEAR(geometric_discord_2q(werner(a)), (1 - 2 * a) * (1 - 2 * a) / 18, 1e-12);
    EXPECT_NEAR(one_norm_gd_werner(a), (1 - 2 * a) * (1 - 2 * a) / 18, 1e-15);
  }
}

TEST(GeometricDiscord, QcClosedForm) {
  for (double p : {0.1, 2.0 / 3, 0.9})
    for (double phi : {0.0, std::numbers::pi / 3, std::numbers::pi / 2, 2.5}) {
      EXPECT_NEAR(geometric_discord_2q(qc_state(p, 1.0 / 3, 0.8, phi)), qc_geometric_closed(p, 1.0 / 3, 0.8, phi),
                  1e-12);
    }
  EXPECT_NEAR(geometric_discord_2q(qc_state(2.0 / 3, 1.0 / 3, 1.0 / 3, std::numbers::pi / 3)),
              qc_geometric_closed(2.0 / 3, 1.0 / 3, 1.0 / 3, std::numbers::pi / 3), 1e-12);
}

TEST(GeometricDiscord, NonnegativeAndZeroOnClassical) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_GE(geometric_discord_2q(random_state(2, 2, 1 + static_cast<int>(seed % 4), seed)), 0.0);
    std::vector<ComplexMatrix> b = {random_state(2, 1, 2, seed).rho(), random_state(2, 1, 1, seed + 1).rho()};
    EXPECT_LE(geometric_discord_2q(cq_state({0.3, 0.7}, random_unitary(2, seed), b)), 1e-9);
  }
  EXPECT_THROW(geometric_discord_2q(random_state(2, 3, 2, 1)), std::invalid_argument);
}

TEST(OneNormQc, Examples) {
  EXPECT_EQ(one_norm_gd_qc({2.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}), 0.0);
  EXPECT_NEAR(one_norm_gd_qc({2.0 / 3, 1.0 / 3, 1.0 / 3, std::numbers::pi / 2}), 1.0 / 18, 1e-15);
  EXPECT_EQ(one_norm_gd_qc({0.5, 0.0, 1.0, 1.0}), 0.0);
}

TEST(QMeasure, Examples) {
  EXPECT_NEAR(q_measure_qc({2.0 / 3, 1.0 / 3, 1.0 / 3, std::numbers::pi / 2}), 8.0 / 81, 1e-15);
  EXPECT_EQ(q_measure_qc({0.0, 0.5, 0.5, 1.0}), 0.0);
  EXPECT_EQ(q_measure_qc({1.0, 0.5, 0.5, 1.0}), 0.0);
  EXPECT_NEAR(q_measure_qc({0.5, 1.0, 1.0, std::numbers::pi / 2}), 1.0, 1e-15);
}

TEST(QcParams, Validation) {
  EXPECT_THROW((QcParams{1.5, 0.1, 0.1, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((QcParams{0.5, -0.1, 0.1, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((QcParams{0.5, 0.1, 0.1, 4.0}.validate()), std::invalid_argument);
  EXPECT_THROW(q_measure_qc({0.5, 0.1, 1.1, 0.1}), std::invalid_argument);
}

TEST(Chains, WernerAndQc) {
  OptimizerConfig cfg;
  cfg.starts = 6;
  for (double a : {-1.0, 0.25}) {
    const double d1 = d_p(werner(a), 1.0, cfg).value;
    EXPECT_NEAR(d1, std::sqrt(6.0) * d2_closed(werner(a)).value, 1e-4);
    EXPECT_NEAR(d1, 3 * geometric_discord_2q(werner(a)), 1e-4);
  }
  const QcParams q{0.4, 1.0 / 3, 1.0 / 3, 1.0};
  const BipartiteState s = qc_state(q.p, q.s0, q.s1, q.phi);
  const double d2 = d2_closed(s).value;
  EXPECT_NEAR(d2, q_measure_qc(q) / (4 * std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(d_p(s, 1.0, cfg).value, std::sqrt(2.0) * d2, 1e-4);
}
