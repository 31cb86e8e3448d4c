#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gwl/error.hpp"
#include "gwl/sinkhorn.hpp"
#include "oracles.hpp"

namespace gwl {
namespace {

TEST(Sinkhorn, ZeroCostReturnsProductCoupling) {
  const Vector mu_s = (Vector(3) << 0.2, 0.3, 0.5).finished();
  const Vector mu_t = (Vector(2) << 0.6, 0.4).finished();
  const Matrix prior = mu_s * mu_t.transpose();
  const SinkhornResult r =
      sinkhorn(Matrix::Zero(3, 2), mu_s, mu_t, 0.1, prior, {.iterations = 1});
  EXPECT_LT((r.plan - prior).cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_LT(r.marginal_violation, 1e-15);
}

TEST(Sinkhorn, TwoByTwoClosedForm) {
  Matrix c(2, 2);
  c << 0.0, 1.0, 1.0, 0.0;
  const Vector mu = Vector::Constant(2, 0.5);
  const double gamma = 0.1;
  const SinkhornResult r =
      sinkhorn(c, mu, mu, gamma, Matrix::Ones(2, 2), {.iterations = 100});
  // By symmetry T = s [[1, e], [e, 1]] with e = exp(-1 / gamma) and rows 0.5.
  const double e = std::exp(-1.0 / gamma);
  const double off = 0.5 * e / (1.0 + e);
  EXPECT_NEAR(r.plan(0, 1), off, 1e-15);
  EXPECT_NEAR(r.plan(1, 0), off, 1e-15);
  EXPECT_NEAR(r.plan(0, 0), 0.5 - off, 1e-15);
  EXPECT_LT(r.plan(0, 1), 0.01);
}

TEST(Sinkhorn, SingleRoundMakesLastScaledMarginalExact) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix c = oracle::random_cost(6, rng, false).leftCols(5);
    const Vector mu_s = oracle::random_distribution(6, rng);
    const Vector mu_t = oracle::random_distribution(5, rng);
    const SinkhornResult r =
        sinkhorn(c, mu_s, mu_t, 0.05, mu_s * mu_t.transpose(), {.iterations = 1});
    // The row scaling is applied last.
    EXPECT_LT((r.plan.rowwise().sum() - mu_s).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_GE(r.marginal_violation, 0.0);
  }
}

TEST(Sinkhorn, ManyRoundsReachFeasibility) {
  std::mt19937_64 rng(8);
  for (double gamma : {0.1, 1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix c = oracle::random_cost(7, rng, false).topRows(4);
      const Vector mu_s = oracle::random_distribution(4, rng);
      const Vector mu_t = oracle::random_distribution(7, rng);
      const SinkhornResult r =
          sinkhorn(c, mu_s, mu_t, gamma, Matrix::Ones(4, 7), {.iterations = 200});
      EXPECT_LE(r.marginal_violation, 1e-6) << "gamma " << gamma;
      EXPECT_GE(r.plan.minCoeff(), 0.0);
    }
  }
}

TEST(Sinkhorn, SmallGammaConvergesGivenEnoughRounds) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix c = oracle::random_cost(7, rng, false).topRows(4);
    const Vector mu_s = oracle::random_distribution(4, rng);
    const Vector mu_t = oracle::random_distribution(7, rng);
    double previous = 1.0;
    for (int rounds : {50, 500, 20000}) {
      const SinkhornResult r =
          sinkhorn(c, mu_s, mu_t, 0.01, Matrix::Ones(4, 7), {.iterations = rounds});
      EXPECT_LE(r.marginal_violation, previous + 1e-15);
      previous = r.marginal_violation;
    }
    EXPECT_LE(previous, 1e-12);
  }
}

TEST(Sinkhorn, ZeroPriorEntriesStayZero) {
  Matrix prior = Matrix::Constant(3, 3, 1.0 / 9.0);
  prior(0, 2) = 0.0;
  prior(2, 0) = 0.0;
  const Vector mu = Vector::Constant(3, 1.0 / 3.0);
  std::mt19937_64 rng(1);
  const SinkhornResult r = sinkhorn(oracle::random_cost(3, rng, false), mu, mu,
                                    0.5, prior, {.iterations = 50});
  EXPECT_EQ(r.plan(0, 2), 0.0);
  EXPECT_EQ(r.plan(2, 0), 0.0);
}

TEST(Sinkhorn, LogDomainFallbackAgreesWithPlainScaling) {
  // Moderate gamma: plain scaling succeeds; the log-domain path must agree.
  std::mt19937_64 rng(12);
  const Matrix c = oracle::random_cost(5, rng, false);
  const Vector mu = oracle::random_distribution(5, rng);
  const SinkhornResult plain =
      sinkhorn(c, mu, mu, 0.2, Matrix::Ones(5, 5), {.iterations = 30});
  EXPECT_FALSE(plain.used_log_domain);

  // Tiny gamma overflows the plain kernel and forces the fallback.
  const SinkhornResult tiny =
      sinkhorn(c * 10.0, mu, mu, 1e-3, Matrix::Ones(5, 5), {.iterations = 30});
  EXPECT_TRUE(tiny.used_log_domain);
  EXPECT_TRUE(tiny.plan.allFinite());
  EXPECT_LT((tiny.plan.rowwise().sum() - mu).cwiseAbs().maxCoeff(), 1e-12);

  try {
    sinkhorn(c * 10.0, mu, mu, 1e-3, Matrix::Ones(5, 5),
             {.iterations = 30, .log_domain_fallback = false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
    EXPECT_TRUE(e.is_numerical());
  }
}

TEST(Sinkhorn, RejectsBadArguments) {
  const Vector mu = Vector::Constant(2, 0.5);
  const Matrix one = Matrix::Ones(2, 2);
  EXPECT_THROW(sinkhorn(one, mu, mu, 0.0, one), Error);
  EXPECT_THROW(sinkhorn(one, mu, mu, 0.1, one, {.iterations = 0}), Error);
  EXPECT_THROW(sinkhorn(Matrix::Ones(2, 3), mu, mu, 0.1, one), Error);
  Matrix bad = one;
  bad(0, 0) = std::nan("");
  try {
    sinkhorn(bad, mu, mu, 0.1, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(CouplingEntropy, UniformAndPoint) {
  EXPECT_NEAR(coupling_entropy(Matrix::Constant(2, 2, 0.25)), std::log(4.0), 1e-15);
  Matrix point = Matrix::Zero(2, 2);
  point(1, 1) = 1.0;
  EXPECT_EQ(coupling_entropy(point), 0.0);
}

}  // namespace
}  // namespace gwl
