#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gwl/error.hpp"
#include "gwl/loss.hpp"
#include "oracles.hpp"

namespace gwl {
namespace {

oracle::Loss to_oracle(const LossSpec& l) {
  return l.kind() == LossKind::kMse ? oracle::Loss::kMse : oracle::Loss::kKl;
}

TEST(LossSpec, FactorizationReproducesElementwiseLoss) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (LossSpec loss : {LossSpec::mse(), LossSpec::kl()}) {
    for (int i = 0; i < 2000; ++i) {
      const double a = u(rng);
      const double b = u(rng);
      const double factored = loss.f1(a) + loss.f2(b) - loss.h1(a) * loss.h2(b);
      EXPECT_NEAR(factored, loss(a, b), 1e-10);
      EXPECT_NEAR(loss(a, b), oracle::elementwise_loss(to_oracle(loss), a, b), 1e-12);
    }
  }
}

TEST(LossSpec, ValuesAndDerivative) {
  const LossSpec mse = LossSpec::mse();
  EXPECT_DOUBLE_EQ(mse(0.2, 0.5), 0.09);
  EXPECT_DOUBLE_EQ(mse.derivative_first(0.2, 0.5), -0.6);
  const LossSpec kl = LossSpec::kl();
  EXPECT_NEAR(kl(0.5, 0.5), 0.0, 1e-15);
  EXPECT_GT(kl(0.2, 0.5), 0.0);
  // d/da [a log(a/b) - a + b] = log(a/b)
  EXPECT_NEAR(kl.derivative_first(0.2, 0.5), std::log(0.4), 1e-14);
}

TEST(LossSpec, KlClampsAtFloor) {
  const LossSpec kl = LossSpec::kl();
  EXPECT_EQ(kl.clamp(0.0), LossSpec::kKlFloor);
  EXPECT_EQ(kl.clamp(0.5), 0.5);
  EXPECT_TRUE(std::isfinite(kl(0.0, 0.3)));
  EXPECT_TRUE(std::isfinite(kl(0.3, 0.0)));
  EXPECT_EQ(LossSpec::mse().clamp(0.0), 0.0);
}

TEST(LossSpec, ParseNames) {
  EXPECT_EQ(parse_loss_kind("mse"), LossKind::kMse);
  EXPECT_EQ(parse_loss_kind("kl"), LossKind::kKl);
  EXPECT_EQ(to_string(LossKind::kKl), "kl");
  EXPECT_THROW(parse_loss_kind("l1"), Error);
}

TEST(LossTensor, TwoByTwoMseMatchesQuadrupleSum) {
  Matrix cs(2, 2), ct(2, 2);
  cs << 0.0, 0.3, 0.7, 0.0;
  ct << 0.0, 0.9, 0.4, 0.0;
  Matrix t(2, 2);
  t << 0.3, 0.1, 0.2, 0.4;
  const Vector mu_s = t.rowwise().sum();
  const Vector mu_t = t.colwise().sum().transpose();
  const Matrix got = loss_tensor_product(cs, ct, t, mu_s, mu_t, LossSpec::mse());
  const Matrix want = oracle::loss_tensor(cs, ct, t, oracle::Loss::kMse);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(LossTensor, IdentityCouplingOnPathGraphHasZeroDiagonal) {
  // Path 0 - 1 - 2 with unit edge distances and 1 elsewhere.
  Matrix c(3, 3);
  c << 0.0, 0.5, 1.0, 0.5, 0.0, 0.5, 1.0, 0.5, 0.0;
  const Matrix t = Matrix::Identity(3, 3) / 3.0;
  const Vector mu = Vector::Constant(3, 1.0 / 3.0);
  const Matrix got = loss_tensor_product(c, c, t, mu, mu, LossSpec::mse());
  const Matrix want = oracle::loss_tensor(c, c, t, oracle::Loss::kMse);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(want(i, i), 0.0, 1e-15);
    EXPECT_NEAR(got(i, i), 0.0, 1e-15);
  }
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LossTensor, ZeroCostsGiveZeroLoss) {
  const Matrix z = Matrix::Zero(3, 3);
  const Vector mu = Vector::Constant(3, 1.0 / 3.0);
  const Matrix t = mu * mu.transpose();
  EXPECT_EQ(loss_tensor_product(z, z, t, mu, mu, LossSpec::mse()).cwiseAbs().maxCoeff(),
            0.0);
}

TEST(LossTensor, RandomInstancesBothLosses) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const int ns = size(rng);
    const int nt = size(rng);
    const Matrix cs = oracle::random_cost(ns, rng, trial % 2 == 0);
    const Matrix ct = oracle::random_cost(nt, rng, trial % 2 == 0);
    const Vector mu_s = oracle::random_distribution(ns, rng);
    const Vector mu_t = oracle::random_distribution(nt, rng);
    const Matrix t = oracle::random_coupling(mu_s, mu_t, rng);
    for (LossSpec loss : {LossSpec::mse(), LossSpec::kl()}) {
      const Matrix got = loss_tensor_product(cs, ct, t, t.rowwise().sum(),
                                             t.colwise().sum().transpose(), loss);
      const Matrix want = oracle::loss_tensor(cs, ct, t, to_oracle(loss));
      EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(gw_discrepancy(cs, ct, t, loss),
                  oracle::gw_objective(cs, ct, t, to_oracle(loss)), 1e-10);
    }
  }
}

TEST(LossTensor, DimensionMismatch) {
  const Matrix cs = Matrix::Zero(2, 2);
  const Matrix ct = Matrix::Zero(3, 3);
  const Vector mu2 = Vector::Constant(2, 0.5);
  const Vector mu3 = Vector::Constant(3, 1.0 / 3.0);
  try {
    loss_tensor_product(cs, ct, Matrix::Zero(2, 2), mu2, mu3, LossSpec::mse());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(GwDiscrepancy, TwoNodeUniformCoupling) {
  Matrix cs(2, 2), ct(2, 2);
  cs << 0.0, 0.2, 0.2, 0.0;
  ct << 0.0, 0.5, 0.5, 0.0;
  const Matrix t = Matrix::Constant(2, 2, 0.25);
  const double want = oracle::gw_objective(cs, ct, t, oracle::Loss::kMse);
  EXPECT_NEAR(gw_discrepancy(cs, ct, t, LossSpec::mse()), want, 1e-15);
}

TEST(GwDiscrepancy, IdenticalGraphsUnderIdentityIsZero) {
  std::mt19937_64 rng(2);
  const Matrix c = oracle::random_cost(5, rng, true);
  EXPECT_NEAR(gw_discrepancy(c, c, Matrix::Identity(5, 5) / 5.0, LossSpec::mse()),
              0.0, 1e-16);
}

TEST(GwDiscrepancy, MseIsNonnegativeAndScalesQuadratically) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix cs = oracle::random_cost(4, rng, true);
    const Matrix ct = oracle::random_cost(5, rng, true);
    const Vector mu_s = oracle::random_distribution(4, rng);
    const Vector mu_t = oracle::random_distribution(5, rng);
    const Matrix t = oracle::random_coupling(mu_s, mu_t, rng);
    const double d = gw_discrepancy(cs, ct, t, LossSpec::mse());
    EXPECT_GE(d, 0.0);
    for (double s : {0.5, 3.0}) {
      EXPECT_NEAR(gw_discrepancy(s * cs, s * ct, t, LossSpec::mse()), s * s * d,
                  1e-12 * (1.0 + s * s * d));
    }
  }
}

TEST(MeanElementwiseLoss, MatchesDirectMean) {
  Matrix a(2, 2), b(2, 2);
  a << 0.1, 0.2, 0.3, 0.4;
  b << 0.4, 0.3, 0.2, 0.1;
  EXPECT_NEAR(mean_elementwise_loss(a, b, LossSpec::mse()), (0.09 + 0.01 + 0.01 + 0.09) / 4,
              1e-15);
}

}  // namespace
}  // namespace gwl
