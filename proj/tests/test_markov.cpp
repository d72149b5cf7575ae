#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "randmarkov/markov.hpp"
#include "randmarkov/rng.hpp"
#include "randmarkov/tail_bounds.hpp"

using namespace randmarkov;

TEST(Mi, Boundary) {
  EXPECT_TRUE(mi_reject(20.0, 0.05).reject);
  EXPECT_FALSE(mi_reject(19.999, 0.05).reject);
  EXPECT_THROW(mi_reject(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(mi_reject(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(mi_reject(-1.0, 0.05), std::invalid_argument);
}

TEST(Mi, ExponentialEvalueNeverRejects) {
  RngStream rng = make_rng(1);
  int rejects = 0;
  for (int i = 0; i < 100000; ++i) rejects += mi_reject(sample_exponential(rng), 0.05).reject;
  // P(Exp(1) >= 20) = e^-20.
  EXPECT_EQ(rejects, 0);
}

TEST(Umi, DirectComparison) {
  const Decision d = umi_reject(10.0, 0.05, 0.4);
  EXPECT_TRUE(d.reject);
  EXPECT_EQ(d.randomization_used, 0.4);
  EXPECT_FALSE(umi_reject(7.9, 0.05, 0.4).reject);
  EXPECT_THROW(umi_reject(1.0, 0.05, 0.0), std::invalid_argument);
  EXPECT_THROW(umi_reject(1.0, 0.05, 1.1), std::invalid_argument);
}

TEST(Umi, ReducesToMiAtUnitU) {
  RngStream rng = make_rng(2);
  for (int i = 0; i < 10000; ++i) {
    const double x = 40.0 * uniform01(rng);
    const double alpha = 0.01 + 0.98 * uniform01(rng);
    ASSERT_EQ(umi_reject(x, alpha, 1.0).reject, mi_reject(x, alpha).reject);
  }
}

// For X supported in [0, 1/a], P(X >= U/a) = a E[X] exactly.
TEST(Umi, EqualityCaseMatchesExpectation) {
  RngStream rng = make_rng(3);
  const double a = 0.25;
  const int reps = 200000;
  int hits = 0;
  double sum = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double x = 4.0 * sample_beta(rng, 2.0, 5.0);
    sum += x;
    hits += umi_reject(x, a, uniform01(rng)).reject;
  }
  const double target = a * sum / reps;
  const double p = static_cast<double>(hits) / reps;
  EXPECT_NEAR(p, target, 3.0 * oracle::se(target, reps));
}

TEST(Umi, CauchyIdentity) {
  RngStream rng = make_rng(4);
  const int reps = 200000;
  int hits = 0;
  for (int i = 0; i < reps; ++i) {
    const double c = std::abs(std::tan(std::numbers::pi * (uniform01(rng) - 0.5)));
    hits += umi_reject(c, 0.05, uniform01(rng)).reject;
  }
  // E[min(0.05|C|, 1)] = (2/pi)[0.05 * 0.5 log(1 + 400) + pi/2 - atan(20)].
  const double exact = (2.0 / std::numbers::pi) *
                       (0.025 * std::log(401.0) + std::numbers::pi / 2.0 - std::atan(20.0));
  EXPECT_NEAR(exact, 0.127, 0.001);
  EXPECT_NEAR(static_cast<double>(hits) / reps, exact, 3.0 * oracle::se(exact, reps));
}

TEST(Ami, AlwaysRejectsAtEpsilon) {
  for (double u : {0.01, 0.5, 0.99}) EXPECT_TRUE(ami_reject(3.0, 3.0, u).reject);
  EXPECT_THROW(ami_reject(1.0, 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(ami_reject(1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Ami, IdentityWithUmi) {
  RngStream rng = make_rng(5);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const double eps = 1.0 + 50.0 * uniform01(rng);
    const double u = uniform01(rng);
    const double x = eps * 1.2 * uniform01(rng);
    mismatches += ami_reject(x, eps, u).reject != umi_reject(x, 1.0 / eps, 1.0 - u).reject;
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(Ami, UniformOnZeroTwoEqualityCase) {
  RngStream rng = make_rng(6);
  const int reps = 100000;
  int hits = 0;
  for (int i = 0; i < reps; ++i) hits += ami_reject(2.0 * uniform01(rng), 2.0, uniform01(rng)).reject;
  EXPECT_NEAR(static_cast<double>(hits) / reps, 0.5, 0.005);
}

TEST(Emi, PrefixCrossing) {
  const std::vector<double> a{30.0, 2.0};
  const Decision d = emi_reject(a, 0.05);
  EXPECT_TRUE(d.reject);
  EXPECT_EQ(d.crossing_index, 1u);
  const std::vector<double> b{15.0, 25.0};
  EXPECT_EQ(emi_reject(b, 0.05).crossing_index, 2u);
  const std::vector<double> c{15.0, 24.0};
  EXPECT_FALSE(emi_reject(c, 0.05).reject);
  EXPECT_THROW(emi_reject(std::vector<double>{}, 0.05), std::invalid_argument);
  EXPECT_THROW(emi_reject(std::vector<double>{1.0, -1.0}, 0.05), std::invalid_argument);
}

TEST(Emi, ExchangeableNullTypeOne) {
  RngStream rng = make_rng(7);
  const int reps = 100000;
  int rejects = 0;
  std::vector<double> xs(50);
  for (int r = 0; r < reps; ++r) {
    for (double& x : xs) x = sample_exponential(rng);
    rejects += emi_reject(xs, 0.05).reject;
  }
  EXPECT_LE(static_cast<double>(rejects) / reps, 0.05);
}

TEST(Eumi, Clauses) {
  const std::vector<double> a{10.0, 1.0};
  EXPECT_TRUE(eumi_reject(a, 0.05, 0.4).reject);
  EXPECT_FALSE(emi_reject(a, 0.05).reject);
  const std::vector<double> b{5.0, 40.0};
  const Decision d = eumi_reject(b, 0.05, 0.9);
  EXPECT_TRUE(d.reject);
  EXPECT_EQ(d.crossing_index, 2u);
}

TEST(Eumi, DominatesEmiAndFirstElementUmi) {
  RngStream rng = make_rng(8);
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> xs(1 + uniform_index(rng, 10));
    for (double& x : xs) x = 30.0 * sample_exponential(rng) * uniform01(rng);
    const double u = uniform01(rng);
    const bool eumi = eumi_reject(xs, 0.05, u).reject;
    if (emi_reject(xs, 0.05).reject) ASSERT_TRUE(eumi);
    if (umi_reject(xs.front(), 0.05, u).reject) ASSERT_TRUE(eumi);
  }
}

TEST(Markov, Reductions) {
  RngStream rng = make_rng(9);
  for (int i = 0; i < 5000; ++i) {
    const double x = 40.0 * uniform01(rng);
    const std::vector<double> single{x};
    const bool mi = mi_reject(x, 0.05).reject;
    ASSERT_EQ(emi_reject(single, 0.05).reject, mi);
    ASSERT_EQ(eumi_reject(single, 0.05, 1.0).reject, mi);
    const double c = 40.0 * uniform01(rng);
    const std::vector<double> constant(7, c);
    ASSERT_EQ(emi_reject(constant, 0.05).reject, mi_reject(c, 0.05).reject);
  }
}

TEST(Markov, Monotonicity) {
  RngStream rng = make_rng(10);
  for (int i = 0; i < 5000; ++i) {
    const double x = 40.0 * uniform01(rng);
    const double bump = 5.0 * uniform01(rng);
    const double u1 = uniform01(rng);
    const double u2 = u1 + (1.0 - u1) * uniform01(rng);
    const double a1 = 0.01 + 0.5 * uniform01(rng);
    const double a2 = a1 + 0.4 * uniform01(rng);
    if (umi_reject(x, 0.05, u2).reject) ASSERT_TRUE(umi_reject(x, 0.05, u1).reject);
    if (umi_reject(x, 0.05, u2).reject) ASSERT_TRUE(umi_reject(x + bump, 0.05, u2).reject);
    if (mi_reject(x, a1).reject) ASSERT_TRUE(mi_reject(x, a2).reject);
    std::vector<double> xs{x, 3.0, 30.0 * uniform01(rng)};
    const bool before = emi_reject(xs, a1).reject;
    xs[1] += bump;
    if (before) ASSERT_TRUE(emi_reject(xs, a1).reject);
  }
}

TEST(EToP, Values) {
  EXPECT_DOUBLE_EQ(e_to_p(40.0, 0.5), 0.0125);
  EXPECT_DOUBLE_EQ(e_to_p(0.0), 1.0);
  EXPECT_DOUBLE_EQ(e_to_p(0.5), 1.0);
  EXPECT_DOUBLE_EQ(e_to_p(4.0), 0.25);
}

TEST(EToP, SuperUniformUnderNull) {
  RngStream rng = make_rng(11);
  const int reps = 200000;
  int below = 0;
  for (int i = 0; i < reps; ++i) below += e_to_p(sample_exponential(rng), uniform01(rng)) <= 0.05;
  EXPECT_LE(static_cast<double>(below) / reps, 0.05 + 3.0 * oracle::se(0.05, reps));
}

TEST(TailThreshold, IdentityRecoversUmi) {
  const MonotonePair id{[](double y) { return y; }, [](double z) { return z; }, 0.0, INFINITY};
  EXPECT_DOUBLE_EQ(randomized_tail_threshold(id, 20.0, 0.3), 6.0);
}

TEST(TailThreshold, RandomizedCantelli) {
  const double sigma = 1.0, k = 2.0;
  const MonotonePair cantelli{
      [=](double y) { return (y + sigma / k) * (y + sigma / k); },
      [=](double z) { return std::sqrt(z) - sigma / k; }, 0.0, INFINITY};
  RngStream rng = make_rng(12);
  EXPECT_TRUE(check_monotone_pair(cantelli, rng));
  EXPECT_NEAR(randomized_tail_threshold(cantelli, 2.0, 0.25), 0.75, 1e-12);
  EXPECT_NEAR(randomized_tail_threshold(cantelli, 2.0, 1.0), 2.0, 1e-12);
  EXPECT_NEAR(cantelli_threshold(sigma, k, 0.25), 0.75, 1e-12);
}

TEST(TailThreshold, ExponentialPairMatchesHoeffding) {
  RngStream rng = make_rng(13);
  for (int i = 0; i < 10; ++i) {
    const double sigma = 0.5 + uniform01(rng);
    const std::size_t n = 10 + uniform_index(rng, 500);
    const double alpha = 0.01 + 0.2 * uniform01(rng);
    const double u = uniform01(rng);
    // Mean of n sigma-sub-Gaussian terms: lambda = sqrt(2 n log(1/alpha)) / sigma,
    // x = deterministic threshold, Chernoff bound exp(lambda^2 sigma^2 / (2n)) / f(x).
    const double x = hoeffding_threshold(sigma, n, alpha);
    const double lambda = std::sqrt(2.0 * n * std::log(1.0 / alpha)) / sigma;
    const MonotonePair chernoff{[=](double y) { return std::exp(lambda * y); },
                                [=](double z) { return std::log(z) / lambda; }, 1e-300, INFINITY};
    EXPECT_TRUE(check_monotone_pair(chernoff, rng, 200));
    EXPECT_NEAR(randomized_tail_threshold(chernoff, x, u), hoeffding_threshold(sigma, n, alpha, u),
                1e-10);
  }
}

TEST(TailThreshold, RejectsBadDomain) {
  const MonotonePair bounded{[](double y) { return y; }, [](double z) { return z; }, 0.5, 1.0};
  EXPECT_THROW(randomized_tail_threshold(bounded, 1.0, 0.1), std::invalid_argument);
  const MonotonePair broken{[](double y) { return y; }, [](double z) { return z / 2.0; }, 0.0, 10.0};
  RngStream rng = make_rng(14);
  EXPECT_FALSE(check_monotone_pair(broken, rng));
}
