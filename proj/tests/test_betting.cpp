#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "randmarkov/betting.hpp"
#include "randmarkov/rng.hpp"

using namespace randmarkov;

namespace {

std::vector<double> beta_sample(RngStream& rng, std::size_t n, double a, double b) {
  std::vector<double> ys(n);
  for (double& y : ys) y = sample_beta(rng, a, b);
  return ys;
}

double plus_only_unit(const BetContext& ctx) { return ctx.side == BetSide::kPlus ? 1.0 : 0.0; }

}  // namespace

TEST(Strategy, DefaultLambda) {
  EXPECT_DOUBLE_EQ(default_strategy_lambda(0.5, 0.1, 1, 0.05, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(default_strategy_lambda(0.3, 0.1, 1, 0.05, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(default_strategy_lambda(0.7, 0.05, 1, 0.05, 0.5), 1.0);
  EXPECT_NEAR(default_strategy_lambda(0.55, 0.25, 1, 0.05, 0.5), 0.05 / 0.2525, 1e-15);
  EXPECT_THROW(default_strategy_lambda(0.5, 0.0, 1, 0.05, 0.5), std::invalid_argument);
  RngStream rng = make_rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double m0 = 0.01 + 0.98 * uniform01(rng);
    const double lam = default_strategy_lambda(uniform01(rng), 0.001 + uniform01(rng), 1, 0.05, m0);
    ASSERT_GE(lam, 0.0);
    ASSERT_LE(lam, 1.0 / (2.0 * m0));
  }
}

TEST(Strategy, MinusSideMirrors) {
  BetContext ctx;
  ctx.mu_hat = 0.3;
  ctx.sigma2_hat = 0.05;
  ctx.m0 = 0.5;
  ctx.side = BetSide::kMinus;
  EXPECT_DOUBLE_EQ(default_strategy(ctx), default_strategy_lambda(0.7, 0.05, 1, 0.05, 0.5));
  ctx.side = BetSide::kPlus;
  EXPECT_DOUBLE_EQ(default_strategy(ctx), 0.0);
}

TEST(Wealth, ForcedPlusBet) {
  const std::vector<double> ys{1.0, 0.0};
  const TwoSidedWealth w = wealth_paths(ys, 0.5, plus_only_unit, 0.05);
  EXPECT_DOUBLE_EQ(w.m_plus.back(), 0.75);
  EXPECT_DOUBLE_EQ(w.m_minus.back(), 1.0);
  EXPECT_DOUBLE_EQ(w.combined.back(), 0.875);
}

TEST(Wealth, ZeroBetsStayAtOne) {
  RngStream rng = make_rng(2);
  const auto ys = beta_sample(rng, 50, 2.0, 2.0);
  const TwoSidedWealth w = wealth_paths(ys, 0.5, [](const BetContext&) { return 0.0; }, 0.05);
  for (double v : w.combined.values()) EXPECT_EQ(v, 1.0);
}

TEST(Wealth, CombinedIsAverageAndNonnegative) {
  RngStream rng = make_rng(3);
  for (int r = 0; r < 100; ++r) {
    const auto ys = beta_sample(rng, 100, 0.3, 0.3);
    const double m0 = 0.05 + 0.9 * uniform01(rng);
    const TwoSidedWealth w = wealth_paths(ys, m0, default_strategy, 0.05);
    ASSERT_EQ(w.combined.size(), ys.size() + 1);
    for (std::size_t t = 0; t < w.combined.size(); ++t) {
      ASSERT_GE(w.m_plus[t], 0.0);
      ASSERT_GE(w.m_minus[t], 0.0);
      ASSERT_DOUBLE_EQ(w.combined[t], 0.5 * (w.m_plus[t] + w.m_minus[t]));
    }
  }
}

TEST(Wealth, Validation) {
  EXPECT_THROW(wealth_paths(std::vector<double>{1.2}, 0.5, default_strategy, 0.05),
               std::invalid_argument);
  EXPECT_THROW(wealth_paths(std::vector<double>{0.2}, 1.0, default_strategy, 0.05),
               std::invalid_argument);
  auto reckless = [](const BetContext&) { return 5.0; };
  EXPECT_THROW(wealth_paths(std::vector<double>{0.2}, 0.5, reckless, 0.05), std::domain_error);
}

TEST(Wealth, NullMartingaleMean) {
  RngStream rng = make_rng(4);
  const int reps = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto ys = beta_sample(rng, 500, 20.0, 20.0);
    const double m = wealth_paths(ys, 0.5, default_strategy, 0.05).combined.back();
    sum += m;
    sum2 += m * m;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, 1.0, 3.0 * se);
}

TEST(Wealth, BetsArePredictable) {
  RngStream rng = make_rng(5);
  const auto ys = beta_sample(rng, 60, 3.0, 2.0);
  std::vector<std::vector<double>> seen(2);
  auto recorder = [&](std::vector<double>& log) {
    return [&log](const BetContext& ctx) {
      const double lam = default_strategy(ctx);
      if (ctx.side == BetSide::kPlus) log.push_back(lam);
      return lam;
    };
  };
  wealth_paths(ys, 0.5, recorder(seen[0]), 0.05);
  const std::size_t t = 25;
  std::vector<double> shuffled = ys;
  const Permutation tail = random_permutation(rng, ys.size() - t);
  for (std::size_t i = 0; i < tail.size(); ++i) shuffled[t + i] = ys[t + tail[i]];
  wealth_paths(shuffled, 0.5, recorder(seen[1]), 0.05);
  for (std::size_t i = 0; i <= t; ++i) EXPECT_EQ(seen[0][i], seen[1][i]) << i;
}

TEST(Wealth, FinalWealthFollowsOrder) {
  RngStream rng = make_rng(6);
  const auto ys = beta_sample(rng, 40, 5.0, 3.0);
  const Permutation pi = random_permutation(rng, ys.size());
  const auto permuted = pi.apply<double>(ys);
  EXPECT_DOUBLE_EQ(final_wealth(ys, pi, 0.5, default_strategy, 0.05),
                   wealth_paths(permuted, 0.5, default_strategy, 0.05).combined.back());
  EXPECT_THROW(final_wealth(ys, Permutation::identity(3), 0.5, default_strategy, 0.05),
               std::invalid_argument);
}

TEST(Rules, WorkedExamples) {
  BettingEvidence ev;
  ev.path = WealthPath({1.0, 2.0, 15.0});
  ev.u = 0.7;
  EXPECT_FALSE(apply_betting_rule(ev, 0.05, BettingRule::kVille).reject);
  EXPECT_TRUE(apply_betting_rule(ev, 0.05, BettingRule::kRandVille).reject);

  std::vector<double> crossing(40, 1.0);
  crossing[37] = 21.0;
  ev.path = WealthPath(crossing);
  const Decision v = apply_betting_rule(ev, 0.05, BettingRule::kVille);
  EXPECT_TRUE(v.reject);
  EXPECT_EQ(v.crossing_index, 37u);

  ev.final_wealths = {10.0};
  ev.u = 0.4;
  EXPECT_FALSE(apply_betting_rule(ev, 0.05, BettingRule::kAvMI).reject);
  EXPECT_TRUE(apply_betting_rule(ev, 0.05, BettingRule::kUMI).reject);
  EXPECT_EQ(betting_rule_from_string("RandVille"), BettingRule::kRandVille);
  EXPECT_THROW(betting_rule_from_string("LBOW"), std::invalid_argument);
}

TEST(Rules, SharedRandomnessDominance) {
  RngStream rng = make_rng(7);
  for (int r = 0; r < 300; ++r) {
    const auto ys = beta_sample(rng, 100, 20.0, 17.0 + 6.0 * uniform01(rng));
    RngStream draw_rng = rng.substream(r);
    const BettingDraws draws = draw_betting_randomness(draw_rng, ys.size(), 20);
    const BettingEvidence ev = collect_betting_evidence(ys, 0.5, 0.05, draws, default_strategy);
    auto rej = [&](BettingRule rule) { return apply_betting_rule(ev, 0.05, rule).reject; };
    if (rej(BettingRule::kVille)) ASSERT_TRUE(rej(BettingRule::kRandVille));
    if (rej(BettingRule::kAvMI)) ASSERT_TRUE(rej(BettingRule::kUMI) && rej(BettingRule::kEMI));
    if (rej(BettingRule::kEMI) || rej(BettingRule::kUMI)) ASSERT_TRUE(rej(BettingRule::kEUMI));
  }
}

TEST(Rules, BettingRejectIsDeterministic) {
  RngStream rng = make_rng(8);
  const auto ys = beta_sample(rng, 200, 20.0, 18.0);
  for (auto rule : {BettingRule::kVille, BettingRule::kUMI, BettingRule::kEUMI}) {
    RngStream a = make_rng(1);
    RngStream b = make_rng(1);
    EXPECT_EQ(betting_reject(ys, 0.5, 0.05, 10, a, rule).reject,
              betting_reject(ys, 0.5, 0.05, 10, b, rule).reject);
  }
  RngStream c = make_rng(1);
  EXPECT_THROW(betting_reject(ys, 0.5, 0.05, 0, c, BettingRule::kAvMI), std::invalid_argument);
}

TEST(Rules, NullTypeOne) {
  RngStream rng = make_rng(9);
  const int reps = 300;
  std::vector<int> rejects(6, 0);
  for (int r = 0; r < reps; ++r) {
    const auto ys = beta_sample(rng, 300, 20.0, 20.0);
    RngStream draw_rng = rng.substream(r);
    const BettingDraws draws = draw_betting_randomness(draw_rng, ys.size(), 20);
    const BettingEvidence ev = collect_betting_evidence(ys, 0.5, 0.05, draws, default_strategy);
    int k = 0;
    for (auto rule : {BettingRule::kVille, BettingRule::kRandVille, BettingRule::kAvMI,
                      BettingRule::kUMI, BettingRule::kEMI, BettingRule::kEUMI}) {
      rejects[k++] += apply_betting_rule(ev, 0.05, rule).reject;
    }
  }
  for (int c : rejects) EXPECT_LE(static_cast<double>(c) / reps, 0.05 + 3.0 * oracle::se(0.05, reps));
}

TEST(InvertCi, ConstantDataAndEndpoints) {
  const std::vector<double> half(30, 0.5);
  RngStream rng = make_rng(10);
  const auto ci = invert_mean_ci(half, 0.05, 0.05, rng, BettingRule::kUMI, 10);
  EXPECT_TRUE(ci.contains(0.5));
  const std::vector<double> zeros(30, 0.0);
  const auto z = invert_mean_ci(zeros, 0.05, 0.1, rng, BettingRule::kVille);
  EXPECT_TRUE(z.contains(0.0));
  EXPECT_THROW(invert_mean_ci(half, 0.05, 0.2, rng, BettingRule::kUMI), std::invalid_argument);
}

TEST(InvertCi, UmiNestedInAverageAndCovers) {
  RngStream rng = make_rng(11);
  const int reps = 40;
  int covered = 0;
  for (int r = 0; r < reps; ++r) {
    const auto ys = beta_sample(rng, 300, 20.0, 20.0);
    RngStream a = rng.substream(2 * r);
    RngStream b = rng.substream(2 * r);
    const auto umi = invert_mean_ci(ys, 0.05, 0.02, a, BettingRule::kUMI, 10);
    const auto av = invert_mean_ci(ys, 0.05, 0.02, b, BettingRule::kAvMI, 10);
    if (!umi.is_empty()) {
      ASSERT_FALSE(av.is_empty());
      ASSERT_GE(umi.lower(), av.lower());
      ASSERT_LE(umi.upper(), av.upper());
    }
    covered += umi.contains(0.5);
  }
  EXPECT_GE(covered, reps - 4);
}
