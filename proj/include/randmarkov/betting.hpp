#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randmarkov/markov.hpp"
#include "randmarkov/rng.hpp"
#include "randmarkov/tail_bounds.hpp"
#include "randmarkov/ville.hpp"

namespace randmarkov {

/// Which one-sided wealth process a bet is for: plus bets on mean > m0,
/// minus bets on mean < m0.
enum class BetSide { kPlus, kMinus };

/// Everything a predictable strategy may look at before observation t.
struct BetContext {
  double mu_hat = 0.5;      // regularized mean of Y_1..Y_{t-1}
  double sigma2_hat = 0.25; // regularized variance of Y_1..Y_{t-1}
  std::size_t t = 1;
  double alpha = 0.05;
  double m0 = 0.5;
  BetSide side = BetSide::kPlus;
};

/// Returns lambda_t >= 0. The plus factor is 1 + lambda (y - m0), the minus
/// factor 1 - lambda (y - m0); both must stay nonnegative on [0, 1].
using BettingStrategy = std::function<double(const BetContext&)>;

/// Approximate-Kelly plus-side bet
/// clip(max(mu_hat - m0, 0) / (sigma2_hat + (mu_hat - m0)^2), 0, 1/(2 m0)).
double default_strategy_lambda(double mu_hat, double sigma2_hat, std::size_t t, double alpha,
                               double m0);

/// Default strategy for either side (the minus side mirrors y -> 1 - y).
double default_strategy(const BetContext& ctx);

/// Regularized running moments (1/2 + sum y)/(t + 1) and
/// (1/4 + sum (y_i - mu_hat_i)^2)/(t + 1).
struct RegularizedMoments {
  std::size_t t = 0;
  double mu_hat = 0.5;
  double sigma2_hat = 0.25;
  double sum_y = 0.0;
  double sum_sq_dev = 0.0;

  void update(double y);
};

struct TwoSidedWealth {
  WealthPath m_plus;
  WealthPath m_minus;
  WealthPath combined;  // (M+ + M-)/2 at every index
};

TwoSidedWealth wealth_paths(std::span<const double> ys, double m0,
                            const BettingStrategy& strategy, double alpha);

/// Final combined wealth (M+_n + M-_n)/2 of `ys` read in `order`.
double final_wealth(std::span<const double> ys, const Permutation& order, double m0,
                    const BettingStrategy& strategy, double alpha);

enum class BettingRule { kVille, kRandVille, kAvMI, kUMI, kEMI, kEUMI };

std::string to_string(BettingRule rule);
BettingRule betting_rule_from_string(std::string_view name);

/// Randomization shared by all rules (and all null values) within one
/// replication: one uniform and B independent uniform permutations.
struct BettingDraws {
  double u = 1.0;
  std::vector<Permutation> permutations;
};

BettingDraws draw_betting_randomness(RngStream& rng, std::size_t n, std::size_t B);

/// Sufficient statistics for every rule: the combined wealth path in the
/// given order (Ville rules) and the B permuted final wealths.
struct BettingEvidence {
  WealthPath path;
  std::vector<double> final_wealths;
  double u = 1.0;
};

BettingEvidence collect_betting_evidence(std::span<const double> data, double m0, double alpha,
                                         const BettingDraws& draws,
                                         const BettingStrategy& strategy,
                                         bool with_path = true, bool with_permutations = true);

Decision apply_betting_rule(const BettingEvidence& evidence, double alpha, BettingRule rule);

/// Tests H0: E[Y] = m0 with one of the six rules; `rng` supplies u and the B
/// permutations (B is ignored by Ville and RandVille).
Decision betting_reject(std::span<const double> data, double m0, double alpha, std::size_t B,
                        RngStream& rng, BettingRule rule,
                        const BettingStrategy& strategy = default_strategy);

/// Confidence interval for the mean by inverting `rule` over the grid
/// {0, step, ..., 1} with one shared u and permutation set; returns the hull
/// of non-rejected points, or EMPTY.
ConfidenceInterval invert_mean_ci(std::span<const double> data, double alpha, double grid_step,
                                  RngStream& rng, BettingRule rule, std::size_t B = 100,
                                  const BettingStrategy& strategy = default_strategy);

}  // namespace randmarkov
