#include "randmarkov/betting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randmarkov {

namespace {

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": alpha must lie in (0, 1)");
  }
}

void require_unit_data(std::span<const double> ys, const char* where) {
  for (double y : ys) {
    if (!(y >= 0.0 && y <= 1.0)) {
      throw std::invalid_argument(std::string(where) + ": data must lie in [0, 1]");
    }
  }
}

void require_m0(double m0, const char* where) {
  if (!(m0 > 0.0 && m0 < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": m0 must lie in (0, 1)");
  }
}

// Largest bet keeping the factor nonnegative for every y in [0, 1].
double feasible_cap(double m0, BetSide side) {
  return side == BetSide::kPlus ? 1.0 / m0 : 1.0 / (1.0 - m0);
}

double checked_bet(const BettingStrategy& strategy, const BetContext& ctx) {
  const double lambda = strategy(ctx);
  if (!(lambda >= 0.0 && lambda <= feasible_cap(ctx.m0, ctx.side))) {
    throw std::domain_error("betting strategy produced an infeasible bet");
  }
  return lambda;
}

// Walks `ys` in `order` (identity when null), calling `visit(combined)` after
// every step, and returns the final combined wealth.
template <typename Visit>
double run_wealth(std::span<const double> ys, const Permutation* order, double m0,
                  const BettingStrategy& strategy, double alpha, Visit&& visit) {
  RegularizedMoments moments;
  BetContext ctx;
  ctx.alpha = alpha;
  ctx.m0 = m0;
  double plus = 1.0;
  double minus = 1.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double y = order ? ys[(*order)[i]] : ys[i];
    ctx.mu_hat = moments.mu_hat;
    ctx.sigma2_hat = moments.sigma2_hat;
    ctx.t = i + 1;
    ctx.side = BetSide::kPlus;
    const double lambda_plus = checked_bet(strategy, ctx);
    ctx.side = BetSide::kMinus;
    const double lambda_minus = checked_bet(strategy, ctx);
    plus *= 1.0 + lambda_plus * (y - m0);
    minus *= 1.0 - lambda_minus * (y - m0);
    visit(plus, minus);
    moments.update(y);
  }
  return 0.5 * (plus + minus);
}

}  // namespace

double default_strategy_lambda(double mu_hat, double sigma2_hat, std::size_t /*t*/,
                               double alpha, double m0) {
  if (!(sigma2_hat > 0.0)) {
    throw std::invalid_argument("default_strategy_lambda: sigma2_hat must be > 0");
  }
  require_alpha(alpha, "default_strategy_lambda");
  require_m0(m0, "default_strategy_lambda");
  const double edge = mu_hat - m0;
  const double kelly = std::max(edge, 0.0) / (sigma2_hat + edge * edge);
  return std::clamp(kelly, 0.0, 1.0 / (2.0 * m0));
}

double default_strategy(const BetContext& ctx) {
  if (ctx.side == BetSide::kPlus) {
    return default_strategy_lambda(ctx.mu_hat, ctx.sigma2_hat, ctx.t, ctx.alpha, ctx.m0);
  }
  return default_strategy_lambda(1.0 - ctx.mu_hat, ctx.sigma2_hat, ctx.t, ctx.alpha,
                                 1.0 - ctx.m0);
}

void RegularizedMoments::update(double y) {
  ++t;
  sum_y += y;
  const auto denom = static_cast<double>(t + 1);
  mu_hat = (0.5 + sum_y) / denom;
  sum_sq_dev += (y - mu_hat) * (y - mu_hat);
  sigma2_hat = (0.25 + sum_sq_dev) / denom;
}

TwoSidedWealth wealth_paths(std::span<const double> ys, double m0,
                            const BettingStrategy& strategy, double alpha) {
  require_alpha(alpha, "wealth_paths");
  require_m0(m0, "wealth_paths");
  require_unit_data(ys, "wealth_paths");
  TwoSidedWealth out;
  out.m_plus.push(1.0);
  out.m_minus.push(1.0);
  out.combined.push(1.0);
  run_wealth(ys, nullptr, m0, strategy, alpha, [&](double plus, double minus) {
    out.m_plus.push(plus);
    out.m_minus.push(minus);
    out.combined.push(0.5 * (plus + minus));
  });
  return out;
}

double final_wealth(std::span<const double> ys, const Permutation& order, double m0,
                    const BettingStrategy& strategy, double alpha) {
  if (order.size() != ys.size()) {
    throw std::invalid_argument("final_wealth: permutation size does not match the data");
  }
  return run_wealth(ys, &order, m0, strategy, alpha, [](double, double) {});
}

std::string to_string(BettingRule rule) {
  switch (rule) {
    case BettingRule::kVille: return "Ville";
    case BettingRule::kRandVille: return "RandVille";
    case BettingRule::kAvMI: return "AvMI";
    case BettingRule::kUMI: return "UMI";
    case BettingRule::kEMI: return "EMI";
    case BettingRule::kEUMI: return "EUMI";
  }
  return "unknown";
}

BettingRule betting_rule_from_string(std::string_view name) {
  for (auto rule : {BettingRule::kVille, BettingRule::kRandVille, BettingRule::kAvMI,
                    BettingRule::kUMI, BettingRule::kEMI, BettingRule::kEUMI}) {
    if (to_string(rule) == name) return rule;
  }
  throw std::invalid_argument("unknown betting rule: " + std::string(name));
}

BettingDraws draw_betting_randomness(RngStream& rng, std::size_t n, std::size_t B) {
  if (n == 0) throw std::invalid_argument("draw_betting_randomness: n must be >= 1");
  BettingDraws draws;
  RngStream u_stream = rng.substream(0);
  draws.u = uniform01(u_stream);
  draws.permutations.reserve(B);
  for (std::size_t b = 0; b < B; ++b) {
    RngStream perm_stream = rng.substream(b + 1);
    draws.permutations.push_back(random_permutation(perm_stream, n));
  }
  return draws;
}

BettingEvidence collect_betting_evidence(std::span<const double> data, double m0, double alpha,
                                         const BettingDraws& draws,
                                         const BettingStrategy& strategy, bool with_path,
                                         bool with_permutations) {
  require_alpha(alpha, "collect_betting_evidence");
  require_m0(m0, "collect_betting_evidence");
  require_unit_data(data, "collect_betting_evidence");
  BettingEvidence evidence;
  evidence.u = draws.u;
  if (with_path) evidence.path = wealth_paths(data, m0, strategy, alpha).combined;
  if (with_permutations) {
    evidence.final_wealths.reserve(draws.permutations.size());
    for (const Permutation& perm : draws.permutations) {
      evidence.final_wealths.push_back(final_wealth(data, perm, m0, strategy, alpha));
    }
  }
  return evidence;
}

Decision apply_betting_rule(const BettingEvidence& evidence, double alpha, BettingRule rule) {
  switch (rule) {
    case BettingRule::kVille: {
      if (evidence.path.size() == 0) throw std::invalid_argument("Ville rule needs a wealth path");
      const auto crossing = ville_first_crossing(evidence.path, alpha);
      return Decision{crossing.has_value(), crossing, std::nullopt};
    }
    case BettingRule::kRandVille:
      if (evidence.path.size() == 0) throw std::invalid_argument("RandVille rule needs a wealth path");
      return randomized_ville_reject(evidence.path, evidence.path.size() - 1, alpha, evidence.u);
    default:
      break;
  }
  const auto& finals = evidence.final_wealths;
  if (finals.empty()) throw std::invalid_argument("rule needs at least one permuted final wealth");
  switch (rule) {
    case BettingRule::kAvMI: return mi_reject(running_mean_of(finals), alpha);
    case BettingRule::kUMI: return umi_reject(running_mean_of(finals), alpha, evidence.u);
    case BettingRule::kEMI: return emi_reject(finals, alpha);
    case BettingRule::kEUMI: return eumi_reject(finals, alpha, evidence.u);
    default: break;
  }
  throw std::invalid_argument("apply_betting_rule: unknown rule");
}

Decision betting_reject(std::span<const double> data, double m0, double alpha, std::size_t B,
                        RngStream& rng, BettingRule rule, const BettingStrategy& strategy) {
  if (data.empty()) throw std::invalid_argument("betting_reject: empty data");
  const bool sequential = rule == BettingRule::kVille || rule == BettingRule::kRandVille;
  if (!sequential && B == 0) throw std::invalid_argument("betting_reject: B must be >= 1");
  const BettingDraws draws = draw_betting_randomness(rng, data.size(), sequential ? 0 : B);
  const BettingEvidence evidence =
      collect_betting_evidence(data, m0, alpha, draws, strategy, sequential, !sequential);
  return apply_betting_rule(evidence, alpha, rule);
}

ConfidenceInterval invert_mean_ci(std::span<const double> data, double alpha, double grid_step,
                                  RngStream& rng, BettingRule rule, std::size_t B,
                                  const BettingStrategy& strategy) {
  if (data.empty()) throw std::invalid_argument("invert_mean_ci: empty data");
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw std::invalid_argument("invert_mean_ci: grid_step must lie in (0, 0.1]");
  }
  require_alpha(alpha, "invert_mean_ci");
  require_unit_data(data, "invert_mean_ci");
  const bool sequential = rule == BettingRule::kVille || rule == BettingRule::kRandVille;
  if (!sequential && B == 0) throw std::invalid_argument("invert_mean_ci: B must be >= 1");

  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double m = static_cast<double>(k) * grid_step;
    if (m > 1.0 + 1e-12) break;
    grid.push_back(std::min(m, 1.0));
  }
  if (grid.back() < 1.0) grid.push_back(1.0);

  const BettingDraws draws = draw_betting_randomness(rng, data.size(), sequential ? 0 : B);
  double lower = 2.0;
  double upper = -1.0;
  for (double m : grid) {
    bool rejected;
    if (m <= 0.0 || m >= 1.0) {
      // Mean 0 (or 1) on [0, 1] forces every observation to equal it.
      rejected = std::any_of(data.begin(), data.end(), [m](double y) { return y != m; });
    } else {
      const BettingEvidence evidence =
          collect_betting_evidence(data, m, alpha, draws, strategy, sequential, !sequential);
      rejected = apply_betting_rule(evidence, alpha, rule).reject;
    }
    if (!rejected) {
      lower = std::min(lower, m);
      upper = std::max(upper, m);
    }
  }
  if (lower > upper) {
    return ConfidenceInterval::empty(running_mean_of(data), IntervalMethod::kBetting, draws.u);
  }
  return ConfidenceInterval::bounds(lower, upper, IntervalMethod::kBetting, draws.u);
}

}  // namespace randmarkov
