#include "randmarkov/evalues.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace randmarkov {

namespace {

constexpr double kMaxSubsets = 1e6;

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": alpha must lie in (0, 1)");
  }
}

double binomial(std::size_t n, std::size_t k) {
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(result);
}

// inf_t 1/(running average), clipped to 1.
double emi_p_value(std::span<const double> permuted) {
  RunningMean mean;
  double best = 1.0;
  for (double x : permuted) {
    const double avg = mean.push(x);
    if (avg > 0.0) best = std::min(best, 1.0 / avg);
  }
  return best;
}

}  // namespace

std::string to_string(CombinationRule rule) {
  switch (rule) {
    case CombinationRule::kAvMI: return "AvMI";
    case CombinationRule::kUMI: return "UMI";
    case CombinationRule::kEMI: return "EMI";
    case CombinationRule::kEUMI: return "EUMI";
    case CombinationRule::kMwayUstatMI: return "mway_ustat_MI";
    case CombinationRule::kMwayUstatUMI: return "mway_ustat_UMI";
    case CombinationRule::kMwaySequentialEMI: return "mway_sequential_EMI";
  }
  return "unknown";
}

CombinationRule combination_rule_from_string(std::string_view name) {
  for (auto rule : {CombinationRule::kAvMI, CombinationRule::kUMI, CombinationRule::kEMI,
                    CombinationRule::kEUMI, CombinationRule::kMwayUstatMI,
                    CombinationRule::kMwayUstatUMI, CombinationRule::kMwaySequentialEMI}) {
    if (to_string(rule) == name) return rule;
  }
  throw std::invalid_argument("unknown combination rule: " + std::string(name));
}

CombinationResult combine_dependent(std::span<const double> es, double alpha, double u,
                                    const Permutation& pi, CombinationRule rule) {
  require_alpha(alpha, "combine_dependent");
  if (es.empty()) throw std::invalid_argument("combine_dependent: no e-values");
  if (pi.size() != es.size() || !pi.is_bijection()) {
    throw std::invalid_argument("combine_dependent: pi must be a permutation of the inputs");
  }
  for (double e : es) {
    if (!(e >= 0.0)) throw std::invalid_argument("combine_dependent: e-values must be >= 0");
  }
  const std::vector<double> permuted = pi.apply(es);

  switch (rule) {
    case CombinationRule::kAvMI: {
      const double mean = running_mean_of(permuted);
      return {mi_reject(mean, alpha), e_to_p(mean)};
    }
    case CombinationRule::kUMI: {
      const double mean = running_mean_of(permuted);
      return {umi_reject(mean, alpha, u), e_to_p(mean, u)};
    }
    case CombinationRule::kEMI:
      return {emi_reject(permuted, alpha), emi_p_value(permuted)};
    case CombinationRule::kEUMI: {
      const double p = std::min(emi_p_value(permuted), e_to_p(permuted.front(), u));
      return {eumi_reject(permuted, alpha, u), p};
    }
    default:
      throw std::invalid_argument("combine_dependent: rule " + to_string(rule) +
                                  " is not a dependent-e-value rule");
  }
}

double mway_ustat(std::span<const double> es, std::size_t m) {
  const std::size_t K = es.size();
  if (m < 1 || m > K) throw std::invalid_argument("mway_ustat: m must lie in [1, K]");
  const double subsets = binomial(K, m);
  if (subsets > kMaxSubsets) {
    throw std::invalid_argument("mway_ustat: C(K, m) exceeds the 10^6 subset limit");
  }
  // Elementary symmetric polynomial e_m via the usual O(K m) recurrence.
  std::vector<double> esp(m + 1, 0.0);
  esp[0] = 1.0;
  for (double x : es) {
    for (std::size_t j = m; j >= 1; --j) esp[j] += x * esp[j - 1];
  }
  return esp[m] / subsets;
}

Decision mway_reject(std::span<const double> es, std::size_t m, double alpha,
                     RngStream& rng, CombinationRule rule, std::size_t max_draws) {
  require_alpha(alpha, "mway_reject");
  const std::size_t K = es.size();
  if (m < 1 || m > K) throw std::invalid_argument("mway_reject: m must lie in [1, K]");
  for (double e : es) {
    if (!(e >= 0.0)) throw std::invalid_argument("mway_reject: e-values must be >= 0");
  }

  switch (rule) {
    case CombinationRule::kMwayUstatMI:
      return mi_reject(mway_ustat(es, m), alpha);
    case CombinationRule::kMwayUstatUMI:
      return umi_reject(mway_ustat(es, m), alpha, uniform01(rng));
    case CombinationRule::kMwaySequentialEMI: {
      if (max_draws == 0) throw std::invalid_argument("mway_reject: max_draws must be >= 1");
      const double threshold = 1.0 / alpha;
      std::vector<std::size_t> index(K);
      RunningMean mean;
      for (std::size_t draw = 0; draw < max_draws; ++draw) {
        // Uniform size-m subset by a partial Fisher-Yates shuffle.
        for (std::size_t i = 0; i < K; ++i) index[i] = i;
        double product = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
          const auto j = i + static_cast<std::size_t>(uniform_index(rng, K - i));
          std::swap(index[i], index[j]);
          product *= es[index[i]];
        }
        if (mean.push(product) >= threshold) return Decision{true, mean.count(), std::nullopt};
      }
      return Decision::accept();
    }
    default:
      throw std::invalid_argument("mway_reject: rule " + to_string(rule) +
                                  " is not an m-way rule");
  }
}

}  // namespace randmarkov
