#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "randmarkov/markov.hpp"
#include "randmarkov/rng.hpp"

namespace randmarkov {

enum class CombinationRule {
  kAvMI,
  kUMI,
  kEMI,
  kEUMI,
  kMwayUstatMI,
  kMwayUstatUMI,
  kMwaySequentialEMI,
};

std::string to_string(CombinationRule rule);
CombinationRule combination_rule_from_string(std::string_view name);

struct CombinationResult {
  Decision decision;
  double p = 1.0;
};

/// Combines K arbitrarily dependent e-values with one of the four rules
/// AvMI, UMI, EMI, EUMI. All rules read the e-values in the order given by
/// `pi` (identity for exchangeable inputs, uniformly random otherwise), so
/// the AvMI average is exactly the last EMI prefix average.
CombinationResult combine_dependent(std::span<const double> es, double alpha, double u,
                                    const Permutation& pi, CombinationRule rule);

/// Average over all size-m subsets of the product of their e-values.
/// Throws when m is outside [1, K] or C(K, m) exceeds 10^6.
double mway_ustat(std::span<const double> es, std::size_t m);

/// m-way rules: U-statistic against 1/alpha (MI) or u/alpha (UMI, u drawn
/// from `rng`), or sequential sampling of size-m subsets with replacement,
/// rejecting at the first running-average crossing of 1/alpha.
Decision mway_reject(std::span<const double> es, std::size_t m, double alpha,
                     RngStream& rng, CombinationRule rule, std::size_t max_draws);

}  // namespace randmarkov
