#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "randmarkov/markov.hpp"

namespace randmarkov {

/// Realized nonnegative process M_0, ..., M_n with its running supremum.
class WealthPath {
 public:
  WealthPath() = default;
  explicit WealthPath(std::vector<double> values);

  void push(double value);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t t) const { return values_[t]; }
  double back() const { return values_.back(); }
  double running_sup() const { return running_sup_; }

 private:
  std::vector<double> values_;
  double running_sup_ = 0.0;
};

/// Smallest 0-based t with M_t >= 1/alpha.
std::optional<std::size_t> ville_first_crossing(const WealthPath& path, double alpha);

/// Randomized Ville stopping rule: reject iff some M_t >= 1/alpha for t < tau,
/// or M_tau >= u/alpha. `u` must be drawn independently of the path.
Decision randomized_ville_reject(const WealthPath& path, std::size_t tau, double alpha,
                                 double u);

/// Running-average monitor for an exchangeable nonnegative stream. Rejects at
/// the first prefix whose average reaches 1/alpha and stays rejected; the
/// stream may be stopped at any adaptively chosen point.
class ReverseAverageMonitor {
 public:
  explicit ReverseAverageMonitor(double alpha);

  /// Consumes one observation and returns the decision so far.
  const Decision& push(double x);

  const Decision& decision() const { return decision_; }
  double average() const { return mean_.value(); }
  std::size_t count() const { return mean_.count(); }

 private:
  double threshold_;
  RunningMean mean_;
  Decision decision_;
};

}  // namespace randmarkov
