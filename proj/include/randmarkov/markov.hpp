#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace randmarkov {

class RngStream;

/// Outcome of a level-alpha rejection rule.
///
/// `crossing_index` is the 1-based prefix length at which a running average
/// (or the 0-based time index of a wealth path, for Ville monitors) first
/// reached the threshold; it is only set when `reject` is true.
struct Decision {
  bool reject = false;
  std::optional<std::size_t> crossing_index;
  std::optional<double> randomization_used;

  static Decision accept(std::optional<double> u = std::nullopt) {
    return Decision{false, std::nullopt, u};
  }
};

/// Incremental running mean m_t = m_{t-1} + (x_t - m_{t-1}) / t.
///
/// Every rule that compares an average against a threshold goes through this
/// accumulator so that the full-sample average used by averaging rules is the
/// bit-identical last prefix average seen by the exchangeable rules.
class RunningMean {
 public:
  double push(double x) {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
    return mean_;
  }
  double value() const { return mean_; }
  std::size_t count() const { return count_; }

 private:
  double mean_ = 0.0;
  std::size_t count_ = 0;
};

double running_mean_of(std::span<const double> xs);

/// Markov: reject iff x >= 1/alpha.
Decision mi_reject(double x, double alpha);

/// Uniformly-randomized Markov: reject iff x >= u/alpha, u in (0, 1].
Decision umi_reject(double x, double alpha, double u);

/// Additively-randomized Markov: reject iff x >= epsilon - epsilon*u.
Decision ami_reject(double x, double epsilon, double u);

/// Exchangeable Markov: reject at the first prefix t whose running average
/// reaches 1/alpha. Prefixes are scanned left to right, so any adaptively
/// chosen prefix of a stream is a valid input.
Decision emi_reject(std::span<const double> xs, double alpha);

/// Exchangeable + uniformly-randomized: reject iff xs[0] >= u/alpha or
/// some running average reaches 1/alpha.
Decision eumi_reject(std::span<const double> xs, double alpha, double u);

/// Randomized e-to-p calibrator min(u/e, 1); u defaults to 1 and e = 0 maps
/// to 1.
double e_to_p(double e, std::optional<double> u = std::nullopt);

/// Pair of nondecreasing maps with f(g(z)) >= z on the interval I = [lo, hi].
struct MonotonePair {
  std::function<double(double)> f;
  std::function<double(double)> g;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
};

/// Spot-checks monotonicity of f and g and f(g(z)) >= z on `samples` points
/// drawn from I (mapped through a uniform when I is unbounded).
bool check_monotone_pair(const MonotonePair& pair, RngStream& rng,
                         std::size_t samples = 1000);

/// g(u * f(x)): the randomized threshold whose exceedance probability is at
/// most E[f(X)] / f(x). Throws when u*f(x) falls outside I.
double randomized_tail_threshold(const MonotonePair& pair, double x, double u);

}  // namespace randmarkov
