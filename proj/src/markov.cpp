#include "randmarkov/markov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "randmarkov/rng.hpp"

namespace randmarkov {

namespace {

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
}

void require_u(double u, const char* where) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": u must lie in (0, 1], got " +
                                std::to_string(u));
  }
}

void require_nonnegative(double x, const char* where) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument(std::string(where) + ": value must be nonnegative");
  }
}

// First 1-based prefix whose running average reaches `threshold`.
std::optional<std::size_t> first_average_crossing(std::span<const double> xs,
                                                  double threshold) {
  RunningMean mean;
  for (double x : xs) {
    require_nonnegative(x, "running average");
    if (mean.push(x) >= threshold) return mean.count();
  }
  return std::nullopt;
}

}  // namespace

double running_mean_of(std::span<const double> xs) {
  RunningMean mean;
  for (double x : xs) mean.push(x);
  return mean.value();
}

Decision mi_reject(double x, double alpha) {
  require_alpha(alpha, "mi_reject");
  require_nonnegative(x, "mi_reject");
  return Decision{x >= 1.0 / alpha, std::nullopt, std::nullopt};
}

Decision umi_reject(double x, double alpha, double u) {
  require_alpha(alpha, "umi_reject");
  require_u(u, "umi_reject");
  require_nonnegative(x, "umi_reject");
  return Decision{x >= u / alpha, std::nullopt, u};
}

Decision ami_reject(double x, double epsilon, double u) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("ami_reject: epsilon must be > 0");
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("ami_reject: u must lie in (0, 1)");
  require_nonnegative(x, "ami_reject");
  const double shift = epsilon * u;
  return Decision{x >= epsilon - shift, std::nullopt, u};
}

Decision emi_reject(std::span<const double> xs, double alpha) {
  require_alpha(alpha, "emi_reject");
  if (xs.empty()) throw std::invalid_argument("emi_reject: empty sequence");
  const auto crossing = first_average_crossing(xs, 1.0 / alpha);
  return Decision{crossing.has_value(), crossing, std::nullopt};
}

Decision eumi_reject(std::span<const double> xs, double alpha, double u) {
  require_alpha(alpha, "eumi_reject");
  require_u(u, "eumi_reject");
  if (xs.empty()) throw std::invalid_argument("eumi_reject: empty sequence");
  require_nonnegative(xs.front(), "eumi_reject");
  if (xs.front() >= u / alpha) return Decision{true, std::nullopt, u};
  const auto crossing = first_average_crossing(xs, 1.0 / alpha);
  return Decision{crossing.has_value(), crossing, u};
}

double e_to_p(double e, std::optional<double> u) {
  require_nonnegative(e, "e_to_p");
  const double scale = u.value_or(1.0);
  require_u(scale, "e_to_p");
  if (e == 0.0) return 1.0;
  return std::min(scale / e, 1.0);
}

bool check_monotone_pair(const MonotonePair& pair, RngStream& rng, std::size_t samples) {
  if (!(pair.domain_lo <= pair.domain_hi)) return false;
  const bool bounded = std::isfinite(pair.domain_hi);
  auto draw = [&] {
    const double v = uniform01(rng);
    if (bounded) return pair.domain_lo + v * (pair.domain_hi - pair.domain_lo);
    // Heavy-tailed spread over [lo, inf).
    return pair.domain_lo + v / (1.0 - v);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    double z1 = draw();
    double z2 = draw();
    if (z1 > z2) std::swap(z1, z2);
    const double g1 = pair.g(z1);
    const double g2 = pair.g(z2);
    if (g1 > g2) return false;
    if (pair.f(g1) > pair.f(g2)) return false;
    // Relative slack for rounding in f(g(z)).
    const double tol = 1e-12 * std::max(1.0, std::abs(z1));
    if (pair.f(g1) < z1 - tol) return false;
  }
  return true;
}

double randomized_tail_threshold(const MonotonePair& pair, double x, double u) {
  require_u(u, "randomized_tail_threshold");
  const double fx = pair.f(x);
  if (!(fx > 0.0)) throw std::invalid_argument("randomized_tail_threshold: f(x) must be > 0");
  const double z = u * fx;
  if (z < pair.domain_lo || z > pair.domain_hi) {
    throw std::invalid_argument("randomized_tail_threshold: u*f(x) lies outside the domain of g");
  }
  return pair.g(z);
}

}  // namespace randmarkov
