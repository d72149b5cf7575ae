#include "randmarkov/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randmarkov/normal.hpp"

namespace randmarkov {

namespace {

void require_common(double sigma, std::size_t n, double alpha, const char* where) {
  if (!(sigma > 0.0)) throw std::invalid_argument(std::string(where) + ": sigma must be > 0");
  if (n == 0) throw std::invalid_argument(std::string(where) + ": n must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": alpha must lie in (0, 1)");
  }
}

void require_optional_u(std::optional<double> u, const char* where) {
  if (u && !(*u > 0.0 && *u <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": u must lie in (0, 1]");
  }
}

}  // namespace

std::string to_string(IntervalMethod method) {
  switch (method) {
    case IntervalMethod::kHoeffding: return "hoeffding";
    case IntervalMethod::kRandomizedHoeffding: return "rand_hoeffding";
    case IntervalMethod::kChebyshev: return "chebyshev";
    case IntervalMethod::kRandomizedChebyshev: return "rand_chebyshev";
    case IntervalMethod::kTruncatedChebyshev: return "trunc_chebyshev";
    case IntervalMethod::kExactGaussian: return "exact";
    case IntervalMethod::kEmpiricalBernstein: return "emp_bernstein";
    case IntervalMethod::kRandomizedEmpiricalBernstein: return "rand_emp_bernstein";
    case IntervalMethod::kBetting: return "betting";
  }
  return "unknown";
}

ConfidenceInterval ConfidenceInterval::symmetric(double center, double halfwidth,
                                                 IntervalMethod method,
                                                 std::optional<double> u) {
  if (!(halfwidth >= 0.0)) {
    throw std::invalid_argument("ConfidenceInterval: halfwidth must be nonnegative");
  }
  ConfidenceInterval ci;
  ci.center_ = center;
  ci.halfwidth_ = halfwidth;
  ci.lower_ = center - halfwidth;
  ci.upper_ = center + halfwidth;
  ci.method_ = method;
  ci.u_ = u;
  return ci;
}

ConfidenceInterval ConfidenceInterval::bounds(double lower, double upper,
                                              IntervalMethod method,
                                              std::optional<double> u) {
  if (!(lower <= upper)) throw std::invalid_argument("ConfidenceInterval: lower > upper");
  ConfidenceInterval ci;
  ci.center_ = 0.5 * (lower + upper);
  ci.halfwidth_ = 0.5 * (upper - lower);
  ci.lower_ = lower;
  ci.upper_ = upper;
  ci.method_ = method;
  ci.u_ = u;
  return ci;
}

ConfidenceInterval ConfidenceInterval::empty(double center, IntervalMethod method,
                                             std::optional<double> u) {
  ConfidenceInterval ci;
  ci.center_ = center;
  ci.lower_ = center;
  ci.upper_ = center;
  ci.empty_ = true;
  ci.method_ = method;
  ci.u_ = u;
  return ci;
}

ConfidenceInterval ConfidenceInterval::clipped(double lo, double hi) const {
  if (empty_) return *this;
  const double new_lower = std::clamp(lower_, lo, hi);
  const double new_upper = std::clamp(upper_, lo, hi);
  return bounds(new_lower, new_upper, method_, u_);
}

double hoeffding_threshold(double sigma, std::size_t n, double alpha,
                           std::optional<double> u) {
  require_common(sigma, n, alpha, "hoeffding_threshold");
  require_optional_u(u, "hoeffding_threshold");
  const double log_term = std::log(1.0 / alpha);
  const auto nd = static_cast<double>(n);
  double threshold = sigma * std::sqrt(2.0 * log_term / nd);
  if (u) threshold += sigma * std::log(*u) / std::sqrt(2.0 * nd * log_term);
  return threshold;
}

ConfidenceInterval hoeffding_ci(double xbar, double sigma, std::size_t n, double alpha,
                                std::optional<double> u, bool clt_floor) {
  require_common(sigma, n, alpha, "hoeffding_ci");
  require_optional_u(u, "hoeffding_ci");
  const double log_term = std::log(2.0 / alpha);
  const auto nd = static_cast<double>(n);
  const double base = sigma * std::sqrt(2.0 * log_term / nd);
  if (!u) return ConfidenceInterval::symmetric(xbar, base, IntervalMethod::kHoeffding);

  double halfwidth = base + sigma * std::log(*u) / std::sqrt(2.0 * nd * log_term);
  if (clt_floor) {
    const double clt = sigma * normal_quantile(1.0 - alpha / 2.0) / std::sqrt(nd);
    halfwidth = std::max(halfwidth, clt);
  }
  if (halfwidth < 0.0) {
    return ConfidenceInterval::empty(xbar, IntervalMethod::kRandomizedHoeffding, u);
  }
  return ConfidenceInterval::symmetric(xbar, halfwidth, IntervalMethod::kRandomizedHoeffding, u);
}

ConfidenceInterval chebyshev_ci(double xbar, double sigma, std::size_t n, double alpha,
                                std::optional<double> u,
                                std::optional<double> truncate_floor) {
  require_common(sigma, n, alpha, "chebyshev_ci");
  require_optional_u(u, "chebyshev_ci");
  if (truncate_floor && !(*truncate_floor > 0.0 && *truncate_floor < 1.0)) {
    throw std::invalid_argument("chebyshev_ci: truncate_floor must lie in (0, 1)");
  }
  const double base = sigma / std::sqrt(alpha * static_cast<double>(n));
  if (truncate_floor) {
    const double scale = std::max(std::sqrt(u.value_or(1.0)), *truncate_floor);
    return ConfidenceInterval::symmetric(xbar, base * scale,
                                         IntervalMethod::kTruncatedChebyshev, u);
  }
  if (u) {
    return ConfidenceInterval::symmetric(xbar, base * std::sqrt(*u),
                                         IntervalMethod::kRandomizedChebyshev, u);
  }
  return ConfidenceInterval::symmetric(xbar, base, IntervalMethod::kChebyshev);
}

ConfidenceInterval gaussian_ci(double xbar, double sigma, std::size_t n, double alpha) {
  require_common(sigma, n, alpha, "gaussian_ci");
  const double halfwidth =
      sigma * normal_quantile(1.0 - alpha / 2.0) / std::sqrt(static_cast<double>(n));
  return ConfidenceInterval::symmetric(xbar, halfwidth, IntervalMethod::kExactGaussian);
}

double cantelli_threshold(double sigma, double k, std::optional<double> u) {
  if (!(sigma > 0.0) || !(k > 0.0)) {
    throw std::invalid_argument("cantelli_threshold: sigma and k must be > 0");
  }
  require_optional_u(u, "cantelli_threshold");
  if (!u) return k * sigma;
  return std::sqrt(*u) * (k * sigma + sigma / k) - sigma / k;
}

double cantelli_bound(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("cantelli_bound: k must be > 0");
  return 1.0 / (k * k + 1.0);
}

double bernstein_threshold(double sigma, double b, double alpha, std::optional<double> u) {
  if (!(sigma > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("bernstein_threshold: sigma and b must be > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("bernstein_threshold: alpha must lie in (0, 1)");
  }
  require_optional_u(u, "bernstein_threshold");
  const double log_term = std::log(1.0 / alpha);
  const double sigma2 = sigma * sigma;
  const double x = std::sqrt(2.0 * sigma2 * log_term) + 2.0 * b * log_term;
  if (!u) return x;
  // Chernoff parameter lambda = x / (b x + sigma^2) gives the bound
  // exp(-x^2 / (2 (sigma^2 + b x))) <= alpha at this x.
  return (b * x + sigma2) * std::log(*u) / x + x;
}

double eb_psi(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("eb_psi: lambda must lie in [0, 1)");
  }
  return -std::log1p(-lambda) - lambda;
}

double EmpiricalBernsteinState::next_lambda(double alpha, std::size_t n) const {
  const double raw =
      std::sqrt(2.0 * std::log(2.0 / alpha) / (sigma2_hat * static_cast<double>(n)));
  return std::min(raw, 0.5);
}

void EmpiricalBernsteinState::update(double x, double lambda) {
  const double v = (x - mu_hat) * (x - mu_hat);
  sum_lambda += lambda;
  sum_lambda_x += lambda * x;
  sum_v_psi += v * eb_psi(lambda);
  ++t;
  sum_x += x;
  const auto denom = static_cast<double>(t + 1);
  mu_hat = (0.5 + sum_x) / denom;
  sum_sq_dev += (x - mu_hat) * (x - mu_hat);
  sigma2_hat = (0.25 + sum_sq_dev) / denom;
}

ConfidenceInterval empirical_bernstein_ci(std::span<const double> data, double alpha,
                                          std::optional<double> u, bool intersect) {
  if (data.empty()) throw std::invalid_argument("empirical_bernstein_ci: empty data");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("empirical_bernstein_ci: alpha must lie in (0, 1)");
  }
  require_optional_u(u, "empirical_bernstein_ci");
  for (double x : data) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("empirical_bernstein_ci: data must lie in [0, 1]");
    }
  }

  const std::size_t n = data.size();
  const double log_term = std::log(2.0 / alpha);
  const IntervalMethod method =
      u ? IntervalMethod::kRandomizedEmpiricalBernstein : IntervalMethod::kEmpiricalBernstein;

  EmpiricalBernsteinState state;
  double lower = 0.0;
  double upper = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.update(data[i], state.next_lambda(alpha, n));
    const bool last = i + 1 == n;
    if (!intersect && !last) continue;
    const double center = state.sum_lambda_x / state.sum_lambda;
    double numerator = log_term + state.sum_v_psi;
    // Only the reported (final) interval may carry the randomization.
    if (last && u) numerator += std::log(*u);
    const double halfwidth = std::max(numerator / state.sum_lambda, 0.0);
    lower = std::max(lower, center - halfwidth);
    upper = std::min(upper, center + halfwidth);
  }

  if (lower > upper) {
    // Disjoint prefix intervals: any superset of the empty set keeps coverage.
    const double mid = 0.5 * (lower + upper);
    return ConfidenceInterval::bounds(mid, mid, method, u);
  }
  return ConfidenceInterval::bounds(lower, upper, method, u);
}

}  // namespace randmarkov
