#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace randmarkov {

enum class IntervalMethod {
  kHoeffding,
  kRandomizedHoeffding,
  kChebyshev,
  kRandomizedChebyshev,
  kTruncatedChebyshev,
  kExactGaussian,
  kEmpiricalBernstein,
  kRandomizedEmpiricalBernstein,
  kBetting,
};

std::string to_string(IntervalMethod method);

/// Symmetric interval center +/- halfwidth, or an explicit EMPTY set.
///
/// EMPTY only arises from the randomized Hoeffding interval without a CLT
/// floor, and from a betting inversion that rejects every grid point.
class ConfidenceInterval {
 public:
  static ConfidenceInterval symmetric(double center, double halfwidth,
                                      IntervalMethod method,
                                      std::optional<double> u = std::nullopt);
  static ConfidenceInterval bounds(double lower, double upper, IntervalMethod method,
                                   std::optional<double> u = std::nullopt);
  static ConfidenceInterval empty(double center, IntervalMethod method,
                                  std::optional<double> u = std::nullopt);

  bool is_empty() const { return empty_; }
  double center() const { return center_; }
  double halfwidth() const { return halfwidth_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  /// upper - lower, or 0 for EMPTY.
  double width() const { return empty_ ? 0.0 : upper_ - lower_; }
  bool contains(double value) const {
    return !empty_ && lower_ <= value && value <= upper_;
  }
  IntervalMethod method() const { return method_; }
  std::optional<double> u_draw() const { return u_; }

  /// Intersection with [lo, hi]; center and halfwidth follow the new bounds.
  ConfidenceInterval clipped(double lo, double hi) const;

 private:
  double center_ = 0.0;
  double halfwidth_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  bool empty_ = false;
  IntervalMethod method_ = IntervalMethod::kHoeffding;
  std::optional<double> u_;
};

/// Hoeffding interval xbar +/- [sigma sqrt(2 L / n) + sigma log(u) / sqrt(2 n L)],
/// L = log(2/alpha). A negative randomized halfwidth gives EMPTY unless
/// `clt_floor`, which instead floors the halfwidth at sigma z_{1-alpha/2}/sqrt(n).
ConfidenceInterval hoeffding_ci(double xbar, double sigma, std::size_t n, double alpha,
                                std::optional<double> u = std::nullopt,
                                bool clt_floor = false);

/// One-sided Hoeffding threshold for xbar - mean at level alpha.
double hoeffding_threshold(double sigma, std::size_t n, double alpha,
                           std::optional<double> u = std::nullopt);

/// Chebyshev interval xbar +/- sigma/sqrt(alpha n), scaled by sqrt(u) or by
/// max(sqrt(u), floor) when `truncate_floor` is given.
ConfidenceInterval chebyshev_ci(double xbar, double sigma, std::size_t n, double alpha,
                                std::optional<double> u = std::nullopt,
                                std::optional<double> truncate_floor = std::nullopt);

/// Exact z interval xbar +/- sigma z_{1-alpha/2}/sqrt(n).
ConfidenceInterval gaussian_ci(double xbar, double sigma, std::size_t n, double alpha);

/// Cantelli threshold for X - EX: k sigma, or sqrt(u)(k sigma + sigma/k) - sigma/k.
double cantelli_threshold(double sigma, double k, std::optional<double> u = std::nullopt);
/// Tail probability 1/(k^2 + 1) carried by either Cantelli threshold.
double cantelli_bound(double k);

/// Bernstein threshold x = sqrt(2 sigma^2 log(1/alpha)) + 2 b log(1/alpha);
/// randomized: x + (b x + sigma^2) log(u) / x.
double bernstein_threshold(double sigma, double b, double alpha,
                           std::optional<double> u = std::nullopt);

/// psi(lambda) = -log(1 - lambda) - lambda on [0, 1).
double eb_psi(double lambda);

/// Running state of the predictable empirical-Bernstein recursions.
struct EmpiricalBernsteinState {
  std::size_t t = 0;
  double mu_hat = 0.5;      // (1/2 + sum X_i) / (t + 1)
  double sigma2_hat = 0.25; // (1/4 + sum (X_i - mu_hat_i)^2) / (t + 1)
  double sum_x = 0.0;
  double sum_sq_dev = 0.0;
  double sum_lambda = 0.0;
  double sum_lambda_x = 0.0;
  double sum_v_psi = 0.0;

  /// Bet for the next observation given the planned sample size n.
  double next_lambda(double alpha, std::size_t n) const;
  /// Folds one observation in, using the bet computed before seeing it.
  void update(double x, double lambda);
};

/// Empirical-Bernstein interval for the mean of [0,1]-valued data; `u` adds
/// log(u) to the numerator, `intersect` intersects the prefix intervals
/// (the last one carrying the randomization). Result is clipped to [0, 1].
ConfidenceInterval empirical_bernstein_ci(std::span<const double> data, double alpha,
                                          std::optional<double> u = std::nullopt,
                                          bool intersect = false);

}  // namespace randmarkov
