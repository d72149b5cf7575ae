#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "randmarkov/markov.hpp"
#include "randmarkov/rng.hpp"

namespace randmarkov {

/// Means of the fixed-weight mixture w1 N(mu1, 1) + (1 - w1) N(mu2, 1).
struct MixtureFit {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct MixtureModel {
  double w1 = 0.25;
  double tol = 1e-8;
  std::size_t max_iter = 500;
};

double mixture_loglik(std::span<const double> data, double w1, double mu1, double mu2);
double gaussian_loglik(std::span<const double> data, double mu);

/// EM for the two means from a single starting point. Stops once the
/// log-likelihood changes by less than `tol` or after `max_iter` iterations.
/// When `trace` is given it receives the log-likelihood at every iterate.
MixtureFit em_fit_two_component(std::span<const double> data, double w1, double tol,
                                std::size_t max_iter, std::pair<double, double> init,
                                std::vector<double>* trace = nullptr);

/// Two-start EM: (q25, q75) and (mean - sd, mean + sd); keeps the better fit.
MixtureFit fit_two_component(std::span<const double> data, const MixtureModel& model);

/// One split likelihood-ratio e-value.
struct SplitEValue {
  double value = 0.0;
  double log_value = 0.0;
  std::size_t split_id = 0;
  std::size_t n0 = 0;  // null-evaluation split D_0
  std::size_t n1 = 0;  // fitting split D_1
  /// Rank of the last (by original index) D_1 point within D_1; usable in
  /// place of an external uniform under continuous i.i.d. nulls.
  double rank_u = 1.0;
};

/// sum over D_0 of log qhat(y) - log phi(y; mean(D_0), 1).
double split_log_ratio(const MixtureFit& fit, double w1, std::span<const double> d0);

/// Randomly partitions the data, fits the mixture on D_1 and evaluates the
/// likelihood ratio against the single-Gaussian null MLE on D_0.
SplitEValue split_lrt(std::span<const double> data, double split_frac, RngStream& rng,
                      const MixtureModel& model = {}, std::size_t split_id = 0);

enum class UiRule { kUI, kUMI_UI, kSUI, kUMI_SUI, kEMI_SUI, kEUMI_SUI };

std::string to_string(UiRule rule);
UiRule ui_rule_from_string(std::string_view name);

/// UI and UMI_UI take exactly one e-value; the subsampled rules take B >= 1.
Decision ui_reject(std::span<const double> es, double alpha, double u, UiRule rule);

/// -2 log(lambda) for H0: mu1 = mu2 against the two-mean mixture; >= 0.
double lrt_statistic(std::span<const double> data, const MixtureModel& model = {});

/// Rejects when -2 log(lambda) exceeds the (1 - 2 alpha) chi-square(1) quantile.
Decision goffinet_lrt_reject(std::span<const double> data, double alpha,
                             const MixtureModel& model = {});

}  // namespace randmarkov
