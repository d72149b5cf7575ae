#include "randmarkov/universal_inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "randmarkov/normal.hpp"

namespace randmarkov {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void require_weight(double w1) {
  if (!(w1 > 0.0 && w1 < 1.0)) throw std::invalid_argument("mixture weight must lie in (0, 1)");
}

double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

struct EStep {
  double loglik;
  double resp1;     // sum of component-1 responsibilities
  double resp1_y;   // sum of r_i y_i
};

// One pass: log-likelihood at (mu1, mu2) plus the sufficient statistics for
// the next M-step.
EStep e_step(std::span<const double> data, double log_w1, double log_w2, double mu1,
             double mu2) {
  double ll = 0.0;
  double s1 = 0.0;
  double sy1 = 0.0;
  for (double y : data) {
    const double d1 = y - mu1;
    const double d2 = y - mu2;
    const double a = log_w1 - 0.5 * d1 * d1;
    const double b = log_w2 - 0.5 * d2 * d2;
    const double diff = b - a;
    const double e = std::exp(-std::abs(diff));
    ll += std::max(a, b) + std::log1p(e);
    const double r1 = diff > 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
    s1 += r1;
    sy1 += r1 * y;
  }
  return {ll - kHalfLog2Pi * static_cast<double>(data.size()), s1, sy1};
}

}  // namespace

double mixture_loglik(std::span<const double> data, double w1, double mu1, double mu2) {
  require_weight(w1);
  return e_step(data, std::log(w1), std::log1p(-w1), mu1, mu2).loglik;
}

double gaussian_loglik(std::span<const double> data, double mu) {
  double ss = 0.0;
  for (double y : data) ss += (y - mu) * (y - mu);
  return -0.5 * ss - kHalfLog2Pi * static_cast<double>(data.size());
}

MixtureFit em_fit_two_component(std::span<const double> data, double w1, double tol,
                                std::size_t max_iter, std::pair<double, double> init,
                                std::vector<double>* trace) {
  if (data.empty()) throw std::invalid_argument("em_fit_two_component: empty data");
  require_weight(w1);
  if (!(tol > 0.0)) throw std::invalid_argument("em_fit_two_component: tol must be > 0");
  if (max_iter == 0) throw std::invalid_argument("em_fit_two_component: max_iter must be >= 1");

  const double log_w1 = std::log(w1);
  const double log_w2 = std::log1p(-w1);
  const auto n = static_cast<double>(data.size());
  double sum_y = 0.0;
  for (double y : data) sum_y += y;

  MixtureFit fit;
  fit.mu1 = init.first;
  fit.mu2 = init.second;
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    const EStep step = e_step(data, log_w1, log_w2, fit.mu1, fit.mu2);
    if (trace) trace->push_back(step.loglik);
    fit.loglik = step.loglik;
    fit.iterations = iter;
    if (std::abs(step.loglik - previous) < tol) {
      fit.converged = true;
      return fit;
    }
    previous = step.loglik;
    // A component with vanishing responsibility keeps its mean.
    if (step.resp1 > 1e-300) fit.mu1 = step.resp1_y / step.resp1;
    const double resp2 = n - step.resp1;
    if (resp2 > 1e-300) fit.mu2 = (sum_y - step.resp1_y) / resp2;
  }
  // Out of iterations: report the last evaluated iterate.
  fit.loglik = mixture_loglik(data, w1, fit.mu1, fit.mu2);
  if (trace) trace->push_back(fit.loglik);
  return fit;
}

MixtureFit fit_two_component(std::span<const double> data, const MixtureModel& model) {
  if (data.empty()) throw std::invalid_argument("fit_two_component: empty data");
  const std::vector<double> values(data.begin(), data.end());
  const double mean = mean_of(data);
  double ss = 0.0;
  for (double y : data) ss += (y - mean) * (y - mean);
  const double sd = data.size() > 1 ? std::sqrt(ss / static_cast<double>(data.size() - 1)) : 1.0;

  const MixtureFit by_quantile =
      em_fit_two_component(data, model.w1, model.tol, model.max_iter,
                           {quantile(values, 0.25), quantile(values, 0.75)});
  const MixtureFit by_moments = em_fit_two_component(data, model.w1, model.tol,
                                                     model.max_iter, {mean - sd, mean + sd});
  return by_moments.loglik > by_quantile.loglik ? by_moments : by_quantile;
}

double split_log_ratio(const MixtureFit& fit, double w1, std::span<const double> d0) {
  if (d0.empty()) throw std::invalid_argument("split_log_ratio: empty evaluation split");
  return mixture_loglik(d0, w1, fit.mu1, fit.mu2) - gaussian_loglik(d0, mean_of(d0));
}

SplitEValue split_lrt(std::span<const double> data, double split_frac, RngStream& rng,
                      const MixtureModel& model, std::size_t split_id) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("split_lrt: need at least two observations");
  if (!(split_frac > 0.0 && split_frac < 1.0)) {
    throw std::invalid_argument("split_lrt: split_frac must lie in (0, 1)");
  }
  const auto n1 = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(split_frac * static_cast<double>(n))), 1, n - 1);

  const Permutation order = random_permutation(rng, n);
  std::vector<double> fit_set;
  std::vector<double> eval_set;
  fit_set.reserve(n1);
  eval_set.reserve(n - n1);
  std::size_t last_fit_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n1) {
      fit_set.push_back(data[order[i]]);
      last_fit_index = std::max(last_fit_index, order[i]);
    } else {
      eval_set.push_back(data[order[i]]);
    }
  }

  const MixtureFit fit = fit_two_component(fit_set, model);
  SplitEValue out;
  out.log_value = split_log_ratio(fit, model.w1, eval_set);
  out.value = std::exp(out.log_value);
  out.split_id = split_id;
  out.n0 = eval_set.size();
  out.n1 = fit_set.size();
  out.rank_u = rank_randomizer(data[last_fit_index], fit_set);
  return out;
}

std::string to_string(UiRule rule) {
  switch (rule) {
    case UiRule::kUI: return "UI";
    case UiRule::kUMI_UI: return "UMI_UI";
    case UiRule::kSUI: return "SUI";
    case UiRule::kUMI_SUI: return "UMI_SUI";
    case UiRule::kEMI_SUI: return "EMI_SUI";
    case UiRule::kEUMI_SUI: return "EUMI_SUI";
  }
  return "unknown";
}

UiRule ui_rule_from_string(std::string_view name) {
  for (auto rule : {UiRule::kUI, UiRule::kUMI_UI, UiRule::kSUI, UiRule::kUMI_SUI,
                    UiRule::kEMI_SUI, UiRule::kEUMI_SUI}) {
    if (to_string(rule) == name) return rule;
  }
  throw std::invalid_argument("unknown universal-inference rule: " + std::string(name));
}

Decision ui_reject(std::span<const double> es, double alpha, double u, UiRule rule) {
  if (es.empty()) throw std::invalid_argument("ui_reject: no e-values");
  const bool single = rule == UiRule::kUI || rule == UiRule::kUMI_UI;
  if (single && es.size() != 1) {
    throw std::invalid_argument("ui_reject: " + to_string(rule) + " takes exactly one e-value");
  }
  switch (rule) {
    case UiRule::kUI: return mi_reject(es.front(), alpha);
    case UiRule::kUMI_UI: return umi_reject(es.front(), alpha, u);
    case UiRule::kSUI: return mi_reject(running_mean_of(es), alpha);
    case UiRule::kUMI_SUI: return umi_reject(running_mean_of(es), alpha, u);
    case UiRule::kEMI_SUI: return emi_reject(es, alpha);
    case UiRule::kEUMI_SUI: return eumi_reject(es, alpha, u);
  }
  throw std::invalid_argument("ui_reject: unknown rule");
}

double lrt_statistic(std::span<const double> data, const MixtureModel& model) {
  if (data.size() < 2) throw std::invalid_argument("lrt_statistic: need at least two observations");
  const double null_ll = gaussian_loglik(data, mean_of(data));
  const MixtureFit alt = fit_two_component(data, model);
  // The alternative nests the null, so its maximum is at least the null's.
  return 2.0 * std::max(alt.loglik - null_ll, 0.0);
}

Decision goffinet_lrt_reject(std::span<const double> data, double alpha,
                             const MixtureModel& model) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("goffinet_lrt_reject: alpha must lie in (0, 1/2)");
  }
  return Decision{lrt_statistic(data, model) > chi2_1_quantile(1.0 - 2.0 * alpha),
                  std::nullopt, std::nullopt};
}

}  // namespace randmarkov
