#include "randmarkov/ville.hpp"

#include <algorithm>
#include <stdexcept>

namespace randmarkov {

namespace {

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(where) + ": alpha must lie in (0, 1)");
  }
}

}  // namespace

WealthPath::WealthPath(std::vector<double> values) {
  values_.reserve(values.size());
  for (double v : values) push(v);
}

void WealthPath::push(double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("WealthPath: values must be nonnegative");
  running_sup_ = values_.empty() ? value : std::max(running_sup_, value);
  values_.push_back(value);
}

std::optional<std::size_t> ville_first_crossing(const WealthPath& path, double alpha) {
  require_alpha(alpha, "ville_first_crossing");
  const double threshold = 1.0 / alpha;
  if (path.running_sup() < threshold) return std::nullopt;
  const auto values = path.values();
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t] >= threshold) return t;
  }
  return std::nullopt;
}

Decision randomized_ville_reject(const WealthPath& path, std::size_t tau, double alpha,
                                 double u) {
  require_alpha(alpha, "randomized_ville_reject");
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::invalid_argument("randomized_ville_reject: u must lie in (0, 1]");
  }
  if (tau >= path.size()) {
    throw std::invalid_argument("randomized_ville_reject: tau is out of range");
  }
  const double threshold = 1.0 / alpha;
  const auto values = path.values();
  for (std::size_t t = 0; t < tau; ++t) {
    if (values[t] >= threshold) return Decision{true, t, u};
  }
  if (values[tau] >= u / alpha) return Decision{true, tau, u};
  return Decision::accept(u);
}

ReverseAverageMonitor::ReverseAverageMonitor(double alpha) {
  require_alpha(alpha, "ReverseAverageMonitor");
  threshold_ = 1.0 / alpha;
}

const Decision& ReverseAverageMonitor::push(double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("ReverseAverageMonitor: observations must be nonnegative");
  }
  const double avg = mean_.push(x);
  if (!decision_.reject && avg >= threshold_) {
    decision_.reject = true;
    decision_.crossing_index = mean_.count();
  }
  return decision_;
}

}  // namespace randmarkov
