#include "randmarkov/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace randmarkov {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
// Keeps substream keys disjoint from the additive splitmix sequence.
constexpr std::uint64_t kLabelSalt = 0xD1B54A32D192ED03ULL;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed)
    : state_(mix64(seed ^ kGolden)), origin_seed_(seed) {}

RngStream::RngStream(std::uint64_t state, std::uint64_t origin,
                     std::vector<std::uint64_t> labels)
    : state_(state), origin_seed_(origin), label_path_(std::move(labels)) {}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

RngStream RngStream::substream(std::uint64_t label) const {
  auto labels = label_path_;
  labels.push_back(label);
  const std::uint64_t key = mix64(label * kLabelSalt + kGolden);
  return RngStream(mix64(state_ ^ key), origin_seed_, std::move(labels));
}

RngStream make_rng(std::uint64_t seed) { return RngStream(seed); }

RngStream substream(const RngStream& parent, std::uint64_t label) {
  return parent.substream(label);
}

double uniform01(RngStream& rng) {
  // 53 random bits centred in their cell: never 0, never 1.
  const auto bits = rng.next_u64() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t uniform_index(RngStream& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = rng.next_u64();
  u128 m = static_cast<u128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = rng.next_u64();
      m = static_cast<u128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.mapping.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.mapping[i] = i;
  return p;
}

bool Permutation::is_bijection() const {
  std::vector<bool> seen(mapping.size(), false);
  for (std::size_t v : mapping) {
    if (v >= mapping.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation random_permutation(RngStream& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("random_permutation: n must be >= 1");
  Permutation p = Permutation::identity(n);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i + 1));
    std::swap(p.mapping[i], p.mapping[j]);
  }
  return p;
}

double sample_gaussian(RngStream& rng, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_gaussian: sigma must be > 0");
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mu + sigma * z;
}

double sample_gamma(RngStream& rng, double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost to shape + 1, then scale by U^(1/shape).
    const double g = sample_gamma(rng, shape + 1.0);
    return g * std::pow(uniform01(rng), 1.0 / shape);
  }
  // Marsaglia-Tsang.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_gaussian(rng, 0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(RngStream& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("sample_beta: a and b must be > 0");
  }
  const double x = sample_gamma(rng, a);
  const double y = sample_gamma(rng, b);
  return x / (x + y);
}

double sample_exponential(RngStream& rng, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("sample_exponential: rate must be > 0");
  return -std::log(uniform01(rng)) / rate;
}

std::vector<double> sample_ar1_toeplitz(RngStream& rng, std::size_t K,
                                        double rho, double mu) {
  if (K == 0) throw std::invalid_argument("sample_ar1_toeplitz: K must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("sample_ar1_toeplitz: rho must lie in [0, 1], got " +
                                std::to_string(rho));
  }
  const double innovation = std::sqrt(1.0 - rho * rho);
  std::vector<double> out(K);
  double prev = sample_gaussian(rng, 0.0, 1.0);
  out[0] = mu + prev;
  for (std::size_t i = 1; i < K; ++i) {
    prev = rho * prev + innovation * sample_gaussian(rng, 0.0, 1.0);
    out[i] = mu + prev;
  }
  return out;
}

double rank_randomizer(double x_last, std::span<const double> bag) {
  if (bag.empty()) throw std::invalid_argument("rank_randomizer: bag is empty");
  const auto count = std::count_if(bag.begin(), bag.end(),
                                   [x_last](double v) { return v <= x_last; });
  if (count == 0) {
    throw std::invalid_argument("rank_randomizer: x_last is not an element of the bag");
  }
  return static_cast<double>(count) / static_cast<double>(bag.size());
}

}  // namespace randmarkov
