#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace randmarkov {

/// Deterministic 64-bit random stream (splitmix64 core).
///
/// Two streams built from the same seed and the same sequence of substream
/// labels produce identical output. Streams are single-owner values: copy a
/// stream to fork it, derive a substream to get an independent child.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();

  std::uint64_t state() const { return state_; }
  std::uint64_t origin_seed() const { return origin_seed_; }
  const std::vector<std::uint64_t>& label_path() const { return label_path_; }

  /// Child stream keyed by `label`; does not advance this stream.
  RngStream substream(std::uint64_t label) const;

 private:
  RngStream(std::uint64_t state, std::uint64_t origin,
            std::vector<std::uint64_t> labels);

  std::uint64_t state_;
  std::uint64_t origin_seed_;
  std::vector<std::uint64_t> label_path_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

RngStream make_rng(std::uint64_t seed);
RngStream substream(const RngStream& parent, std::uint64_t label);

/// Uniform draw strictly inside (0, 1).
double uniform01(RngStream& rng);

/// Unbiased integer in [0, n). Requires n >= 1.
std::uint64_t uniform_index(RngStream& rng, std::uint64_t n);

/// Bijection on {0, ..., n-1}; `mapping[i]` is the image of i.
struct Permutation {
  std::vector<std::size_t> mapping;

  std::size_t size() const { return mapping.size(); }
  std::size_t operator[](std::size_t i) const { return mapping[i]; }

  static Permutation identity(std::size_t n);
  bool is_bijection() const;

  /// out[i] = values[mapping[i]].
  template <typename T>
  std::vector<T> apply(std::span<const T> values) const {
    std::vector<T> out;
    out.reserve(mapping.size());
    for (std::size_t idx : mapping) out.push_back(values[idx]);
    return out;
  }
};

/// Uniform over all n! permutations (Fisher-Yates). Throws for n = 0.
Permutation random_permutation(RngStream& rng, std::size_t n);

double sample_gaussian(RngStream& rng, double mu, double sigma);
double sample_gamma(RngStream& rng, double shape);
double sample_beta(RngStream& rng, double a, double b);
double sample_exponential(RngStream& rng, double rate = 1.0);

/// Gaussian vector with mean mu and Cov(X_i, X_j) = rho^|i-j|, via the
/// AR(1) recursion X_i = rho X_{i-1} + sqrt(1 - rho^2) Z_i.
std::vector<double> sample_ar1_toeplitz(RngStream& rng, std::size_t K,
                                        double rho, double mu);

/// Fraction of `bag` that is <= x_last; lies on the grid {1/n, ..., 1} when
/// x_last is an element of the bag.
double rank_randomizer(double x_last, std::span<const double> bag);

}  // namespace randmarkov
