#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace corekg {

// Seeds an independent engine for (seed, stream). All randomness in a run is
// drawn from streams derived this way, so runs are reproducible bit for bit.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

// Unbiased draw from [0, n). Hand-rolled because the distribution adapters in
// <random> are implementation-defined and would break cross-toolchain
// reproducibility.
std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t n);

// Uniform draw from [low, high) using the top 53 bits of the engine output.
double uniform_real(std::mt19937_64& rng, double low, double high);

// Draws a candidate from [0, n), retrying while is_positive(candidate) holds.
// After kNegativeRetries failed attempts the last draw is kept; a rare false
// negative is harmless for training.
inline constexpr int kNegativeRetries = 32;

template <class IsPositive>
std::int32_t sample_negative(std::mt19937_64& rng, std::int32_t n, IsPositive&& is_positive) {
  std::int32_t cand = 0;
  for (int attempt = 0; attempt < kNegativeRetries; ++attempt) {
    cand = static_cast<std::int32_t>(bounded_u64(rng, static_cast<std::uint64_t>(n)));
    if (!is_positive(cand)) break;
  }
  return cand;
}

// Cycles over a shuffled permutation of [0, n); a batch may straddle the
// reshuffle boundary, so every element appears once per epoch.
class BatchIterator {
 public:
  BatchIterator(std::size_t n, std::uint64_t seed, std::uint64_t stream);

  void fill(std::vector<std::size_t>& out, std::size_t batch_size);

 private:
  void reshuffle();

  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace corekg
