#include "corekg/sampler.hpp"

#include <stdexcept>

#include "corekg/util.hpp"

namespace corekg {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bounded_u64: empty range");
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

double uniform_real(std::mt19937_64& rng, double low, double high) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return low + u * (high - low);
}

BatchIterator::BatchIterator(std::size_t n, std::uint64_t seed, std::uint64_t stream)
    : rng_(make_rng(seed, stream)) {
  if (n == 0) throw std::invalid_argument("BatchIterator: empty collection");
  order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) order_[i] = i;
  reshuffle();
}

void BatchIterator::reshuffle() {
  // Fisher-Yates with our own bounded draw, for the same reason as above.
  for (std::size_t i = order_.size() - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(bounded_u64(rng_, i + 1));
    std::swap(order_[i], order_[j]);
  }
  pos_ = 0;
}

void BatchIterator::fill(std::vector<std::size_t>& out, std::size_t batch_size) {
  out.clear();
  out.reserve(batch_size);
  while (out.size() < batch_size) {
    if (pos_ == order_.size()) reshuffle();
    out.push_back(order_[pos_++]);
  }
}

}  // namespace corekg
