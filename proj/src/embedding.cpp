#include "corekg/embedding.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "corekg/sampler.hpp"
#include "corekg/util.hpp"

namespace corekg {

EmbeddingTable::EmbeddingTable(Param param, std::int64_t rows, std::int64_t dim)
    : param_(param),
      rows_(rows),
      dim_(dim),
      width_(param == Param::kFreeComplex ? 2 * dim : dim),
      data_(static_cast<std::size_t>(rows * width_), 0.0) {}

void EmbeddingTable::read_complex(std::int64_t r, std::span<double> re,
                                  std::span<double> im) const {
  assert(re.size() == static_cast<std::size_t>(dim_) &&
         im.size() == static_cast<std::size_t>(dim_));
  const double* p = data_.data() + r * width_;
  if (param_ == Param::kFreeComplex) {
    for (std::int64_t i = 0; i < dim_; ++i) {
      re[i] = p[i];
      im[i] = p[dim_ + i];
    }
  } else {
    for (std::int64_t i = 0; i < dim_; ++i) {
      re[i] = std::cos(p[i]);
      im[i] = std::sin(p[i]);
    }
  }
}

void EmbeddingTable::init_uniform(std::mt19937_64& rng, double bound) {
  if (param_ == Param::kPhase) bound = std::numbers::pi;
  for (double& x : data_) x = uniform_real(rng, -bound, bound);
}

std::uint64_t EmbeddingTable::content_hash() const {
  return fnv1a64_bytes(data_.data(), data_.size() * sizeof(double));
}

}  // namespace corekg
