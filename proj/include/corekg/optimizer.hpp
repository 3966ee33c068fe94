#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace corekg {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Accumulated gradients for the rows touched by one batch, each entry as
// wide as a table row.
using RowGrads = std::unordered_map<std::int64_t, std::vector<double>>;

// Adaptive-moment optimizer over a row-partitioned table. Moments are kept
// for every row but only the rows present in the gradient map move; absent
// rows stay byte-identical, including their moments. The bias-correction
// step count is per table, bumped once per step() call.
class SparseAdam {
 public:
  SparseAdam(std::int64_t rows, std::int64_t width);

  void step(std::span<double> data, const RowGrads& grads, const AdamConfig& cfg);

  std::int64_t step_count() const { return t_; }

 private:
  std::vector<double> m_, v_;
  std::int64_t width_;
  std::int64_t t_ = 0;
};

// Dense variant for the regression matrices. One step() call may cover
// several parameter blocks that share the bias-correction counter.
class DenseAdam {
 public:
  explicit DenseAdam(std::size_t n);

  using Block = std::pair<std::span<double>, std::span<const double>>;  // (data, grad)
  void step(std::span<const Block> blocks, const AdamConfig& cfg);

  std::int64_t step_count() const { return t_; }

 private:
  std::vector<double> m_, v_;
  std::int64_t t_ = 0;
};

}  // namespace corekg
