#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace corekg {

// Storage layout of one table row.
//   kFreeComplex: [re(0..dim) | im(0..dim)], row width 2*dim.
//   kPhase:       [theta(0..dim)], row width dim; the complex value is
//                 (cos theta, sin theta) and is materialized on read.
enum class Param : std::uint8_t { kFreeComplex = 0, kPhase = 1 };

class EmbeddingTable {
 public:
  EmbeddingTable(Param param, std::int64_t rows, std::int64_t dim);

  Param param() const { return param_; }
  std::int64_t rows() const { return rows_; }
  std::int64_t dim() const { return dim_; }
  std::int64_t row_width() const { return width_; }

  std::span<double> row(std::int64_t r) {
    return {data_.data() + r * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(std::int64_t r) const {
    return {data_.data() + r * width_, static_cast<std::size_t>(width_)};
  }

  // Fills re/im (each dim wide) with the complex value of row r.
  void read_complex(std::int64_t r, std::span<double> re, std::span<double> im) const;

  // Free rows are drawn from U[-bound, bound] per component; phase rows from
  // U[-pi, pi]. Elements are drawn in storage order so initialization is a
  // pure function of the engine state.
  void init_uniform(std::mt19937_64& rng, double bound);

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  // FNV over the raw bytes; used to verify that a table was left untouched.
  std::uint64_t content_hash() const;

 private:
  Param param_;
  std::int64_t rows_;
  std::int64_t dim_;
  std::int64_t width_;
  std::vector<double> data_;
};

}  // namespace corekg
