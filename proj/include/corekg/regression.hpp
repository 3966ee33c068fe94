#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace corekg {

// Linear map from the entity space C^k to the type space C^l, stored as four
// real k x l matrices (row-major, index [i*l + j]). Applied to e = er + i*ei:
//   Re(out)_j = sum_i a_rr[i,j]*er_i + a_ir[i,j]*ei_i
//   Im(out)_j = sum_i a_ri[i,j]*er_i + a_ii[i,j]*ei_i
// so the real and imaginary output parts each mix both input parts.
struct RegressionMap {
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::vector<double> a_rr, a_ir, a_ri, a_ii;

  RegressionMap() = default;
  RegressionMap(std::int64_t k_, std::int64_t l_);

  // Entries drawn from U[-1/sqrt(k), 1/sqrt(k)], matrix by matrix in
  // declaration order, so initial projections stay O(1).
  void init_uniform(std::mt19937_64& rng);

  void project(std::span<const double> er, std::span<const double> ei, std::span<double> pr,
               std::span<double> pi) const;

  std::uint64_t content_hash() const;
};

// Distance between the projected entity and a type embedding: the Euclidean
// norm of the real residual plus the Euclidean norm of the imaginary
// residual (two norms summed, not one norm of the stacked vector).
double regression_score(const RegressionMap& map, std::span<const double> er,
                        std::span<const double> ei, std::span<const double> tr,
                        std::span<const double> ti);

// Score given a precomputed projection; fills uh/vh with the unit residuals
// (zero where a residual norm is zero). This is the inner loop of both
// evaluation and the regression training phase, which share one projection
// across many candidate types.
double residual_score(std::span<const double> pr, std::span<const double> pi,
                      std::span<const double> tr, std::span<const double> ti,
                      std::span<double> uh, std::span<double> vh);

struct RegressionGrad {
  std::vector<double> d_er, d_ei;          // k
  std::vector<double> d_tr, d_ti;          // l
  std::vector<double> d_a_rr, d_a_ir;      // k*l
  std::vector<double> d_a_ri, d_a_ii;      // k*l
};

// Analytic gradients of regression_score with respect to everything. Zero
// residual norms contribute subgradient 0, consistent with the score
// kernels.
double regression_grad(const RegressionMap& map, std::span<const double> er,
                       std::span<const double> ei, std::span<const double> tr,
                       std::span<const double> ti, RegressionGrad& g);

}  // namespace corekg
