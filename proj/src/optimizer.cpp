#include "corekg/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace corekg {

SparseAdam::SparseAdam(std::int64_t rows, std::int64_t width)
    : m_(static_cast<std::size_t>(rows * width), 0.0),
      v_(static_cast<std::size_t>(rows * width), 0.0),
      width_(width) {}

void SparseAdam::step(std::span<double> data, const RowGrads& grads, const AdamConfig& cfg) {
  if (data.size() != m_.size()) throw std::invalid_argument("SparseAdam: size mismatch");
  ++t_;
  double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t_));
  double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t_));
  for (const auto& [row, g] : grads) {
    double* x = data.data() + row * width_;
    double* m = m_.data() + row * width_;
    double* v = v_.data() + row * width_;
    for (std::int64_t i = 0; i < width_; ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      x[i] -= cfg.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + cfg.eps);
    }
  }
}

DenseAdam::DenseAdam(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}

void DenseAdam::step(std::span<const Block> blocks, const AdamConfig& cfg) {
  std::size_t total = 0;
  for (const auto& [data, grad] : blocks) {
    if (data.size() != grad.size()) throw std::invalid_argument("DenseAdam: block size mismatch");
    total += data.size();
  }
  if (total != m_.size()) throw std::invalid_argument("DenseAdam: size mismatch");
  ++t_;
  double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t_));
  double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t_));
  std::size_t off = 0;
  for (const auto& [data, grad] : blocks) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      double g = grad[i];
      m_[off + i] = cfg.beta1 * m_[off + i] + (1.0 - cfg.beta1) * g;
      v_[off + i] = cfg.beta2 * v_[off + i] + (1.0 - cfg.beta2) * g * g;
      data[i] -= cfg.lr * (m_[off + i] / c1) / (std::sqrt(v_[off + i] / c2) + cfg.eps);
    }
    off += data.size();
  }
}

}  // namespace corekg
