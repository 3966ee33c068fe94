#include "corekg/losses.hpp"

#include <algorithm>
#include <cmath>

namespace corekg {

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) { return -softplus(-x); }

void adversarial_weights(std::span<const double> scores, double alpha,
                         std::vector<double>& out) {
  out.resize(scores.size());
  if (scores.empty()) return;
  double m = scores[0];
  for (double s : scores) m = std::max(m, s);
  double z = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(alpha * (scores[i] - m));
    z += out[i];
  }
  for (double& w : out) w /= z;
}

void ns_loss(double pos_score, std::span<const double> neg_scores, const LossConfig& cfg,
             NsLossResult& out) {
  adversarial_weights(neg_scores, cfg.alpha, out.weights);
  out.loss = softplus(pos_score - cfg.gamma);
  out.d_pos = sigmoid(pos_score - cfg.gamma);
  out.d_neg.resize(neg_scores.size());
  for (std::size_t i = 0; i < neg_scores.size(); ++i) {
    out.loss += out.weights[i] * softplus(cfg.gamma - neg_scores[i]);
    out.d_neg[i] = -out.weights[i] * sigmoid(cfg.gamma - neg_scores[i]);
  }
}

}  // namespace corekg
