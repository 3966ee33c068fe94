#pragma once

#include <span>
#include <vector>

namespace corekg {

// Overflow-safe scalar helpers.
double softplus(double x);
double sigmoid(double x);
double log_sigmoid(double x);

struct LossConfig {
  double gamma = 24.0;  // margin
  double alpha = 1.0;   // adversarial temperature
};

// softmax(alpha * scores) with max subtraction. The weights are treated as
// constants by the loss gradient (no second-order term flows through them).
void adversarial_weights(std::span<const double> scores, double alpha, std::vector<double>& out);

struct NsLossResult {
  double loss = 0.0;
  double d_pos = 0.0;            // dL / d pos_score
  std::vector<double> d_neg;     // dL / d neg_score[i]
  std::vector<double> weights;   // adversarial weights used
};

// Self-adversarial negative sampling loss on lower-is-better scores:
//   L = softplus(pos - gamma) + sum_i w_i * softplus(gamma - neg_i)
// so the loss falls as the positive score drops below gamma and the negative
// scores rise above it.
void ns_loss(double pos_score, std::span<const double> neg_scores, const LossConfig& cfg,
             NsLossResult& out);

}  // namespace corekg
