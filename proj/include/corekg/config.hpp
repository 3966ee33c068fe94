#pragma once

#include <cstdint>
#include <string>

#include "corekg/scores.hpp"

namespace corekg {

// Run hyperparameters. Field names follow the usual embedding-training
// shorthand: k/l are the entity/type space dimensions, Ebz/Tbz the entity
// and type batch sizes, Nsz the negatives per positive.
struct TrainConfig {
  ModelKind model_kind = ModelKind::kComplEx;
  std::int64_t k = 500;
  std::int64_t l = 550;
  std::int64_t entity_batch = 1024;  // Ebz
  std::int64_t type_batch = 4096;    // Tbz
  std::int64_t neg_size = 400;       // Nsz
  double alpha1 = 1.0;               // adversarial temperatures per loss
  double alpha2 = 1.0;
  double alpha3 = 1.0;
  double gamma1 = 24.0;              // margins per loss
  double gamma2 = 24.0;
  double gamma3 = 24.0;
  double lr = 2e-4;                  // eta1
  double lr_decay = 0.0;             // lr / (1 + decay * step); 0 = constant
  std::int64_t total_steps = 150000;
  std::int64_t alternation_period = 1000;
  std::int64_t warmup_steps = 0;     // forced KGE steps before alternation
  std::uint64_t seed = 1;
  std::int64_t checkpoint_interval = 0;  // 0 = final checkpoint only

  bool operator==(const TrainConfig&) const = default;

  // Throws std::runtime_error describing the first violated constraint.
  void validate() const;
};

// Key-value config document, one `key = value` per line, `#` comments.
// Keys use the shorthand above (model, k, l, Ebz, Tbz, Nsz, alpha1..3,
// gamma1..3, eta1, lr_decay, total_steps, alternation_period, warmup_steps,
// seed, checkpoint_interval). Omitted alpha2/3 and gamma2/3 inherit the
// corresponding *1 value. Unknown or duplicate keys are errors.
TrainConfig parse_config(const std::string& text);
TrainConfig parse_config_file(const std::string& path);

// Emits every key explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const TrainConfig& cfg);

}  // namespace corekg
