#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "corekg/config.hpp"
#include "corekg/dataset.hpp"
#include "corekg/losses.hpp"
#include "corekg/model.hpp"
#include "corekg/optimizer.hpp"
#include "corekg/sampler.hpp"

namespace corekg {

enum class Phase { kKGE = 0, kREG = 1, kTPE = 2 };

const char* phase_name(Phase p);

// Cyclic KGE -> REG -> TPE, switching every `period` steps.
Phase schedule(std::int64_t step, std::int64_t period);

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One model plus everything needed to advance it: batch iterators, the
// negative-sampling stream and per-table optimizers. Negative sampling is
// single-threaded before each fan-out and per-example results are reduced
// in a fixed order, so a (config, seed, threads) tuple fully determines
// every parameter byte.
class Trainer {
 public:
  Trainer(const TrainConfig& cfg, const TripleStore& store, int threads);

  // Phase for a step under this config; warmup steps are forced KGE.
  Phase phase_at(std::int64_t step) const;

  // Runs the step at the current counter, returns the batch mean loss.
  // Throws TrainingError when the loss is not finite.
  double run_step();

  std::int64_t step() const { return step_; }
  const TrainConfig& config() const { return cfg_; }
  CoreModel& model() { return model_; }
  const CoreModel& model() const { return model_; }
  const std::vector<TypeTriple>& type_triples() const { return type_triples_; }

 private:
  double step_kge();
  double step_reg();
  double step_tpe();
  double embedding_phase_step(EmbeddingTable& nodes, EmbeddingTable& rels, SparseAdam& opt_nodes,
                              SparseAdam& opt_rels, BatchIterator& iter, std::int64_t batch_size,
                              const std::function<KGTriple(std::size_t)>& triple_at,
                              const std::function<bool(std::int32_t, std::int32_t, std::int32_t)>&
                                  is_positive,
                              const LossConfig& loss_cfg);
  AdamConfig adam_now() const;

  TrainConfig cfg_;
  const TripleStore& store_;
  int threads_;
  CoreModel model_;
  std::vector<TypeTriple> type_triples_;
  std::unordered_set<std::uint64_t> type_triple_set_;
  BatchIterator kg_iter_, tp_iter_, tt_iter_;
  std::mt19937_64 neg_rng_;
  SparseAdam opt_entity_, opt_kg_rel_, opt_type_, opt_type_rel_;
  DenseAdam opt_map_;
  std::int64_t step_ = 0;
  std::vector<std::size_t> batch_;
  std::vector<std::int32_t> negs_;
  std::vector<double> losses_;
};

struct TrainOptions {
  int threads = 1;
  std::string out_dir;          // empty: no checkpoints written
  std::ostream* log = nullptr;  // JSONL, one record per step
  std::string manifest_ref;     // recorded in checkpoint sidecars
};

// Advances the trainer to total_steps: logs every step, computes validation
// MRR on a capped strided sample of tp_valid at the end of each alternation
// block, writes periodic checkpoints when configured and a final
// checkpoint.bin when out_dir is set.
void run_training(Trainer& trainer, const TripleStore& store, const TrainOptions& opts);

}  // namespace corekg
