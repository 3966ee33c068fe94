#pragma once

#include <cstdint>
#include <string>

#include "corekg/config.hpp"
#include "corekg/model.hpp"

namespace corekg {

struct CheckpointMeta {
  std::int64_t step = 0;
  std::uint64_t entity_hash = 0;
  std::uint64_t relation_hash = 0;
  std::uint64_t type_hash = 0;
};

// Binary format: fixed header (magic, version, model kind, dims, vocab
// sizes, step, vocab hashes) followed by the four tables in declaration
// order and the regression matrices, all little-endian float64. A JSON
// sidecar at <path>.json carries the hyperparameters, dims and hashes in
// readable form; it holds nothing volatile, so reruns of the same config
// produce identical bytes. manifest_ref, when nonempty, names the run
// manifest next to the checkpoint.
void save_checkpoint(const std::string& path, const CoreModel& model, const CheckpointMeta& meta,
                     const TrainConfig* cfg = nullptr, const std::string& manifest_ref = "");

struct LoadedCheckpoint {
  CoreModel model;
  CheckpointMeta meta;
};

LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace corekg
