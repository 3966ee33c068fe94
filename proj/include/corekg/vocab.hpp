#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace corekg {

// Dense bidirectional string<->id mapping. Ids are assigned in
// first-appearance order, so a vocabulary built from the same files in the
// same order is always identical.
class Vocabulary {
 public:
  // Returns the existing id when the name is already present.
  std::int32_t add(const std::string& name);

  std::optional<std::int32_t> find(const std::string& name) const;
  const std::string& name(std::int32_t id) const;
  std::int32_t size() const { return static_cast<std::int32_t>(entries_.size()); }
  const std::vector<std::string>& entries() const { return entries_; }

  // Order-sensitive fingerprint of all entries; used to tie checkpoints to
  // the dataset they were trained on.
  std::uint64_t hash() const;

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::int32_t> index_;
};

}  // namespace corekg
