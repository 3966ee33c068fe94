#include "corekg/vocab.hpp"

#include <stdexcept>

#include "corekg/types.hpp"
#include "corekg/util.hpp"

namespace corekg {

std::int32_t Vocabulary::add(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  if (size() >= kMaxVocabSize)
    throw std::runtime_error("vocabulary overflow: more than 2^21 distinct names");
  std::int32_t id = size();
  entries_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<std::int32_t> Vocabulary::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::name(std::int32_t id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("vocabulary id out of range");
  return entries_[static_cast<std::size_t>(id)];
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = kFnvOffset;
  for (const auto& e : entries_) {
    h = fnv1a64(e, h);
    h = fnv1a64_bytes("\x1f", 1, h);  // separator so ["ab","c"] != ["a","bc"]
  }
  return h;
}

}  // namespace corekg
