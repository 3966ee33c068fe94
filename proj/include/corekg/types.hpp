#pragma once

#include <cstdint>

namespace corekg {

using EntityId = std::int32_t;
using RelationId = std::int32_t;
using TypeId = std::int32_t;

// Identifier space bound that keeps three ids packable into one 64-bit key.
inline constexpr std::int32_t kMaxVocabSize = 1 << 21;

struct KGTriple {
  EntityId subject = 0;
  RelationId relation = 0;
  EntityId object = 0;
  bool operator==(const KGTriple&) const = default;
};

struct TypePair {
  EntityId entity = 0;
  TypeId type = 0;
  bool operator==(const TypePair&) const = default;
};

struct TypeTriple {
  TypeId subject_type = 0;
  RelationId relation = 0;
  TypeId object_type = 0;
  auto operator<=>(const TypeTriple&) const = default;
};

inline std::uint64_t pack_triple(std::int32_t a, std::int32_t b, std::int32_t c) {
  return (std::uint64_t(a) << 42) | (std::uint64_t(b) << 21) | std::uint64_t(c);
}

inline std::uint64_t pack_pair(std::int32_t a, std::int32_t b) {
  return (std::uint64_t(a) << 21) | std::uint64_t(b);
}

}  // namespace corekg
