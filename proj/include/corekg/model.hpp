#pragma once

#include <cstdint>

#include "corekg/embedding.hpp"
#include "corekg/regression.hpp"
#include "corekg/scores.hpp"
#include "corekg/types.hpp"

namespace corekg {

// All learned parameters: the two embedding spaces, their relation tables
// and the regression map between them. Entity vectors live in C^k, type
// vectors in C^l. Under RotatE the relation tables are phase rows; under
// ComplEx everything is free complex.
struct CoreModel {
  ModelKind kind;
  std::int64_t k, l;
  EmbeddingTable entity;         // n_entities x k
  EmbeddingTable kg_relation;    // n_relations x k
  EmbeddingTable type;           // n_types x l
  EmbeddingTable type_relation;  // n_relations x l
  RegressionMap map;             // k -> l

  CoreModel(ModelKind kind, std::int64_t k, std::int64_t l, std::int64_t n_entities,
            std::int64_t n_relations, std::int64_t n_types);

  // Draws every table from one seeded stream in a fixed order (entity,
  // kg_relation, type, type_relation, map), so initialization is a pure
  // function of the seed. Free-complex bounds follow the margins: gamma1/k
  // in the entity space, gamma2/l in the type space.
  void init(std::uint64_t seed, double gamma1, double gamma2);

  // f(e, t): distance between the projected entity and the type embedding.
  // Convenience path with per-call scratch; evaluation batches instead.
  double type_score(EntityId e, TypeId t) const;
};

}  // namespace corekg
