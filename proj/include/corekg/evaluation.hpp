#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "corekg/dataset.hpp"
#include "corekg/model.hpp"
#include "corekg/types.hpp"

namespace corekg {

struct QueryRank {
  EntityId entity = 0;
  TypeId true_type = 0;
  std::int64_t rank = 0;
};

struct RankingReport {
  std::vector<QueryRank> per_query;
  double mrr = 0.0;
  double hits1 = 0.0;
  double hits3 = 0.0;
  double hits10 = 0.0;
  std::int64_t n_queries = 0;
};

// Anything that can score every type for an entity, lower = better.
// score_all must be safe to call concurrently.
class TypeScorer {
 public:
  virtual ~TypeScorer() = default;
  virtual std::int64_t n_types() const = 0;
  virtual void score_all(EntityId e, std::span<double> out) const = 0;
};

// Scores types by regression distance f(e, t). The projection is computed
// once per entity and reused across all candidate types.
class ModelTypeScorer final : public TypeScorer {
 public:
  explicit ModelTypeScorer(const CoreModel& model) : model_(model) {}
  std::int64_t n_types() const override { return model_.type.rows(); }
  void score_all(EntityId e, std::span<double> out) const override;

 private:
  const CoreModel& model_;
};

// Filtered rank with pessimistic ties: 1 + |better unfiltered| + |tied
// unfiltered|, where `filter` lists type ids to ignore (sorted, never
// containing true_type).
std::int64_t rank_from_scores(std::span<const double> scores, TypeId true_type,
                              std::span<const TypeId> filter);

// Ranks every query with the filter set taken from the entity's known types
// across all splits, minus the query type itself. Queries keep file order in
// the report regardless of thread count.
RankingReport evaluate(std::span<const TypePair> queries, const TypeScorer& scorer,
                       const TripleStore& store, int threads);

// Unfiltered argmin over all types; ties break toward the lowest type id.
TypeId predict_type(EntityId e, const TypeScorer& scorer);

// The n best (type, score) pairs in ascending score order, ties by id.
std::vector<std::pair<TypeId, double>> top_types(EntityId e, const TypeScorer& scorer,
                                                 std::int64_t n);

}  // namespace corekg
