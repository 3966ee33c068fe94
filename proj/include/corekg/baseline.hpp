#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corekg/dataset.hpp"
#include "corekg/evaluation.hpp"
#include "corekg/types.hpp"

namespace corekg {

enum class BaselineMode : std::uint8_t { kSDType = 0, kSDTypeCond = 1 };

const char* baseline_mode_name(BaselineMode mode);

// Sparse distribution over types, sorted by type id, probabilities > 0.
using TypeDist = std::vector<std::pair<TypeId, double>>;

// Empirical conditionals counted on the train split. The *_by_rel tables
// condition on the relation alone; the *_by_rel_*type tables additionally
// condition on the neighbor's type, keyed by pack_pair(relation, type).
struct ConditionalTypeTable {
  std::unordered_map<std::int64_t, TypeDist> subj_by_rel;        // p(s_t | r)
  std::unordered_map<std::int64_t, TypeDist> obj_by_rel;         // p(o_t | r)
  std::unordered_map<std::uint64_t, TypeDist> subj_by_rel_otype; // p(s_t | r, o_t)
  std::unordered_map<std::uint64_t, TypeDist> obj_by_rel_stype;  // p(o_t | r, s_t)

  void save(const std::string& path) const;
  static ConditionalTypeTable load(const std::string& path);
};

// Counts every train triple against the train types of its endpoints and
// normalizes per key. No smoothing: combinations never observed in train
// stay absent and score nothing.
ConditionalTypeTable fit_type_table(const TripleStore& store);

// Train-KG incidence lists, the neighborhood walked during scoring.
struct KGAdjacency {
  std::vector<std::vector<std::pair<RelationId, EntityId>>> out_edges;  // e as subject
  std::vector<std::vector<std::pair<RelationId, EntityId>>> in_edges;   // e as object

  explicit KGAdjacency(const TripleStore& store);
};

// Average conditional probability per candidate type over the neighborhood
// combination set: one combination per (incident relation, neighbor train
// type) pair, looked up in the mode's table, skipped and not counted when
// the table has no entry. Empty result when nothing scores (isolated or
// all-unknown neighborhood).
TypeDist score_types(EntityId e, const TripleStore& store, const KGAdjacency& adj,
                     const ConditionalTypeTable& table, BaselineMode mode);

// Evaluation adapter: score = negative average probability, 0 for types
// with no mass, so an empty neighborhood ties every type.
class BaselineTypeScorer final : public TypeScorer {
 public:
  BaselineTypeScorer(const TripleStore& store, const KGAdjacency& adj,
                     const ConditionalTypeTable& table, BaselineMode mode)
      : store_(store), adj_(adj), table_(table), mode_(mode) {}

  std::int64_t n_types() const override { return store_.types.size(); }
  void score_all(EntityId e, std::span<double> out) const override;

 private:
  const TripleStore& store_;
  const KGAdjacency& adj_;
  const ConditionalTypeTable& table_;
  BaselineMode mode_;
};

RankingReport evaluate_baseline(std::span<const TypePair> queries, const TripleStore& store,
                                const ConditionalTypeTable& table, BaselineMode mode,
                                int threads);

}  // namespace corekg
