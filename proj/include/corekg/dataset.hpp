#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "corekg/types.hpp"
#include "corekg/vocab.hpp"

namespace corekg {

// File names inside a dataset directory. All six must exist.
struct DatasetSchema {
  std::string kg_train = "train.txt";
  std::string kg_valid = "valid.txt";
  std::string kg_test = "test.txt";
  std::string tp_train = "Entity_Type_train.txt";
  std::string tp_valid = "Entity_Type_valid.txt";
  std::string tp_test = "Entity_Type_test.txt";
};

// Diagnostics collected while loading. Within-file duplicates are dropped;
// cross-split overlaps are kept and only counted here.
struct LoadStats {
  std::int64_t kg_duplicates = 0;
  std::int64_t tp_duplicates = 0;
  std::int64_t kg_eval_in_train = 0;
  std::int64_t tp_eval_in_train = 0;
  std::int64_t eval_entities_without_train_types = 0;
};

struct TripleStore {
  Vocabulary entities;
  Vocabulary relations;
  Vocabulary types;

  std::vector<KGTriple> kg_train, kg_valid, kg_test;
  std::vector<TypePair> tp_train, tp_valid, tp_test;

  LoadStats stats;

  // Derived lookups, valid after rebuild_indices().
  std::unordered_set<std::uint64_t> kg_train_set;
  std::unordered_set<std::uint64_t> tp_train_set;
  std::vector<std::vector<TypeId>> train_types;  // per entity, sorted unique
  std::vector<std::vector<TypeId>> known_types;  // union over all splits

  void rebuild_indices();

  bool has_kg_train(EntityId s, RelationId r, EntityId o) const {
    return kg_train_set.count(pack_triple(s, r, o)) != 0;
  }
  bool has_tp_train(EntityId e, TypeId t) const {
    return tp_train_set.count(pack_pair(e, t)) != 0;
  }
};

// Reads all six files, building vocabularies in first-appearance order:
// train.txt, Entity_Type_train.txt, valid.txt, Entity_Type_valid.txt,
// test.txt, Entity_Type_test.txt. Throws on missing files, malformed lines
// and an empty train.txt.
TripleStore load_dataset(const std::string& dir, const DatasetSchema& schema = {});

// Cross product of the train-split types of each triple's endpoints,
// deduplicated and sorted. This is the training set of the type-space model.
std::vector<TypeTriple> generate_type_triples(const TripleStore& store);

void write_type_triples(const std::string& path, const std::vector<TypeTriple>& triples,
                        const TripleStore& store);

}  // namespace corekg
