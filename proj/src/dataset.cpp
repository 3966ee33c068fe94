#include "corekg/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace corekg {
namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  if (dir.back() == '/') return dir + file;
  return dir + "/" + file;
}

// Splits a line into exactly n_fields tab-separated non-empty fields.
bool split_fields(const std::string& line, int n_fields, std::vector<std::string>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (static_cast<int>(out.size()) != n_fields) return false;
  for (const auto& f : out)
    if (f.empty()) return false;
  return true;
}

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw std::runtime_error("missing dataset file: " + path);
  }

  // Returns false at end of file. Blank lines are skipped.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(path_ + ":" + std::to_string(lineno_) + ": " + what);
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::int64_t lineno_ = 0;
};

void read_kg_file(const std::string& path, TripleStore& store, std::vector<KGTriple>& out) {
  LineReader reader(path);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::string> fields;
  std::string line;
  while (reader.next(line)) {
    if (!split_fields(line, 3, fields))
      reader.fail("malformed line (expected 3 tab-separated fields)");
    EntityId s = store.entities.add(fields[0]);
    RelationId r = store.relations.add(fields[1]);
    EntityId o = store.entities.add(fields[2]);
    if (!seen.insert(pack_triple(s, r, o)).second) {
      ++store.stats.kg_duplicates;
      continue;
    }
    out.push_back({s, r, o});
  }
}

void read_tp_file(const std::string& path, TripleStore& store, std::vector<TypePair>& out) {
  LineReader reader(path);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::string> fields;
  std::string line;
  while (reader.next(line)) {
    if (!split_fields(line, 2, fields))
      reader.fail("malformed line (expected 2 tab-separated fields)");
    EntityId e = store.entities.add(fields[0]);
    TypeId t = store.types.add(fields[1]);
    if (!seen.insert(pack_pair(e, t)).second) {
      ++store.stats.tp_duplicates;
      continue;
    }
    out.push_back({e, t});
  }
}

void sort_unique(std::vector<TypeId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void TripleStore::rebuild_indices() {
  kg_train_set.clear();
  kg_train_set.reserve(kg_train.size() * 2);
  for (const auto& t : kg_train) kg_train_set.insert(pack_triple(t.subject, t.relation, t.object));

  tp_train_set.clear();
  tp_train_set.reserve(tp_train.size() * 2);
  for (const auto& p : tp_train) tp_train_set.insert(pack_pair(p.entity, p.type));

  train_types.assign(entities.size(), {});
  known_types.assign(entities.size(), {});
  for (const auto& p : tp_train) {
    train_types[p.entity].push_back(p.type);
    known_types[p.entity].push_back(p.type);
  }
  for (const auto& p : tp_valid) known_types[p.entity].push_back(p.type);
  for (const auto& p : tp_test) known_types[p.entity].push_back(p.type);
  for (auto& v : train_types) sort_unique(v);
  for (auto& v : known_types) sort_unique(v);
}

TripleStore load_dataset(const std::string& dir, const DatasetSchema& schema) {
  TripleStore store;
  read_kg_file(join_path(dir, schema.kg_train), store, store.kg_train);
  if (store.kg_train.empty())
    throw std::runtime_error("empty dataset file: " + join_path(dir, schema.kg_train));
  read_tp_file(join_path(dir, schema.tp_train), store, store.tp_train);
  read_kg_file(join_path(dir, schema.kg_valid), store, store.kg_valid);
  read_tp_file(join_path(dir, schema.tp_valid), store, store.tp_valid);
  read_kg_file(join_path(dir, schema.kg_test), store, store.kg_test);
  read_tp_file(join_path(dir, schema.tp_test), store, store.tp_test);

  store.rebuild_indices();

  for (const auto& t : store.kg_valid)
    if (store.has_kg_train(t.subject, t.relation, t.object)) ++store.stats.kg_eval_in_train;
  for (const auto& t : store.kg_test)
    if (store.has_kg_train(t.subject, t.relation, t.object)) ++store.stats.kg_eval_in_train;
  for (const auto& p : store.tp_valid)
    if (store.has_tp_train(p.entity, p.type)) ++store.stats.tp_eval_in_train;
  for (const auto& p : store.tp_test)
    if (store.has_tp_train(p.entity, p.type)) ++store.stats.tp_eval_in_train;

  std::unordered_set<EntityId> untyped;
  for (const auto& p : store.tp_valid)
    if (store.train_types[p.entity].empty()) untyped.insert(p.entity);
  for (const auto& p : store.tp_test)
    if (store.train_types[p.entity].empty()) untyped.insert(p.entity);
  store.stats.eval_entities_without_train_types = static_cast<std::int64_t>(untyped.size());

  return store;
}

std::vector<TypeTriple> generate_type_triples(const TripleStore& store) {
  std::vector<std::uint64_t> packed;
  for (const auto& t : store.kg_train) {
    const auto& subj_types = store.train_types[t.subject];
    const auto& obj_types = store.train_types[t.object];
    for (TypeId ts : subj_types)
      for (TypeId to : obj_types) packed.push_back(pack_triple(ts, t.relation, to));
  }
  std::sort(packed.begin(), packed.end());
  packed.erase(std::unique(packed.begin(), packed.end()), packed.end());

  std::vector<TypeTriple> out;
  out.reserve(packed.size());
  for (std::uint64_t p : packed) {
    TypeTriple tt;
    tt.subject_type = static_cast<TypeId>(p >> 42);
    tt.relation = static_cast<RelationId>((p >> 21) & (kMaxVocabSize - 1));
    tt.object_type = static_cast<TypeId>(p & (kMaxVocabSize - 1));
    out.push_back(tt);
  }
  return out;
}

void write_type_triples(const std::string& path, const std::vector<TypeTriple>& triples,
                        const TripleStore& store) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& t : triples) {
    out << store.types.name(t.subject_type) << '\t' << store.relations.name(t.relation) << '\t'
        << store.types.name(t.object_type) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace corekg
