#include "corekg/baseline.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

namespace corekg {

static_assert(std::endian::native == std::endian::little,
              "table format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'C', 'O', 'R', 'E', 'K', 'G', 'B', '1'};
constexpr std::uint32_t kVersion = 1;

using Counts = std::unordered_map<std::int64_t, std::int64_t>;  // type -> count

template <class Key>
void normalize_into(const std::unordered_map<Key, Counts>& counts,
                    std::unordered_map<Key, TypeDist>& out) {
  out.reserve(counts.size());
  for (const auto& [key, per_type] : counts) {
    std::int64_t total = 0;
    for (const auto& [t, c] : per_type) total += c;
    TypeDist dist;
    dist.reserve(per_type.size());
    for (const auto& [t, c] : per_type)
      dist.push_back({static_cast<TypeId>(t), static_cast<double>(c) / total});
    std::sort(dist.begin(), dist.end());
    out.emplace(key, std::move(dist));
  }
}

// Adds each contributing combination's distribution into acc; returns the
// number of contributing combinations.
std::int64_t accumulate_probs(EntityId e, const TripleStore& store, const KGAdjacency& adj,
                              const ConditionalTypeTable& table, BaselineMode mode,
                              std::span<double> acc, std::vector<TypeId>& touched) {
  std::int64_t n_combos = 0;
  auto add_dist = [&](const TypeDist& dist) {
    ++n_combos;
    for (const auto& [t, p] : dist) {
      if (acc[t] == 0.0) touched.push_back(t);
      acc[t] += p;
    }
  };
  for (const auto& [r, o] : adj.out_edges[e]) {
    for (TypeId nt : store.train_types[o]) {
      if (mode == BaselineMode::kSDTypeCond) {
        auto it = table.subj_by_rel_otype.find(pack_pair(r, nt));
        if (it != table.subj_by_rel_otype.end()) add_dist(it->second);
      } else {
        auto it = table.subj_by_rel.find(r);
        if (it != table.subj_by_rel.end()) add_dist(it->second);
      }
    }
  }
  for (const auto& [r, s] : adj.in_edges[e]) {
    for (TypeId nt : store.train_types[s]) {
      if (mode == BaselineMode::kSDTypeCond) {
        auto it = table.obj_by_rel_stype.find(pack_pair(r, nt));
        if (it != table.obj_by_rel_stype.end()) add_dist(it->second);
      } else {
        auto it = table.obj_by_rel.find(r);
        if (it != table.obj_by_rel.end()) add_dist(it->second);
      }
    }
  }
  return n_combos;
}

template <class Key>
void write_map(std::ofstream& out, const std::unordered_map<Key, TypeDist>& m) {
  std::map<Key, const TypeDist*> sorted;
  for (const auto& [key, dist] : m) sorted.emplace(key, &dist);
  std::uint64_t n = sorted.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (const auto& [key, dist] : sorted) {
    out.write(reinterpret_cast<const char*>(&key), sizeof key);
    std::uint64_t cnt = dist->size();
    out.write(reinterpret_cast<const char*>(&cnt), sizeof cnt);
    for (const auto& [t, p] : *dist) {
      out.write(reinterpret_cast<const char*>(&t), sizeof t);
      out.write(reinterpret_cast<const char*>(&p), sizeof p);
    }
  }
}

template <class Key>
void read_map(std::ifstream& in, std::unordered_map<Key, TypeDist>& m) {
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Key key;
    in.read(reinterpret_cast<char*>(&key), sizeof key);
    std::uint64_t cnt = 0;
    in.read(reinterpret_cast<char*>(&cnt), sizeof cnt);
    TypeDist dist(cnt);
    for (auto& [t, p] : dist) {
      in.read(reinterpret_cast<char*>(&t), sizeof t);
      in.read(reinterpret_cast<char*>(&p), sizeof p);
    }
    if (!in) throw std::runtime_error("corrupt table file");
    m.emplace(key, std::move(dist));
  }
}

}  // namespace

const char* baseline_mode_name(BaselineMode mode) {
  return mode == BaselineMode::kSDType ? "sdtype" : "sdtype-cond";
}

ConditionalTypeTable fit_type_table(const TripleStore& store) {
  if (store.kg_train.empty()) throw std::runtime_error("fit_type_table: empty train split");
  std::unordered_map<std::int64_t, Counts> subj_rel, obj_rel;
  std::unordered_map<std::uint64_t, Counts> subj_cond, obj_cond;
  for (const auto& tr : store.kg_train) {
    const auto& st = store.train_types[tr.subject];
    const auto& ot = store.train_types[tr.object];
    for (TypeId ts : st) ++subj_rel[tr.relation][ts];
    for (TypeId to : ot) ++obj_rel[tr.relation][to];
    for (TypeId to : ot)
      for (TypeId ts : st) ++subj_cond[pack_pair(tr.relation, to)][ts];
    for (TypeId ts : st)
      for (TypeId to : ot) ++obj_cond[pack_pair(tr.relation, ts)][to];
  }
  ConditionalTypeTable table;
  normalize_into(subj_rel, table.subj_by_rel);
  normalize_into(obj_rel, table.obj_by_rel);
  normalize_into(subj_cond, table.subj_by_rel_otype);
  normalize_into(obj_cond, table.obj_by_rel_stype);
  return table;
}

KGAdjacency::KGAdjacency(const TripleStore& store)
    : out_edges(store.entities.size()), in_edges(store.entities.size()) {
  for (const auto& t : store.kg_train) {
    out_edges[t.subject].push_back({t.relation, t.object});
    in_edges[t.object].push_back({t.relation, t.subject});
  }
}

TypeDist score_types(EntityId e, const TripleStore& store, const KGAdjacency& adj,
                     const ConditionalTypeTable& table, BaselineMode mode) {
  std::vector<double> acc(static_cast<std::size_t>(store.types.size()), 0.0);
  std::vector<TypeId> touched;
  std::int64_t n = accumulate_probs(e, store, adj, table, mode, acc, touched);
  TypeDist out;
  if (n == 0) return out;
  std::sort(touched.begin(), touched.end());
  out.reserve(touched.size());
  for (TypeId t : touched) out.push_back({t, acc[t] / static_cast<double>(n)});
  return out;
}

void BaselineTypeScorer::score_all(EntityId e, std::span<double> out) const {
  if (e < 0 || e >= store_.entities.size()) throw std::out_of_range("unknown entity id");
  std::fill(out.begin(), out.end(), 0.0);
  thread_local std::vector<TypeId> touched;
  touched.clear();
  std::int64_t n = accumulate_probs(e, store_, adj_, table_, mode_, out, touched);
  if (n == 0) return;
  for (TypeId t : touched) out[t] = -out[t] / static_cast<double>(n);
}

RankingReport evaluate_baseline(std::span<const TypePair> queries, const TripleStore& store,
                                const ConditionalTypeTable& table, BaselineMode mode,
                                int threads) {
  KGAdjacency adj(store);
  BaselineTypeScorer scorer(store, adj, table, mode);
  return evaluate(queries, scorer, store, threads);
}

void ConditionalTypeTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&kVersion), sizeof kVersion);
  write_map(out, subj_by_rel);
  write_map(out, obj_by_rel);
  write_map(out, subj_by_rel_otype);
  write_map(out, obj_by_rel_stype);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

ConditionalTypeTable ConditionalTypeTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open table file: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("not a table file: " + path);
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  if (!in || version != kVersion) throw std::runtime_error("unsupported table version");
  ConditionalTypeTable table;
  read_map(in, table.subj_by_rel);
  read_map(in, table.obj_by_rel);
  read_map(in, table.subj_by_rel_otype);
  read_map(in, table.obj_by_rel_stype);
  return table;
}

}  // namespace corekg
