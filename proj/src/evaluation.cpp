#include "corekg/evaluation.hpp"

#include <algorithm>
#include <stdexcept>

#include "corekg/util.hpp"

namespace corekg {

void ModelTypeScorer::score_all(EntityId e, std::span<double> out) const {
  if (e < 0 || e >= model_.entity.rows()) throw std::out_of_range("unknown entity id");
  if (out.size() != static_cast<std::size_t>(model_.type.rows()))
    throw std::invalid_argument("score_all: output size mismatch");
  thread_local std::vector<double> er, ei, pr, pi, tr, ti, uh, vh;
  std::size_t k = static_cast<std::size_t>(model_.k);
  std::size_t l = static_cast<std::size_t>(model_.l);
  er.resize(k);
  ei.resize(k);
  pr.resize(l);
  pi.resize(l);
  tr.resize(l);
  ti.resize(l);
  uh.resize(l);
  vh.resize(l);
  model_.entity.read_complex(e, er, ei);
  model_.map.project(er, ei, pr, pi);
  for (std::int64_t t = 0; t < model_.type.rows(); ++t) {
    model_.type.read_complex(t, tr, ti);
    out[t] = residual_score(pr, pi, tr, ti, uh, vh);
  }
}

std::int64_t rank_from_scores(std::span<const double> scores, TypeId true_type,
                              std::span<const TypeId> filter) {
  double s_true = scores[true_type];
  std::int64_t less = 0, tied = 0;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(scores.size()); ++t) {
    if (t == true_type) continue;
    if (std::binary_search(filter.begin(), filter.end(), static_cast<TypeId>(t))) continue;
    if (scores[t] < s_true)
      ++less;
    else if (scores[t] == s_true)
      ++tied;
  }
  return 1 + less + tied;
}

RankingReport evaluate(std::span<const TypePair> queries, const TypeScorer& scorer,
                       const TripleStore& store, int threads) {
  if (scorer.n_types() != store.types.size())
    throw std::invalid_argument("evaluate: scorer and store disagree on type count");
  std::int64_t n_types = scorer.n_types();

  RankingReport report;
  report.n_queries = static_cast<std::int64_t>(queries.size());
  report.per_query.resize(queries.size());

  int workers = std::max(1, threads);
  std::vector<std::vector<double>> scores(workers);
  std::vector<std::vector<char>> masked(workers);

  parallel_for(queries.size(), threads, [&](std::size_t lo, std::size_t hi, int w) {
    auto& s = scores[w];
    auto& m = masked[w];
    s.resize(static_cast<std::size_t>(n_types));
    m.assign(static_cast<std::size_t>(n_types), 0);
    for (std::size_t i = lo; i < hi; ++i) {
      EntityId e = queries[i].entity;
      TypeId t = queries[i].type;
      scorer.score_all(e, s);
      const auto& known = store.known_types[e];
      for (TypeId kt : known) m[kt] = 1;
      m[t] = 0;  // the query type itself is never filtered

      double s_true = s[t];
      std::int64_t less = 0, tied = 0;
      for (std::int64_t tt = 0; tt < n_types; ++tt) {
        if (tt == t || m[tt]) continue;
        if (s[tt] < s_true)
          ++less;
        else if (s[tt] == s_true)
          ++tied;
      }
      report.per_query[i] = {e, t, 1 + less + tied};
      for (TypeId kt : known) m[kt] = 0;
    }
  });

  double rr = 0.0;
  std::int64_t h1 = 0, h3 = 0, h10 = 0;
  for (const auto& q : report.per_query) {
    rr += 1.0 / static_cast<double>(q.rank);
    if (q.rank <= 1) ++h1;
    if (q.rank <= 3) ++h3;
    if (q.rank <= 10) ++h10;
  }
  if (report.n_queries > 0) {
    double n = static_cast<double>(report.n_queries);
    report.mrr = rr / n;
    report.hits1 = h1 / n;
    report.hits3 = h3 / n;
    report.hits10 = h10 / n;
  }
  return report;
}

TypeId predict_type(EntityId e, const TypeScorer& scorer) {
  std::vector<double> s(static_cast<std::size_t>(scorer.n_types()));
  scorer.score_all(e, s);
  TypeId best = 0;
  for (std::int64_t t = 1; t < scorer.n_types(); ++t)
    if (s[t] < s[best]) best = static_cast<TypeId>(t);
  return best;
}

std::vector<std::pair<TypeId, double>> top_types(EntityId e, const TypeScorer& scorer,
                                                 std::int64_t n) {
  std::vector<double> s(static_cast<std::size_t>(scorer.n_types()));
  scorer.score_all(e, s);
  std::vector<std::pair<TypeId, double>> out;
  out.reserve(s.size());
  for (std::int64_t t = 0; t < scorer.n_types(); ++t)
    out.push_back({static_cast<TypeId>(t), s[t]});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  if (n < static_cast<std::int64_t>(out.size())) out.resize(static_cast<std::size_t>(n));
  return out;
}

}  // namespace corekg
