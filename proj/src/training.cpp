#include "corekg/training.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "corekg/checkpoint.hpp"
#include "corekg/evaluation.hpp"
#include "corekg/util.hpp"

namespace corekg {
namespace {

constexpr std::int64_t kValidationCap = 2000;

// Accumulates coeff * (complex gradient) onto a row, folding onto the phase
// angle for unit-modulus rows. row_re/row_im are the row's materialized
// complex values, needed for the phase chain rule.
void add_row_grad(RowGrads& grads, const EmbeddingTable& table, std::int64_t row, double coeff,
                  std::span<const double> d_re, std::span<const double> d_im,
                  std::span<const double> row_re, std::span<const double> row_im) {
  auto& acc = grads[row];
  if (acc.empty()) acc.assign(static_cast<std::size_t>(table.row_width()), 0.0);
  std::int64_t d = table.dim();
  if (table.param() == Param::kFreeComplex) {
    for (std::int64_t i = 0; i < d; ++i) {
      acc[i] += coeff * d_re[i];
      acc[d + i] += coeff * d_im[i];
    }
  } else {
    for (std::int64_t i = 0; i < d; ++i)
      acc[i] += coeff * (d_im[i] * row_re[i] - d_re[i] * row_im[i]);
  }
}

void merge_row_grads(RowGrads& into, const RowGrads& from) {
  for (const auto& [row, g] : from) {
    auto it = into.find(row);
    if (it == into.end()) {
      into.emplace(row, g);
    } else {
      auto& acc = it->second;
      for (std::size_t i = 0; i < g.size(); ++i) acc[i] += g[i];
    }
  }
}

std::vector<TypePair> validation_sample(const TripleStore& store) {
  const auto& all = store.tp_valid;
  std::int64_t n = static_cast<std::int64_t>(all.size());
  if (n <= kValidationCap) return {all.begin(), all.end()};
  std::int64_t stride = (n + kValidationCap - 1) / kValidationCap;
  std::vector<TypePair> out;
  out.reserve(static_cast<std::size_t>(kValidationCap));
  for (std::int64_t i = 0; i < n; i += stride) out.push_back(all[i]);
  return out;
}

}  // namespace

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kKGE: return "KGE";
    case Phase::kREG: return "REG";
    case Phase::kTPE: return "TPE";
  }
  return "?";
}

Phase schedule(std::int64_t step, std::int64_t period) {
  return static_cast<Phase>((step / period) % 3);
}

Trainer::Trainer(const TrainConfig& cfg, const TripleStore& store, int threads)
    : cfg_(cfg),
      store_(store),
      threads_(threads < 1 ? 1 : threads),
      model_(cfg.model_kind, cfg.k, cfg.l, store.entities.size(), store.relations.size(),
             store.types.size()),
      type_triples_(generate_type_triples(store)),
      kg_iter_(store.kg_train.size(), cfg.seed, 1),
      tp_iter_(store.tp_train.empty() ? 1 : store.tp_train.size(), cfg.seed, 2),
      tt_iter_(type_triples_.empty() ? 1 : type_triples_.size(), cfg.seed, 3),
      neg_rng_(make_rng(cfg.seed, 4)),
      opt_entity_(model_.entity.rows(), model_.entity.row_width()),
      opt_kg_rel_(model_.kg_relation.rows(), model_.kg_relation.row_width()),
      opt_type_(model_.type.rows(), model_.type.row_width()),
      opt_type_rel_(model_.type_relation.rows(), model_.type_relation.row_width()),
      opt_map_(static_cast<std::size_t>(4 * cfg.k * cfg.l)) {
  cfg_.validate();
  if (store.tp_train.empty())
    throw TrainingError("cannot train: no entity-type pairs in the train split");
  if (type_triples_.empty())
    throw TrainingError("cannot train: no type triples derivable from the train split");
  type_triple_set_.reserve(type_triples_.size() * 2);
  for (const auto& t : type_triples_)
    type_triple_set_.insert(pack_triple(t.subject_type, t.relation, t.object_type));
  model_.init(cfg.seed, cfg.gamma1, cfg.gamma2);
}

Phase Trainer::phase_at(std::int64_t step) const {
  if (step < cfg_.warmup_steps) return Phase::kKGE;
  return schedule(step - cfg_.warmup_steps, cfg_.alternation_period);
}

AdamConfig Trainer::adam_now() const {
  AdamConfig a;
  a.lr = cfg_.lr / (1.0 + cfg_.lr_decay * static_cast<double>(step_));
  return a;
}

double Trainer::run_step() {
  Phase p = phase_at(step_);
  double loss = 0.0;
  switch (p) {
    case Phase::kKGE: loss = step_kge(); break;
    case Phase::kREG: loss = step_reg(); break;
    case Phase::kTPE: loss = step_tpe(); break;
  }
  if (!std::isfinite(loss))
    throw TrainingError("non-finite loss " + std::to_string(loss) + " at step " +
                        std::to_string(step_) + " (" + phase_name(p) + ")");
  ++step_;
  return loss;
}

double Trainer::embedding_phase_step(
    EmbeddingTable& nodes, EmbeddingTable& rels, SparseAdam& opt_nodes, SparseAdam& opt_rels,
    BatchIterator& iter, std::int64_t batch_size,
    const std::function<KGTriple(std::size_t)>& triple_at,
    const std::function<bool(std::int32_t, std::int32_t, std::int32_t)>& is_positive,
    const LossConfig& loss_cfg) {
  const std::int64_t B = batch_size;
  const std::int64_t nsz = cfg_.neg_size;
  const std::int64_t n_subj = nsz / 2;
  const std::int32_t n_nodes = static_cast<std::int32_t>(nodes.rows());

  iter.fill(batch_, static_cast<std::size_t>(B));
  negs_.resize(static_cast<std::size_t>(B * nsz));
  for (std::int64_t i = 0; i < B; ++i) {
    KGTriple t = triple_at(batch_[i]);
    for (std::int64_t j = 0; j < nsz; ++j) {
      std::int32_t c =
          j < n_subj
              ? sample_negative(neg_rng_, n_nodes,
                                [&](std::int32_t x) { return is_positive(x, t.relation, t.object); })
              : sample_negative(neg_rng_, n_nodes, [&](std::int32_t x) {
                  return is_positive(t.subject, t.relation, x);
                });
      negs_[i * nsz + j] = c;
    }
  }

  struct Acc {
    RowGrads nodes, rels;
  };
  int workers = std::max(1, threads_);
  std::vector<Acc> accs(workers);
  losses_.assign(static_cast<std::size_t>(B), 0.0);

  const std::size_t d = static_cast<std::size_t>(nodes.dim());
  const double scale = 1.0 / static_cast<double>(B);

  parallel_for(static_cast<std::size_t>(B), threads_, [&](std::size_t lo, std::size_t hi, int w) {
    Acc& acc = accs[w];
    std::vector<double> sr(d), si(d), wr(d), wi(d), orr(d), oi(d), cr(d), ci(d);
    std::vector<double> gwr(d), gwi(d), gsr(d), gsi(d), gor(d), goi(d);
    std::vector<double> neg_scores(static_cast<std::size_t>(nsz));
    ScoreGradView gv{gwr, gwi, gsr, gsi, gor, goi};
    NsLossResult res;
    for (std::size_t i = lo; i < hi; ++i) {
      KGTriple t = triple_at(batch_[i]);
      nodes.read_complex(t.subject, sr, si);
      rels.read_complex(t.relation, wr, wi);
      nodes.read_complex(t.object, orr, oi);
      double pos = score_kind(model_.kind, wr, wi, sr, si, orr, oi);
      for (std::int64_t j = 0; j < nsz; ++j) {
        std::int32_t c = negs_[i * nsz + j];
        nodes.read_complex(c, cr, ci);
        neg_scores[j] = j < n_subj ? score_kind(model_.kind, wr, wi, cr, ci, orr, oi)
                                   : score_kind(model_.kind, wr, wi, sr, si, cr, ci);
      }
      ns_loss(pos, neg_scores, loss_cfg, res);
      losses_[i] = res.loss;

      auto fold = [&](double coeff, std::int32_t subj, std::span<const double> s_re,
                      std::span<const double> s_im, std::int32_t obj,
                      std::span<const double> o_re, std::span<const double> o_im) {
        score_kind_grad(model_.kind, wr, wi, s_re, s_im, o_re, o_im, gv);
        add_row_grad(acc.nodes, nodes, subj, coeff, gsr, gsi, s_re, s_im);
        add_row_grad(acc.nodes, nodes, obj, coeff, gor, goi, o_re, o_im);
        add_row_grad(acc.rels, rels, t.relation, coeff, gwr, gwi, wr, wi);
      };
      fold(res.d_pos * scale, t.subject, sr, si, t.object, orr, oi);
      for (std::int64_t j = 0; j < nsz; ++j) {
        std::int32_t c = negs_[i * nsz + j];
        nodes.read_complex(c, cr, ci);
        if (j < n_subj)
          fold(res.d_neg[j] * scale, c, cr, ci, t.object, orr, oi);
        else
          fold(res.d_neg[j] * scale, t.subject, sr, si, c, cr, ci);
      }
    }
  });

  RowGrads node_grads, rel_grads;
  for (const auto& acc : accs) {
    merge_row_grads(node_grads, acc.nodes);
    merge_row_grads(rel_grads, acc.rels);
  }
  double total = 0.0;
  for (double v : losses_) total += v;

  AdamConfig adam = adam_now();
  opt_nodes.step(nodes.data(), node_grads, adam);
  opt_rels.step(rels.data(), rel_grads, adam);
  return total * scale;
}

double Trainer::step_kge() {
  return embedding_phase_step(
      model_.entity, model_.kg_relation, opt_entity_, opt_kg_rel_, kg_iter_, cfg_.entity_batch,
      [&](std::size_t i) { return store_.kg_train[i]; },
      [&](std::int32_t s, std::int32_t r, std::int32_t o) { return store_.has_kg_train(s, r, o); },
      LossConfig{cfg_.gamma1, cfg_.alpha1});
}

double Trainer::step_tpe() {
  return embedding_phase_step(
      model_.type, model_.type_relation, opt_type_, opt_type_rel_, tt_iter_, cfg_.type_batch,
      [&](std::size_t i) {
        const TypeTriple& t = type_triples_[i];
        return KGTriple{t.subject_type, t.relation, t.object_type};
      },
      [&](std::int32_t s, std::int32_t r, std::int32_t o) {
        return type_triple_set_.count(pack_triple(s, r, o)) != 0;
      },
      LossConfig{cfg_.gamma2, cfg_.alpha2});
}

double Trainer::step_reg() {
  const std::int64_t B = cfg_.type_batch;
  const std::int64_t nsz = cfg_.neg_size;
  const std::int32_t n_types = static_cast<std::int32_t>(model_.type.rows());
  const std::size_t k = static_cast<std::size_t>(cfg_.k);
  const std::size_t l = static_cast<std::size_t>(cfg_.l);
  const std::size_t kl = k * l;
  const double scale = 1.0 / static_cast<double>(B);

  tp_iter_.fill(batch_, static_cast<std::size_t>(B));
  negs_.resize(static_cast<std::size_t>(B * nsz));
  for (std::int64_t i = 0; i < B; ++i) {
    const TypePair& p = store_.tp_train[batch_[i]];
    for (std::int64_t j = 0; j < nsz; ++j)
      negs_[i * nsz + j] = sample_negative(
          neg_rng_, n_types, [&](std::int32_t x) { return store_.has_tp_train(p.entity, x); });
  }

  struct Acc {
    RowGrads types;
    std::vector<double> map;  // [a_rr | a_ir | a_ri | a_ii]
  };
  int workers = std::max(1, threads_);
  std::vector<Acc> accs(workers);
  losses_.assign(static_cast<std::size_t>(B), 0.0);

  parallel_for(static_cast<std::size_t>(B), threads_, [&](std::size_t lo, std::size_t hi, int w) {
    Acc& acc = accs[w];
    acc.map.assign(4 * kl, 0.0);
    std::vector<double> er(k), ei(k), pr(l), pi(l), tr(l), ti(l), uh(l), vh(l), U(l), V(l);
    std::vector<double> neg_scores(static_cast<std::size_t>(nsz));
    NsLossResult res;
    for (std::size_t i = lo; i < hi; ++i) {
      const TypePair& p = store_.tp_train[batch_[i]];
      model_.entity.read_complex(p.entity, er, ei);
      model_.map.project(er, ei, pr, pi);
      model_.type.read_complex(p.type, tr, ti);
      double pos = residual_score(pr, pi, tr, ti, uh, vh);
      for (std::int64_t j = 0; j < nsz; ++j) {
        model_.type.read_complex(negs_[i * nsz + j], tr, ti);
        neg_scores[j] = residual_score(pr, pi, tr, ti, uh, vh);
      }
      ns_loss(pos, neg_scores, LossConfig{cfg_.gamma3, cfg_.alpha3}, res);
      losses_[i] = res.loss;

      std::fill(U.begin(), U.end(), 0.0);
      std::fill(V.begin(), V.end(), 0.0);
      auto fold = [&](double coeff, std::int32_t tid) {
        model_.type.read_complex(tid, tr, ti);
        residual_score(pr, pi, tr, ti, uh, vh);
        auto& row = acc.types[tid];
        if (row.empty()) row.assign(2 * l, 0.0);
        for (std::size_t j = 0; j < l; ++j) {
          row[j] -= coeff * uh[j];
          row[l + j] -= coeff * vh[j];
          U[j] += coeff * uh[j];
          V[j] += coeff * vh[j];
        }
      };
      fold(res.d_pos * scale, p.type);
      for (std::int64_t j = 0; j < nsz; ++j) fold(res.d_neg[j] * scale, negs_[i * nsz + j]);

      // The map gradient of every candidate shares the same projection, so
      // the per-candidate coefficients collapse into U and V and the outer
      // products are taken once per example.
      for (std::size_t a = 0; a < k; ++a) {
        double xr = er[a], xi = ei[a];
        double* rr = acc.map.data() + a * l;
        double* ir = acc.map.data() + kl + a * l;
        double* ri = acc.map.data() + 2 * kl + a * l;
        double* ii = acc.map.data() + 3 * kl + a * l;
        for (std::size_t j = 0; j < l; ++j) {
          rr[j] += xr * U[j];
          ir[j] += xi * U[j];
          ri[j] += xr * V[j];
          ii[j] += xi * V[j];
        }
      }
    }
  });

  RowGrads type_grads;
  std::vector<double> map_grad(4 * kl, 0.0);
  for (const auto& acc : accs) {
    merge_row_grads(type_grads, acc.types);
    if (!acc.map.empty())
      for (std::size_t i = 0; i < 4 * kl; ++i) map_grad[i] += acc.map[i];
  }
  double total = 0.0;
  for (double v : losses_) total += v;

  AdamConfig adam = adam_now();
  opt_type_.step(model_.type.data(), type_grads, adam);
  DenseAdam::Block blocks[4] = {
      {model_.map.a_rr, std::span<const double>(map_grad.data(), kl)},
      {model_.map.a_ir, std::span<const double>(map_grad.data() + kl, kl)},
      {model_.map.a_ri, std::span<const double>(map_grad.data() + 2 * kl, kl)},
      {model_.map.a_ii, std::span<const double>(map_grad.data() + 3 * kl, kl)},
  };
  opt_map_.step(blocks, adam);
  return total * scale;
}

void run_training(Trainer& trainer, const TripleStore& store, const TrainOptions& opts) {
  const TrainConfig& cfg = trainer.config();
  std::vector<TypePair> valid_sample = validation_sample(store);
  CheckpointMeta meta;
  meta.entity_hash = store.entities.hash();
  meta.relation_hash = store.relations.hash();
  meta.type_hash = store.types.hash();

  while (trainer.step() < cfg.total_steps) {
    std::int64_t s = trainer.step();
    Phase p = trainer.phase_at(s);
    double loss = trainer.run_step();

    std::optional<double> valid_mrr;
    if ((s + 1) % cfg.alternation_period == 0 && !valid_sample.empty()) {
      ModelTypeScorer scorer(trainer.model());
      valid_mrr = evaluate(valid_sample, scorer, store, opts.threads).mrr;
    }

    if (opts.log) {
      nlohmann::json rec;
      rec["step"] = s;
      rec["phase"] = phase_name(p);
      rec["loss"] = loss;
      if (valid_mrr) rec["valid_mrr"] = *valid_mrr;
      (*opts.log) << rec.dump() << "\n";
    }

    if (!opts.out_dir.empty() && cfg.checkpoint_interval > 0 &&
        (s + 1) % cfg.checkpoint_interval == 0 && (s + 1) < cfg.total_steps) {
      meta.step = s + 1;
      save_checkpoint(opts.out_dir + "/checkpoint_" + std::to_string(s + 1) + ".bin",
                      trainer.model(), meta, &cfg, opts.manifest_ref);
    }
  }

  if (!opts.out_dir.empty()) {
    meta.step = trainer.step();
    save_checkpoint(opts.out_dir + "/checkpoint.bin", trainer.model(), meta, &cfg,
                    opts.manifest_ref);
  }
}

}  // namespace corekg
