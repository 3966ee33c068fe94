#include "corekg/model.hpp"

#include <vector>

#include "corekg/sampler.hpp"

namespace corekg {

CoreModel::CoreModel(ModelKind kind_, std::int64_t k_, std::int64_t l_, std::int64_t n_entities,
                     std::int64_t n_relations, std::int64_t n_types)
    : kind(kind_),
      k(k_),
      l(l_),
      entity(Param::kFreeComplex, n_entities, k_),
      kg_relation(kind_ == ModelKind::kRotatE ? Param::kPhase : Param::kFreeComplex, n_relations,
                  k_),
      type(Param::kFreeComplex, n_types, l_),
      type_relation(kind_ == ModelKind::kRotatE ? Param::kPhase : Param::kFreeComplex,
                    n_relations, l_),
      map(k_, l_) {}

void CoreModel::init(std::uint64_t seed, double gamma1, double gamma2) {
  auto rng = make_rng(seed, 0);
  entity.init_uniform(rng, gamma1 / static_cast<double>(k));
  kg_relation.init_uniform(rng, gamma1 / static_cast<double>(k));
  type.init_uniform(rng, gamma2 / static_cast<double>(l));
  type_relation.init_uniform(rng, gamma2 / static_cast<double>(l));
  map.init_uniform(rng);
}

double CoreModel::type_score(EntityId e, TypeId t) const {
  std::vector<double> er(k), ei(k), pr(l), pi(l), tr(l), ti(l), uh(l), vh(l);
  entity.read_complex(e, er, ei);
  map.project(er, ei, pr, pi);
  type.read_complex(t, tr, ti);
  return residual_score(pr, pi, tr, ti, uh, vh);
}

}  // namespace corekg
