#include "corekg/regression.hpp"

#include <cmath>
#include <stdexcept>

#include "corekg/sampler.hpp"
#include "corekg/util.hpp"

namespace corekg {

RegressionMap::RegressionMap(std::int64_t k_, std::int64_t l_)
    : k(k_),
      l(l_),
      a_rr(static_cast<std::size_t>(k_ * l_), 0.0),
      a_ir(static_cast<std::size_t>(k_ * l_), 0.0),
      a_ri(static_cast<std::size_t>(k_ * l_), 0.0),
      a_ii(static_cast<std::size_t>(k_ * l_), 0.0) {}

void RegressionMap::init_uniform(std::mt19937_64& rng) {
  double bound = 1.0 / std::sqrt(static_cast<double>(k));
  for (auto* m : {&a_rr, &a_ir, &a_ri, &a_ii})
    for (double& x : *m) x = uniform_real(rng, -bound, bound);
}

void RegressionMap::project(std::span<const double> er, std::span<const double> ei,
                            std::span<double> pr, std::span<double> pi) const {
  if (er.size() != static_cast<std::size_t>(k) || ei.size() != static_cast<std::size_t>(k) ||
      pr.size() != static_cast<std::size_t>(l) || pi.size() != static_cast<std::size_t>(l))
    throw std::invalid_argument("project: dimension mismatch");
  for (std::int64_t j = 0; j < l; ++j) {
    pr[j] = 0.0;
    pi[j] = 0.0;
  }
  for (std::int64_t i = 0; i < k; ++i) {
    const double* rr = a_rr.data() + i * l;
    const double* ir = a_ir.data() + i * l;
    const double* ri = a_ri.data() + i * l;
    const double* ii = a_ii.data() + i * l;
    double xr = er[i], xi = ei[i];
    for (std::int64_t j = 0; j < l; ++j) {
      pr[j] += rr[j] * xr + ir[j] * xi;
      pi[j] += ri[j] * xr + ii[j] * xi;
    }
  }
}

std::uint64_t RegressionMap::content_hash() const {
  std::uint64_t h = kFnvOffset;
  for (const auto* m : {&a_rr, &a_ir, &a_ri, &a_ii})
    h = fnv1a64_bytes(m->data(), m->size() * sizeof(double), h);
  return h;
}

double residual_score(std::span<const double> pr, std::span<const double> pi,
                      std::span<const double> tr, std::span<const double> ti,
                      std::span<double> uh, std::span<double> vh) {
  std::size_t l = pr.size();
  if (pi.size() != l || tr.size() != l || ti.size() != l || uh.size() != l || vh.size() != l)
    throw std::invalid_argument("residual_score: dimension mismatch");
  double nu = 0.0, nv = 0.0;
  for (std::size_t j = 0; j < l; ++j) {
    uh[j] = pr[j] - tr[j];
    vh[j] = pi[j] - ti[j];
    nu += uh[j] * uh[j];
    nv += vh[j] * vh[j];
  }
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  for (std::size_t j = 0; j < l; ++j) {
    uh[j] = nu > 0.0 ? uh[j] / nu : 0.0;
    vh[j] = nv > 0.0 ? vh[j] / nv : 0.0;
  }
  return nu + nv;
}

double regression_score(const RegressionMap& map, std::span<const double> er,
                        std::span<const double> ei, std::span<const double> tr,
                        std::span<const double> ti) {
  std::vector<double> pr(map.l), pi(map.l);
  map.project(er, ei, pr, pi);
  double nu = 0.0, nv = 0.0;
  for (std::int64_t j = 0; j < map.l; ++j) {
    double u = pr[j] - tr[j];
    double v = pi[j] - ti[j];
    nu += u * u;
    nv += v * v;
  }
  return std::sqrt(nu) + std::sqrt(nv);
}

double regression_grad(const RegressionMap& map, std::span<const double> er,
                       std::span<const double> ei, std::span<const double> tr,
                       std::span<const double> ti, RegressionGrad& g) {
  std::size_t k = static_cast<std::size_t>(map.k);
  std::size_t l = static_cast<std::size_t>(map.l);
  std::vector<double> pr(l), pi(l), uh(l), vh(l);
  map.project(er, ei, pr, pi);
  double score = residual_score(pr, pi, tr, ti, uh, vh);

  g.d_er.assign(k, 0.0);
  g.d_ei.assign(k, 0.0);
  g.d_tr.resize(l);
  g.d_ti.resize(l);
  g.d_a_rr.resize(k * l);
  g.d_a_ir.resize(k * l);
  g.d_a_ri.resize(k * l);
  g.d_a_ii.resize(k * l);

  for (std::size_t j = 0; j < l; ++j) {
    g.d_tr[j] = -uh[j];
    g.d_ti[j] = -vh[j];
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double* rr = map.a_rr.data() + i * l;
    const double* ir = map.a_ir.data() + i * l;
    const double* ri = map.a_ri.data() + i * l;
    const double* ii = map.a_ii.data() + i * l;
    double xr = er[i], xi = ei[i];
    double der = 0.0, dei = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
      g.d_a_rr[i * l + j] = uh[j] * xr;
      g.d_a_ir[i * l + j] = uh[j] * xi;
      g.d_a_ri[i * l + j] = vh[j] * xr;
      g.d_a_ii[i * l + j] = vh[j] * xi;
      der += rr[j] * uh[j] + ri[j] * vh[j];
      dei += ir[j] * uh[j] + ii[j] * vh[j];
    }
    g.d_er[i] = der;
    g.d_ei[i] = dei;
  }
  return score;
}

}  // namespace corekg
