#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "corekg/embedding.hpp"
#include "corekg/model.hpp"
#include "corekg/optimizer.hpp"
#include "corekg/sampler.hpp"

using namespace corekg;

TEST_CASE("table layout by parameterization") {
  EmbeddingTable free_table(Param::kFreeComplex, 3, 5);
  CHECK(free_table.row_width() == 10);
  CHECK(free_table.row(0).size() == 10);

  EmbeddingTable phase_table(Param::kPhase, 3, 5);
  CHECK(phase_table.row_width() == 5);
}

TEST_CASE("init_uniform respects bounds and parameterization") {
  auto rng = make_rng(31, 0);
  EmbeddingTable free_table(Param::kFreeComplex, 10, 8);
  free_table.init_uniform(rng, 0.03);
  for (std::int64_t r = 0; r < 10; ++r)
    for (double x : free_table.row(r)) CHECK(std::abs(x) <= 0.03);

  EmbeddingTable phase_table(Param::kPhase, 10, 8);
  phase_table.init_uniform(rng, 0.03);  // bound ignored, phases span [-pi, pi]
  bool beyond_bound = false;
  for (std::int64_t r = 0; r < 10; ++r)
    for (double x : phase_table.row(r)) {
      CHECK(std::abs(x) <= std::numbers::pi);
      if (std::abs(x) > 0.03) beyond_bound = true;
    }
  CHECK(beyond_bound);
}

TEST_CASE("read_complex materializes phases on the unit circle") {
  auto rng = make_rng(32, 0);
  EmbeddingTable phase_table(Param::kPhase, 4, 6);
  phase_table.init_uniform(rng, 0.0);
  std::vector<double> re(6), im(6);
  for (std::int64_t r = 0; r < 4; ++r) {
    phase_table.read_complex(r, re, im);
    for (int i = 0; i < 6; ++i) {
      double mod = re[i] * re[i] + im[i] * im[i];
      CHECK(mod == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(re[i] == doctest::Approx(std::cos(phase_table.row(r)[i])).epsilon(1e-15));
    }
  }

  EmbeddingTable free_table(Param::kFreeComplex, 2, 3);
  free_table.init_uniform(rng, 1.0);
  free_table.read_complex(1, std::span<double>(re.data(), 3), std::span<double>(im.data(), 3));
  for (int i = 0; i < 3; ++i) {
    CHECK(re[i] == free_table.row(1)[i]);
    CHECK(im[i] == free_table.row(1)[3 + i]);
  }
}

TEST_CASE("unit modulus survives optimizer steps on phase rows") {
  auto rng = make_rng(33, 0);
  EmbeddingTable phase_table(Param::kPhase, 5, 4);
  phase_table.init_uniform(rng, 0.0);
  SparseAdam opt(5, 4);
  std::vector<double> re(4), im(4);
  for (int step = 0; step < 25; ++step) {
    RowGrads grads;
    grads[step % 5] = {0.3, -0.7, 1.1, 0.05};
    opt.step(std::span<double>(phase_table.data()), grads, {1e-2, 0.9, 0.999, 1e-8});
  }
  for (std::int64_t r = 0; r < 5; ++r) {
    phase_table.read_complex(r, re, im);
    for (int i = 0; i < 4; ++i)
      CHECK(re[i] * re[i] + im[i] * im[i] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("content_hash detects single-component changes") {
  auto rng = make_rng(34, 0);
  EmbeddingTable a(Param::kFreeComplex, 4, 4);
  a.init_uniform(rng, 0.5);
  auto h0 = a.content_hash();
  CHECK(a.content_hash() == h0);
  a.row(2)[3] += 1e-12;
  CHECK(a.content_hash() != h0);
}

TEST_CASE("model construction follows the kind") {
  CoreModel complex_model(ModelKind::kComplEx, 6, 4, 10, 3, 5);
  CHECK(complex_model.entity.param() == Param::kFreeComplex);
  CHECK(complex_model.kg_relation.param() == Param::kFreeComplex);
  CHECK(complex_model.entity.rows() == 10);
  CHECK(complex_model.kg_relation.rows() == 3);
  CHECK(complex_model.type.rows() == 5);
  CHECK(complex_model.type_relation.rows() == 3);
  CHECK(complex_model.map.k == 6);
  CHECK(complex_model.map.l == 4);

  CoreModel rotate_model(ModelKind::kRotatE, 6, 4, 10, 3, 5);
  CHECK(rotate_model.entity.param() == Param::kFreeComplex);
  CHECK(rotate_model.kg_relation.param() == Param::kPhase);
  CHECK(rotate_model.type_relation.param() == Param::kPhase);
}

TEST_CASE("model init is a pure function of the seed") {
  CoreModel a(ModelKind::kRotatE, 6, 4, 10, 3, 5);
  CoreModel b(ModelKind::kRotatE, 6, 4, 10, 3, 5);
  a.init(99, 24.0, 24.0);
  b.init(99, 24.0, 24.0);
  CHECK(a.entity.content_hash() == b.entity.content_hash());
  CHECK(a.kg_relation.content_hash() == b.kg_relation.content_hash());
  CHECK(a.type.content_hash() == b.type.content_hash());
  CHECK(a.type_relation.content_hash() == b.type_relation.content_hash());
  CHECK(a.map.content_hash() == b.map.content_hash());

  CoreModel c(ModelKind::kRotatE, 6, 4, 10, 3, 5);
  c.init(100, 24.0, 24.0);
  CHECK(c.entity.content_hash() != a.entity.content_hash());
}

TEST_CASE("model init bounds follow the margins") {
  CoreModel m(ModelKind::kComplEx, 8, 4, 20, 4, 10);
  m.init(5, 16.0, 2.0);
  for (std::int64_t r = 0; r < 20; ++r)
    for (double x : m.entity.row(r)) CHECK(std::abs(x) <= 16.0 / 8);
  for (std::int64_t r = 0; r < 10; ++r)
    for (double x : m.type.row(r)) CHECK(std::abs(x) <= 2.0 / 4);
}
