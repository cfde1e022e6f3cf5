#include <doctest.h>

#include <random>

#include "frobstab/catalog.hpp"
#include "frobstab/exact_structure.hpp"
#include "../support/oracles.hpp"

using namespace frobstab;

namespace {

CategoryPtr group_category(std::shared_ptr<const GroupData> g, Residue p) {
  return ModuleCategory::group_modules(std::move(g), nullptr, p, Side::ambient, "test");
}

}  // namespace

TEST_CASE("build_group examples") {
  CHECK(build_group({permutation_from_cycles({{1, 2}}, 2)}).order() == 2);
  const auto s3 = build_group({permutation_from_cycles({{1, 2}}, 3), permutation_from_cycles({{1, 2, 3}}, 3)});
  CHECK(s3.order() == 6);
  CHECK(build_group({}).order() == 1);
  CHECK(symmetric_group(4)->order() == 24);
  CHECK_THROWS_AS(build_group({permutation_from_cycles({{1, 2, 3, 4, 5, 6, 7}}, 7),
                               permutation_from_cycles({{1, 2}}, 7)},
                              100),
                  GroupError);
  CHECK_THROWS_AS(build_group({Permutation{0, 0}}), GroupError);
}

TEST_CASE("group law: identity first, inverses, associativity") {
  const auto g = symmetric_group(4);
  CHECK(g->label(0) == "e");
  for (std::size_t a = 0; a < g->order(); ++a) {
    CHECK(g->mult(0, a) == a);
    CHECK(g->mult(a, g->inverse(a)) == 0);
    for (std::size_t b = 0; b < g->order(); b += 5) {
      for (std::size_t c = 0; c < g->order(); c += 7) {
        CHECK(g->mult(g->mult(a, b), c) == g->mult(a, g->mult(b, c)));
      }
    }
  }
}

TEST_CASE("subgroup_closure examples and coset bookkeeping") {
  const auto s3 = symmetric_group(3);
  const std::size_t c3[] = {element_of(*s3, {{1, 2, 3}})};
  const auto a3 = subgroup_closure(s3, c3);
  CHECK(a3.order() == 3);
  CHECK(a3.index() == 2);

  const auto trivial = subgroup_closure(s3, {});
  CHECK(trivial.order() == 1);
  CHECK(trivial.index() == 6);

  std::vector<std::size_t> all(6);
  for (std::size_t k = 0; k < 6; ++k) all[k] = k;
  const auto whole = subgroup_closure(s3, all);
  CHECK(whole.order() == 6);
  CHECK(whole.index() == 1);

  const auto s4 = symmetric_group(4);
  const std::size_t gens[] = {element_of(*s4, {{1, 2}}), element_of(*s4, {{3, 4}})};
  const auto h = subgroup_closure(s4, gens);
  CHECK(h.order() * h.index() == 24);
  CHECK(h.coset_reps().front() == 0);
  for (std::size_t g = 0; g < 24; ++g) {
    const auto& e = h.lookup(g);
    CHECK(h.contains(e.h));
    CHECK(s4->mult(h.coset_reps()[e.coset], e.h) == g);
  }
}

TEST_CASE("algebra validation and constructors") {
  CHECK_THROWS_AS(AlgebraData(2, 1, {1}, {0}), AlgebraError);
  // e0 e0 = e1, e1 e1 = e0: not associative with unit
  CHECK_THROWS_AS(AlgebraData(3, 2, {0, 1, 0, 0, 0, 0, 1, 0}, {1, 0}), AlgebraError);
  const auto t = upper_triangular_2x2(5);
  CHECK(t.dim() == 3);
  const auto x3 = truncated_polynomial(3, 3);
  CHECK(x3.multiply({0, 1, 0}, {0, 0, 1}) == std::vector<Residue>{0, 0, 0});
  CHECK(x3.multiply({0, 1, 0}, {0, 1, 0}) == std::vector<Residue>{0, 0, 1});
}

TEST_CASE("is_frobenius_algebra examples") {
  const auto kc2 = group_algebra(*cyclic_group(2), 2);
  const auto l = is_frobenius_algebra(kc2, 0);
  REQUIRE(l);
  CHECK(*l == std::vector<Residue>{1, 0});
  CHECK(inverse(frobenius_gram(kc2, *l)));

  const auto x2 = truncated_polynomial(2, 3);
  const auto lx = is_frobenius_algebra(x2, 0);
  REQUIRE(lx);
  CHECK(*lx == std::vector<Residue>{0, 1});

  // no functional on the 3-dimensional upper-triangular algebra gives a nondegenerate form
  const auto t = upper_triangular_2x2(2);
  CHECK_FALSE(is_frobenius_algebra(t, 0));
  std::size_t nondegenerate = 0;
  oracle::for_each_vector(2, 3, [&](const oracle::Vec& v) {
    if (inverse(frobenius_gram(t, std::vector<Residue>(v.begin(), v.end())))) ++nondegenerate;
  });
  CHECK(nondegenerate == 0);
}

TEST_CASE("modules reject invalid actions with the offending relation") {
  auto cat = group_category(cyclic_group(3), 3);
  // an order-2 matrix cannot represent a generator of order 3
  try {
    ModuleRep(cat, 2, {FpMatrix::from_rows(3, {{0, 1}, {1, 0}})});
    FAIL("expected RepresentationError");
  } catch (const RepresentationError& e) {
    CHECK(std::string(e.what()).find("relation") != std::string::npos);
  }
  CHECK_THROWS_AS(ModuleRep(cat, 2, {}), RepresentationError);
  CHECK_THROWS_AS(ModuleRep(cat, 2, {FpMatrix::identity(5, 2)}), RepresentationError);
  CHECK(ModuleRep::zero(cat).dim() == 0);
}

TEST_CASE("hom_space examples") {
  const auto c3 = builtin_context("C3:1:p3");
  CHECK(hom_space(trivial_module(c3.ambient()), trivial_module(c3.ambient())).size() == 1);
  CHECK(hom_space(jordan_block(c3, 2), jordan_block(c3, 3)).size() == 2);

  const auto c2 = builtin_context("C2:1:p2");
  const auto reg = regular_module(c2.ambient());
  CHECK(hom_space(reg, reg).size() == 2);
}

TEST_CASE("hom_space dimension matches brute-force enumeration") {
  for (const char* name : {"C2:1:p2", "C3:1:p3", "S3:A3:p3", "A:x3:p3", "A:kC2:p2"}) {
    const auto ctx = builtin_context(name);
    ModuleSampler s(ctx, 11, 3);
    for (int t = 0; t < 8; ++t) {
      const auto x = s.ambient_module();
      const auto y = s.ambient_module();
      if (oracle::ipow(ctx.modulus(), x.dim() * y.dim()) > (1u << 14)) continue;
      const auto basis = hom_space(x, y);
      CHECK(basis.size() == oracle::hom_dim(x, y));
    }
  }
}

TEST_CASE("hom_space contains the identity and is additive") {
  const auto ctx = builtin_context("S3:C2:p3");
  ModuleSampler s(ctx, 5, 4);
  for (int t = 0; t < 10; ++t) {
    const auto x = s.ambient_module();
    const auto y = s.ambient_module();
    const auto z = s.ambient_module();
    const auto basis = hom_space(x, x);
    std::vector<FpMatrix> mats;
    for (const auto& b : basis) mats.push_back(b.matrix());
    if (x.dim() > 0) CHECK(solve_combination(mats, FpMatrix::identity(3, x.dim())));
    CHECK(hom_space(direct_sum(x, y).sum, z).size() == hom_space(x, z).size() + hom_space(y, z).size());
  }
}

TEST_CASE("context mismatch is detected") {
  const auto a = builtin_context("C3:1:p3");
  const auto b = builtin_context("C3:1:p3");
  CHECK_THROWS_AS(hom_space(trivial_module(a.ambient()), trivial_module(b.ambient())), ContextMismatch);
  CHECK_THROWS_AS(direct_sum(trivial_module(a.ambient()), trivial_module(b.ambient())), ContextMismatch);
}

TEST_CASE("direct_sum examples and biproduct identities") {
  const auto c2 = builtin_context("C2:1:p2");
  const auto j1 = jordan_block(c2, 1);
  const auto s = direct_sum(j1, j1);
  CHECK(s.sum.dim() == 2);
  CHECK(s.sum.action()[0].is_identity());
  CHECK(direct_sum(j1, ModuleRep::zero(c2.ambient())).sum.action() == j1.action());

  const auto c3 = builtin_context("C3:1:p3");
  const auto d = direct_sum(jordan_block(c3, 1), jordan_block(c3, 2));
  CHECK(d.sum.dim() == 3);
  CHECK(d.sum.action()[0] == FpMatrix::from_rows(3, {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}));
  CHECK(compose(d.projection_first, d.inclusion_first) == ModuleMap::identity(jordan_block(c3, 1)));
  CHECK(compose(d.projection_second, d.inclusion_first).matrix().is_zero());
  CHECK((compose(d.inclusion_first, d.projection_first) + compose(d.inclusion_second, d.projection_second)) ==
        ModuleMap::identity(d.sum));
}

TEST_CASE("split_idempotent examples") {
  const auto c3 = builtin_context("C3:1:p3");
  const auto d = direct_sum(jordan_block(c3, 1), jordan_block(c3, 2));
  const auto x = d.sum;

  const auto whole = split_idempotent(x, ModuleMap::identity(x));
  CHECK(whole.summand.dim() == 3);
  CHECK(split_idempotent(x, ModuleMap::zero(x, x)).summand.dim() == 0);

  const auto e = compose(d.inclusion_first, d.projection_first);
  const auto first = split_idempotent(x, e);
  CHECK(first.summand.dim() == 1);
  CHECK(first.summand.action()[0].is_identity());
  CHECK(compose(first.inclusion, first.projection) == e);
  CHECK(compose(first.projection, first.inclusion) == ModuleMap::identity(first.summand));

  const auto not_idem = scale(ModuleMap::identity(x), 2);
  CHECK_THROWS_AS(split_idempotent(x, not_idem), RepresentationError);
}

TEST_CASE("complementary idempotents split X into summands whose sum is isomorphic to X") {
  const auto ctx = builtin_context("C2:1:p2");
  ModuleSampler s(ctx, 3, 3);
  std::size_t checked = 0;
  for (int t = 0; t < 20; ++t) {
    const auto x = direct_sum(s.ambient_module(), s.ambient_module()).sum;
    if (x.dim() > 6) continue;
    // idempotents found by enumerating endomorphisms
    for (const auto& e : hom_space(x, x)) {
      if (e.matrix() * e.matrix() != e.matrix()) continue;
      const auto a = split_idempotent(x, e);
      const auto b = split_idempotent(x, ModuleMap::identity(x) - e);
      const auto back = direct_sum(a.summand, b.summand).sum;
      if (!iso_search_is_exhaustive(back, x)) continue;
      CHECK(is_isomorphic(back, x));
      ++checked;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("is_isomorphic examples and symmetry") {
  const auto c2 = builtin_context("C2:1:p2");
  const auto j2 = jordan_block(c2, 2);
  CHECK(is_isomorphic(j2, j2));
  CHECK_FALSE(is_isomorphic(jordan_block(c2, 1), j2));
  const auto iso = is_isomorphic(j2, regular_module(c2.ambient()));
  REQUIRE(iso);
  CHECK(inverse(iso->matrix()));

  const auto c3 = builtin_context("C3:1:p3");
  const auto a = direct_sum(jordan_block(c3, 1), jordan_block(c3, 2)).sum;
  const auto b = direct_sum(jordan_block(c3, 2), jordan_block(c3, 1)).sum;
  const auto c = direct_sum(jordan_block(c3, 1), jordan_block(c3, 1)).sum;
  CHECK(is_isomorphic(a, b));
  CHECK(is_isomorphic(b, a));
  const auto d = direct_sum(c, jordan_block(c3, 1)).sum;
  REQUIRE(iso_search_is_exhaustive(a, d));
  CHECK_FALSE(is_isomorphic(a, d));
  CHECK_FALSE(is_isomorphic(d, a));
}

TEST_CASE("kernels, cokernels, submodules and quotients") {
  const auto c3 = builtin_context("C3:1:p3");
  const auto j3 = jordan_block(c3, 3);
  const auto j1 = jordan_block(c3, 1);
  const auto f = hom_space(j3, j1).front();
  const auto k = kernel(f);
  CHECK(k.module.dim() == 2);
  CHECK(is_isomorphic(k.module, jordan_block(c3, 2)));
  const auto q = cokernel(hom_space(j1, j3).front());
  CHECK(q.module.dim() == 2);
  CHECK((q.projection.matrix() * q.section).is_identity());
  FpMatrix v(3, 3, 1);
  v.set(0, 0, 1);
  CHECK(spin(j3, v).cols() == 3);
}

TEST_CASE("restricted and induced dims for subgroup contexts") {
  const auto ctx = builtin_context("S3:A3:p3");
  const auto reg = regular_module(ctx.ambient());
  CHECK(reg.dim() == 6);
  CHECK(ctx.restrict(reg).dim() == 6);
}
