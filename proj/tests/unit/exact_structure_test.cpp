#include <doctest.h>

#include <random>

#include "frobstab/catalog.hpp"
#include "frobstab/exact_structure.hpp"
#include "../support/oracles.hpp"

using namespace frobstab;

namespace {

// the socle inclusion J_1 -> J_n and the top projection J_n -> J_1 of a cyclic p-group
ModuleMap socle(const AdjointContext& ctx, std::size_t n) {
  FpMatrix m(ctx.modulus(), n, 1);
  m.set(n - 1, 0, 1);
  return ModuleMap(jordan_block(ctx, 1), jordan_block(ctx, n), m);
}

ModuleMap top(const AdjointContext& ctx, std::size_t n) {
  FpMatrix m(ctx.modulus(), 1, n);
  m.set(0, 0, 1);
  return ModuleMap(jordan_block(ctx, n), jordan_block(ctx, 1), m);
}

}  // namespace

TEST_CASE("ShortExactSeq rejects non-exact pairs") {
  const auto ctx = builtin_context("C3:1:p3");
  const auto j1 = jordan_block(ctx, 1);
  const auto j3 = jordan_block(ctx, 3);
  CHECK_NOTHROW(ShortExactSeq(ModuleMap::identity(j1), ModuleMap::zero(j1, ModuleRep::zero(ctx.ambient()))));
  // d . i != 0
  CHECK_THROWS_AS(ShortExactSeq(socle(ctx, 3), ModuleMap::identity(j3)), NotExact);
  // im i smaller than ker d
  CHECK_THROWS_AS(ShortExactSeq(socle(ctx, 3), top(ctx, 3)), NotExact);
  // inflation not injective
  CHECK_THROWS_AS(ShortExactSeq(ModuleMap::zero(j1, j3), top(ctx, 3)), NotExact);

  // random pairs: exact ones are accepted and nothing else
  ModuleSampler s(ctx, 21, 4);
  for (int t = 0; t < 40; ++t) {
    const auto x = s.ambient_module();
    const auto y = s.ambient_module();
    const auto z = s.ambient_module();
    const auto i = s.random_map(x, y);
    const auto d = s.random_map(y, z);
    const bool exact = (d.matrix() * i.matrix()).is_zero() && i.is_injective() && d.is_surjective() &&
                       rank(i.matrix()) + rank(d.matrix()) == y.dim();
    bool accepted = true;
    try {
      ShortExactSeq seq(i, d);
    } catch (const NotExact&) {
      accepted = false;
    }
    CHECK(accepted == exact);
  }
}

TEST_CASE("is_split_epi and is_split_mono examples") {
  const auto ctx = builtin_context("C2:1:p2");
  const auto j2 = jordan_block(ctx, 2);
  const auto j1 = jordan_block(ctx, 1);
  CHECK(is_split_epi(ModuleMap::identity(j2)) == ModuleMap::identity(j2));
  CHECK(is_split_mono(ModuleMap::identity(j2)) == ModuleMap::identity(j2));
  CHECK_FALSE(is_split_epi(top(ctx, 2)));
  CHECK_FALSE(oracle::has_section(top(ctx, 2)));
  CHECK_FALSE(is_split_mono(socle(ctx, 2)));
  CHECK_FALSE(oracle::has_retraction(socle(ctx, 2)));

  const auto s = direct_sum(j2, j1);
  CHECK(is_split_epi(s.projection_first) == s.inclusion_first);
  CHECK(is_split_mono(s.inclusion_first) == s.projection_first);
}

TEST_CASE("split detection agrees with brute-force enumeration") {
  for (const char* name : {"C2:1:p2", "C3:1:p3", "A:x3:p3"}) {
    const auto ctx = builtin_context(name);
    ModuleSampler s(ctx, 31, 3);
    for (int t = 0; t < 25; ++t) {
      const auto x = s.ambient_module();
      const auto y = s.ambient_module();
      if (oracle::ipow(ctx.modulus(), x.dim() * y.dim()) > (1u << 12)) continue;
      const auto f = s.random_map(x, y);
      CHECK(is_split_epi(f).has_value() == oracle::has_section(f));
      CHECK(is_split_mono(f).has_value() == oracle::has_retraction(f));
    }
  }
}

TEST_CASE("relative membership examples") {
  const auto c2 = builtin_context("C2:1:p2");
  const ShortExactSeq s(socle(c2, 2), top(c2, 2));
  const auto m = in_relative_structure(c2, s);
  CHECK(m.member);
  REQUIRE(m.section);
  CHECK((c2.restrict(s.deflation()).matrix() * m.section->matrix()).is_identity());

  // H = G: membership is plain splitting
  const auto whole = builtin_context("C2:G:p2");
  FpMatrix i(2, 2, 1);
  i.set(1, 0, 1);
  FpMatrix d(2, 1, 2);
  d.set(0, 0, 1);
  const ShortExactSeq t(ModuleMap(jordan_block(whole, 1), jordan_block(whole, 2), i),
                        ModuleMap(jordan_block(whole, 2), jordan_block(whole, 1), d));
  CHECK_FALSE(in_relative_structure(whole, t).member);
  CHECK(in_relative_structure(whole, split_sequence(jordan_block(whole, 1), jordan_block(whole, 2))).member);
}

TEST_CASE("relative membership over (S3, A3, 3) agrees with a brute-force section search") {
  const auto ctx = builtin_context("S3:A3:p3");
  ModuleSampler s(ctx, 41, 4);
  std::size_t checked = 0;
  for (int t = 0; t < 40; ++t) {
    const auto y = s.ambient_module();
    const auto z = s.ambient_module(2);
    const auto d = s.random_map(y, z);
    if (!d.is_surjective()) continue;
    if (oracle::ipow(3, y.dim() * z.dim()) > (1u << 14)) continue;
    const auto seq = complete_deflation(d);
    CHECK(in_relative_structure(ctx, seq).member == oracle::has_section(ctx.restrict(d)));
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("relative membership is invariant under conjugation by isomorphisms") {
  const auto ctx = builtin_context("C3:1:p3");
  ModuleSampler s(ctx, 43, 6);
  for (int t = 0; t < 20; ++t) {
    const auto seq = s.relative_sequence();
    const auto y = seq.middle();
    // an automorphism of Y found among endomorphisms
    const auto ends = hom_space(y, y);
    std::vector<FpMatrix> mats;
    for (const auto& e : ends) mats.push_back(e.matrix());
    const auto c = invertible_combination(mats, t, 64);
    REQUIRE(c);
    const auto a = combine(ends, *c, y, y);
    const auto ainv = ModuleMap(y, y, *inverse(a.matrix()));
    const ShortExactSeq conj(compose(a, seq.inflation()), compose(seq.deflation(), ainv));
    CHECK(in_relative_structure(ctx, conj).member == in_relative_structure(ctx, seq).member);
  }
}

TEST_CASE("split sequences are always relative") {
  for (const char* name : {"C2:1:p2", "S3:C2:p3", "A:x3:p3"}) {
    const auto ctx = builtin_context(name);
    ModuleSampler s(ctx, 47, 4);
    for (int t = 0; t < 10; ++t) {
      CHECK(in_relative_structure(ctx, split_sequence(s.ambient_module(), s.ambient_module())).member);
    }
  }
}

TEST_CASE("pullback_deflation examples") {
  const auto ctx = builtin_context("C3:1:p3");
  const auto d = top(ctx, 3);
  const auto f = top(ctx, 2);
  const auto pb = pullback_deflation(d, f);
  CHECK(pb.object.dim() == 4);
  CHECK(pb.deflation.is_surjective());
  CHECK(pb.deflation.target() == jordan_block(ctx, 2));
  CHECK(d.matrix() * pb.to_middle.matrix() == f.matrix() * pb.deflation.matrix());

  const auto along_id = pullback_deflation(d, ModuleMap::identity(jordan_block(ctx, 1)));
  CHECK(is_isomorphic(along_id.object, jordan_block(ctx, 3)));
  const auto of_id = pullback_deflation(ModuleMap::identity(jordan_block(ctx, 1)), top(ctx, 2));
  CHECK(is_isomorphic(of_id.object, jordan_block(ctx, 2)));
  CHECK(inverse(of_id.deflation.matrix()));

  CHECK_THROWS(pullback_deflation(socle(ctx, 3), ModuleMap::identity(jordan_block(ctx, 3))));
}

TEST_CASE("pushout_inflation examples") {
  const auto c2 = builtin_context("C2:1:p2");
  const auto po = pushout_inflation(socle(c2, 2), socle(c2, 2));
  CHECK(po.object.dim() == 3);
  CHECK(po.inflation.is_injective());
  CHECK(po.from_middle.matrix() * socle(c2, 2).matrix() == po.inflation.matrix() * socle(c2, 2).matrix());

  const auto ctx = builtin_context("C3:1:p3");
  const auto j1 = jordan_block(ctx, 1);
  CHECK(is_isomorphic(pushout_inflation(socle(ctx, 3), ModuleMap::identity(j1)).object, jordan_block(ctx, 3)));
  CHECK(is_isomorphic(pushout_inflation(ModuleMap::identity(j1), socle(ctx, 2)).object, jordan_block(ctx, 2)));
  CHECK_THROWS(pushout_inflation(top(ctx, 3), top(ctx, 3)));
}

TEST_CASE("pullback then pushout along the same data recovers the sequence") {
  const auto ctx = builtin_context("C2:1:p2");
  ModuleSampler s(ctx, 53, 4);
  std::size_t checked = 0;
  for (int t = 0; t < 30; ++t) {
    const auto seq = s.relative_sequence();
    if (seq.middle().dim() > 5) continue;
    // pull back along id_Z and push out along id_X
    const auto pb = pullback_deflation(seq.deflation(), ModuleMap::identity(seq.right()));
    const auto po = pushout_inflation(seq.inflation(), ModuleMap::identity(seq.left()));
    for (const auto& m : {pb.object, po.object}) {
      if (!iso_search_is_exhaustive(m, seq.middle())) continue;
      CHECK(is_isomorphic(m, seq.middle()));
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("axiom audit passes on the built-in contexts") {
  for (const char* name : {"C2:1:p2", "S3:A3:p3", "A:kC2:p2"}) {
    const auto ctx = builtin_context(name);
    AuditOptions o;
    o.samples = 50;
    const auto r = axiom_audit(ctx, o);
    INFO(name);
    CHECK(r.passed());
    for (const auto& a : r.axioms) CHECK(a.checked > 0);
  }
}

TEST_CASE("a corrupted pullback is caught with its seed") {
  const auto ctx = builtin_context("C2:1:p2");
  AuditOptions o;
  o.samples = 10;
  o.seed = 100;
  o.tamper_pullback = [](const Pullback& pb) {
    return Pullback{pb.object, ModuleMap::zero(pb.object, pb.deflation.target()), pb.to_middle};
  };
  const auto r = axiom_audit(ctx, o);
  CHECK_FALSE(r.passed());
  const auto& ex2 = r.axioms[2];
  CHECK(ex2.axiom == "Ex2");
  CHECK(ex2.failed > 0);
  REQUIRE_FALSE(ex2.failure_seeds.empty());
  CHECK(ex2.failure_seeds.front() >= 100);
  CHECK(ex2.failure_seeds.front() < 110);
}

TEST_CASE("audit is deterministic in the seed") {
  const auto ctx = builtin_context("C3:1:p3");
  AuditOptions o;
  o.samples = 15;
  o.seed = 9;
  const auto a = axiom_audit(ctx, o);
  const auto b = axiom_audit(ctx, o);
  for (std::size_t k = 0; k < a.axioms.size(); ++k) CHECK(a.axioms[k].checked == b.axioms[k].checked);
}
