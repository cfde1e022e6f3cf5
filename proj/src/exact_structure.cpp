#include "frobstab/exact_structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace frobstab {

ShortExactSeq::ShortExactSeq(ModuleMap inflation, ModuleMap deflation)
    : inflation_(std::move(inflation)), deflation_(std::move(deflation)) {
  if (!(inflation_.target() == deflation_.source())) {
    throw NotExact("inflation target differs from deflation source");
  }
  if (!(deflation_.matrix() * inflation_.matrix()).is_zero()) throw NotExact("d . i != 0");
  if (!inflation_.is_injective()) throw NotExact("inflation is not injective");
  if (!deflation_.is_surjective()) throw NotExact("deflation is not surjective");
  if (rank(inflation_.matrix()) + rank(deflation_.matrix()) != middle().dim()) {
    throw NotExact("image of the inflation differs from the kernel of the deflation");
  }
}

ShortExactSeq complete_inflation(const ModuleMap& i) {
  auto q = cokernel(i);
  return ShortExactSeq(i, q.projection);
}

ShortExactSeq complete_deflation(const ModuleMap& d) {
  auto k = kernel(d);
  return ShortExactSeq(k.inclusion, d);
}

ShortExactSeq zero_sequence(const CategoryPtr& category) {
  const ModuleRep z = ModuleRep::zero(category);
  return ShortExactSeq(ModuleMap::identity(z), ModuleMap::identity(z));
}

ShortExactSeq split_sequence(const ModuleRep& x, const ModuleRep& z) {
  auto ds = direct_sum(x, z);
  return ShortExactSeq(ds.inclusion_first, ds.projection_second);
}

namespace {

std::optional<ModuleMap> solve_in_hom(const std::vector<ModuleMap>& basis,
                                      const std::vector<FpMatrix>& images, const FpMatrix& target,
                                      const ModuleRep& source, const ModuleRep& dest) {
  if (basis.empty()) {
    if (target.is_zero()) return ModuleMap::zero(source, dest);
    return std::nullopt;
  }
  auto c = solve_combination(images, target);
  if (!c) return std::nullopt;
  return combine(basis, *c, source, dest);
}

}  // namespace

std::optional<ModuleMap> is_split_epi(const ModuleMap& f) {
  const ModuleRep& x = f.source();
  const ModuleRep& y = f.target();
  if (rank(f.matrix()) != y.dim()) return std::nullopt;
  const auto basis = hom_space(y, x);
  std::vector<FpMatrix> images;
  for (const auto& b : basis) images.push_back(f.matrix() * b.matrix());
  return solve_in_hom(basis, images, FpMatrix::identity(x.modulus(), y.dim()), y, x);
}

std::optional<ModuleMap> is_split_mono(const ModuleMap& f) {
  const ModuleRep& x = f.source();
  const ModuleRep& y = f.target();
  if (rank(f.matrix()) != x.dim()) return std::nullopt;
  const auto basis = hom_space(y, x);
  std::vector<FpMatrix> images;
  for (const auto& b : basis) images.push_back(b.matrix() * f.matrix());
  return solve_in_hom(basis, images, FpMatrix::identity(x.modulus(), x.dim()), y, x);
}

RelativeMembership in_relative_structure(const AdjointContext& ctx, const ShortExactSeq& s) {
  ctx.require_ambient(s.middle());
  RelativeMembership m;
  m.section = is_split_epi(ctx.left_adjoint(s.deflation()));
  m.retraction = is_split_mono(ctx.right_adjoint(s.inflation()));
  if (m.section.has_value() != m.retraction.has_value()) {
    throw std::logic_error("L-split and R-split membership tests disagree");
  }
  m.member = m.section.has_value();
  return m;
}

Pullback pullback_deflation(const ModuleMap& d, const ModuleMap& f) {
  if (!(d.target() == f.target())) throw std::invalid_argument("pullback: maps do not share a target");
  if (!d.is_surjective()) throw std::invalid_argument("pullback: d is not surjective");
  const ModuleRep& y = d.source();
  const ModuleRep& zp = f.source();
  const auto s = direct_sum(y, zp);
  const FpMatrix parts[] = {d.matrix(), f.matrix().negated()};
  const ModuleMap diff(s.sum, d.target(), FpMatrix::hstack(parts));
  const auto k = kernel(diff);
  return Pullback{k.module, compose(s.projection_second, k.inclusion),
                  compose(s.projection_first, k.inclusion)};
}

Pushout pushout_inflation(const ModuleMap& i, const ModuleMap& f) {
  if (!(i.source() == f.source())) throw std::invalid_argument("pushout: maps do not share a source");
  if (!i.is_injective()) throw std::invalid_argument("pushout: i is not injective");
  const ModuleRep& y = i.target();
  const ModuleRep& xp = f.target();
  const auto s = direct_sum(xp, y);
  const FpMatrix parts[] = {f.matrix(), i.matrix().negated()};
  const ModuleMap diag(i.source(), s.sum, FpMatrix::vstack(parts));
  const auto q = cokernel(diag);
  return Pushout{q.module, compose(q.projection, s.inclusion_first),
                 compose(q.projection, s.inclusion_second)};
}

// ---------------------------------------------------------------------------

ModuleSampler::ModuleSampler(const AdjointContext& ctx, std::uint64_t seed, std::size_t max_dim)
    : ctx_(ctx), rng_(seed), max_dim_(max_dim) {}

ModuleRep ModuleSampler::ambient_module() { return sample(ctx_.ambient(), max_dim_); }
ModuleRep ModuleSampler::ambient_module(std::size_t max_dim) { return sample(ctx_.ambient(), max_dim); }
ModuleRep ModuleSampler::base_module() { return sample(ctx_.base(), max_dim_); }
ModuleRep ModuleSampler::base_module(std::size_t max_dim) { return sample(ctx_.base(), max_dim); }

ModuleRep ModuleSampler::sample(const CategoryPtr& cat, std::size_t max_dim) {
  const Residue p = cat->modulus();
  if (max_dim == 0) return ModuleRep::zero(cat);
  if (cat->kind() == ModuleCategory::Kind::vector_space) {
    const std::size_t n = 1 + draw_below(rng_, std::min<std::size_t>(max_dim, 3));
    return ModuleRep(cat, n, {});
  }
  const ModuleRep reg = regular_module(cat);
  auto random_vector = [&](std::size_t n) {
    std::vector<Residue> v(n);
    for (auto& x : v) x = static_cast<Residue>(draw_below(rng_, p));
    return FpMatrix::column(p, v);
  };
  // a random vector pushed into a random power of the augmentation-type ideal, so that
  // smaller cyclic submodules show up regularly
  auto radical_vector = [&]() {
    FpMatrix v = random_vector(reg.dim());
    const std::size_t depth = draw_below(rng_, 3);
    for (std::size_t j = 0; j < depth && !reg.action().empty(); ++j) {
      const auto& a = reg.action()[draw_below(rng_, reg.action().size())];
      v = cat->kind() == ModuleCategory::Kind::group
              ? (a - FpMatrix::identity(p, reg.dim())) * v
              : a * v;
    }
    return v;
  };

  for (int attempt = 0; attempt < 24; ++attempt) {
    switch (draw_below(rng_, 6)) {
      case 0:
        if (cat->kind() == ModuleCategory::Kind::group) return trivial_module(cat);
        break;
      case 1:
        if (reg.dim() <= max_dim) return reg;
        break;
      case 2:
      case 3: {
        const FpMatrix basis = spin(reg, radical_vector());
        if (basis.cols() >= 1 && basis.cols() <= max_dim) return submodule(reg, basis).module;
        break;
      }
      case 4: {
        const FpMatrix basis = spin(reg, radical_vector());
        const std::size_t qd = reg.dim() - basis.cols();
        if (qd >= 1 && qd <= max_dim) return quotient(reg, basis).module;
        break;
      }
      case 5: {
        if (max_dim < 2) break;
        const std::size_t first = 1 + draw_below(rng_, max_dim - 1);
        const ModuleRep a = sample(cat, first);
        const ModuleRep b = sample(cat, max_dim - a.dim());
        return direct_sum(a, b).sum;
      }
    }
  }
  if (cat->kind() == ModuleCategory::Kind::group) return trivial_module(cat);
  // algebra fallback: smallest nonzero cyclic module found by spinning basis vectors
  for (std::size_t j = 0; j < reg.dim(); ++j) {
    FpMatrix e(p, reg.dim(), 1);
    e.set(reg.dim() - 1 - j, 0, 1);
    const FpMatrix basis = spin(reg, e);
    if (basis.cols() <= max_dim) return submodule(reg, basis).module;
  }
  return ModuleRep::zero(cat);
}

ModuleMap ModuleSampler::random_map(const ModuleRep& x, const ModuleRep& y) {
  const auto basis = hom_space(x, y);
  std::vector<Residue> c(basis.size());
  for (auto& v : c) v = static_cast<Residue>(draw_below(rng_, x.modulus()));
  return combine(basis, c, x, y);
}

ModuleMap ModuleSampler::relative_inflation(const ModuleRep& x, std::size_t extra_dim) {
  const ModuleMap eta = ctx_.unit(x);
  const ModuleRep u = ambient_module(extra_dim);
  const ModuleMap g = random_map(x, u);
  const auto s = direct_sum(eta.target(), u);
  const FpMatrix parts[] = {eta.matrix(), g.matrix()};
  return ModuleMap(x, s.sum, FpMatrix::vstack(parts));
}

ModuleMap ModuleSampler::relative_deflation(const ModuleRep& x, std::size_t extra_dim) {
  const ModuleMap eps = ctx_.counit(x);
  const ModuleRep u = ambient_module(extra_dim);
  const ModuleMap g = random_map(u, x);
  const auto s = direct_sum(eps.source(), u);
  const FpMatrix parts[] = {eps.matrix(), g.matrix()};
  return ModuleMap(s.sum, x, FpMatrix::hstack(parts));
}

ShortExactSeq ModuleSampler::relative_sequence() {
  const std::size_t m = ctx_.index();
  const std::size_t small = std::max<std::size_t>(1, max_dim_ / (m + 1));
  switch (draw_below(rng_, 4)) {
    case 0: {
      const ModuleRep x = ambient_module(small);
      return complete_inflation(relative_inflation(x, max_dim_ - std::min(max_dim_, m * x.dim())));
    }
    case 1: {
      const ModuleRep z = ambient_module(small);
      return complete_deflation(relative_deflation(z, max_dim_ - std::min(max_dim_, m * z.dim())));
    }
    case 2: {
      const ModuleRep x = ambient_module(std::max<std::size_t>(1, max_dim_ / 2));
      return split_sequence(x, ambient_module(max_dim_ - x.dim()));
    }
    default: {
      // a random injective map, kept only when it happens to lie in the relative structure
      const ModuleRep x = ambient_module(std::max<std::size_t>(1, max_dim_ / 3));
      const ModuleRep y = ambient_module(max_dim_);
      const ModuleMap f = random_map(x, y);
      if (f.is_injective()) {
        ShortExactSeq s = complete_inflation(f);
        if (in_relative_structure(ctx_, s).member) return s;
      }
      return complete_inflation(relative_inflation(x, max_dim_ - std::min(max_dim_, m * x.dim())));
    }
  }
}

// ---------------------------------------------------------------------------

bool AuditReport::passed() const { return failures() == 0; }

std::size_t AuditReport::failures() const {
  std::size_t n = 0;
  for (const auto& a : axioms) n += a.failed;
  return n;
}

namespace {

bool is_relative_deflation(const AdjointContext& ctx, const ModuleMap& d) {
  return d.is_surjective() && in_relative_structure(ctx, complete_deflation(d)).member;
}

bool is_relative_inflation(const AdjointContext& ctx, const ModuleMap& i) {
  return i.is_injective() && in_relative_structure(ctx, complete_inflation(i)).member;
}

// Runs one check; any exception counts as a failure of that axiom.
template <typename Check>
void tally(AxiomTally& t, std::uint64_t seed, Check&& check) {
  bool ok = false;
  bool counted = true;
  try {
    auto r = check();
    counted = r.has_value();
    ok = r.value_or(true);
  } catch (const std::exception&) {
    ok = false;
  }
  if (!counted) return;
  ++t.checked;
  if (!ok) {
    ++t.failed;
    if (t.failure_seeds.empty() || t.failure_seeds.back() != seed) t.failure_seeds.push_back(seed);
  }
}

}  // namespace

AuditReport axiom_audit(const AdjointContext& ctx, const AuditOptions& options) {
  auto named = [](const char* axiom) {
    AxiomTally t;
    t.axiom = axiom;
    return t;
  };
  AxiomTally ex0 = named("Ex0"), ex1 = named("Ex1"), ex2 = named("Ex2"), ex2op = named("Ex2op"),
             hyp4 = named("hypothesis-iv"), hyp5 = named("hypothesis-v");
  const std::size_t m = ctx.index();
  const std::size_t small = std::max<std::size_t>(1, options.max_dim / (m + 1));

  tally(ex0, options.seed, [&]() -> std::optional<bool> {
    const auto z = zero_sequence(ctx.ambient());
    return in_relative_structure(ctx, z).member && z.deflation().matrix().is_identity();
  });

  for (std::size_t k = 0; k < options.samples; ++k) {
    const std::uint64_t seed = options.seed + k;
    ModuleSampler sampler(ctx, seed, options.max_dim);
    std::optional<ShortExactSeq> s;
    try {
      s = sampler.relative_sequence();
    } catch (const std::exception&) {
      ++ex2.checked;
      ++ex2.failed;
      ex2.failure_seeds.push_back(seed);
      continue;
    }

    // Ex1: composites of relative deflations are relative deflations
    tally(ex1, seed, [&]() -> std::optional<bool> {
      if (draw_below(sampler.rng(), 2) == 0) {
        const ModuleRep w = sampler.ambient_module(1);
        const ModuleMap d2 = sampler.relative_deflation(w, 1);
        const ModuleMap d1 = sampler.relative_deflation(d2.source(), 0);
        if (!is_relative_deflation(ctx, d1) || !is_relative_deflation(ctx, d2)) return false;
        return is_relative_deflation(ctx, compose(d2, d1));
      }
      // Y ->> Y/K1 ->> Y/K2 for a random flag K1 <= K2
      const ModuleRep y = sampler.ambient_module();
      auto vec = [&]() {
        std::vector<Residue> v(y.dim());
        for (auto& x : v) x = static_cast<Residue>(draw_below(sampler.rng(), y.modulus()));
        return FpMatrix::column(y.modulus(), v);
      };
      const FpMatrix k1 = spin(y, vec());
      const FpMatrix both[] = {k1, vec()};
      const FpMatrix k2 = spin(y, FpMatrix::hstack(both));
      const Quotient q1 = quotient(y, k1);
      const FpMatrix k2_image = q1.projection.matrix() * k2;
      const Quotient q2 = quotient(q1.module, k2_image);
      if (!is_relative_deflation(ctx, q1.projection) || !is_relative_deflation(ctx, q2.projection)) {
        return std::nullopt;
      }
      return is_relative_deflation(ctx, compose(q2.projection, q1.projection));
    });

    // Ex2: pullback of a relative deflation along any map
    tally(ex2, seed, [&]() -> std::optional<bool> {
      const ModuleMap& d = s->deflation();
      const ModuleRep zp = sampler.ambient_module(small + 1);
      const ModuleMap f = sampler.random_map(zp, d.target());
      Pullback pb = pullback_deflation(d, f);
      if (options.tamper_pullback) pb = options.tamper_pullback(pb);
      if (!(pb.deflation.target() == zp) || !(pb.to_middle.target() == d.source())) return false;
      if (d.matrix() * pb.to_middle.matrix() != f.matrix() * pb.deflation.matrix()) return false;
      if (pb.object.dim() + d.target().dim() != d.source().dim() + zp.dim()) return false;
      return is_relative_deflation(ctx, pb.deflation);
    });

    // Ex2op: pushout of a relative inflation along any map
    tally(ex2op, seed, [&]() -> std::optional<bool> {
      const ModuleMap& i = s->inflation();
      const ModuleRep xp = sampler.ambient_module(small + 1);
      const ModuleMap f = sampler.random_map(i.source(), xp);
      const Pushout po = pushout_inflation(i, f);
      if (po.from_middle.matrix() * i.matrix() != po.inflation.matrix() * f.matrix()) return false;
      if (po.object.dim() + i.source().dim() != i.target().dim() + xp.dim()) return false;
      return is_relative_inflation(ctx, po.inflation);
    });

    // (iv): f with L f split mono is an inflation (constructed and random instances)
    auto check_iv = [&](const ModuleMap& f) -> std::optional<bool> {
      if (!is_split_mono(ctx.left_adjoint(f))) return std::nullopt;
      return is_relative_inflation(ctx, f);
    };
    auto check_v = [&](const ModuleMap& f) -> std::optional<bool> {
      if (!is_split_epi(ctx.right_adjoint(f))) return std::nullopt;
      return is_relative_deflation(ctx, f);
    };
    tally(hyp4, seed, [&]() {
      const ModuleRep x = sampler.ambient_module(small);
      return check_iv(sampler.relative_inflation(x, 1));
    });
    tally(hyp4, seed, [&]() {
      const ModuleRep x = sampler.ambient_module(small);
      return check_iv(sampler.random_map(x, sampler.ambient_module()));
    });
    tally(hyp5, seed, [&]() {
      const ModuleRep x = sampler.ambient_module(small);
      return check_v(sampler.relative_deflation(x, 1));
    });
    tally(hyp5, seed, [&]() {
      const ModuleRep x = sampler.ambient_module(small);
      return check_v(sampler.random_map(sampler.ambient_module(), x));
    });
  }
  return AuditReport{{ex0, ex1, ex2, ex2op, hyp4, hyp5}};
}

}  // namespace frobstab
