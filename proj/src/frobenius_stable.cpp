#include "frobstab/frobenius_stable.hpp"

#include <random>

namespace frobstab {

namespace {

std::optional<ModuleMap> solve_over(const std::vector<ModuleMap>& basis,
                                    const std::vector<FpMatrix>& images, const ModuleMap& f,
                                    const ModuleRep& source, const ModuleRep& target) {
  if (basis.empty()) {
    if (f.matrix().is_zero()) return ModuleMap::zero(source, target);
    return std::nullopt;
  }
  auto c = solve_combination(images, f.matrix());
  if (!c) return std::nullopt;
  return combine(basis, *c, source, target);
}

FpMatrix vectorized_columns(Residue p, std::size_t rows, const std::vector<FpMatrix>& maps) {
  FpMatrix out(p, rows, maps.size());
  for (std::size_t k = 0; k < maps.size(); ++k) out.set_block(0, k, maps[k].vectorized());
  return out;
}

}  // namespace

std::optional<ModuleMap> is_relatively_projective(const AdjointContext& ctx, const ModuleRep& x) {
  ctx.require_ambient(x);
  return is_split_epi(ctx.counit(x));
}

std::optional<ModuleMap> factors_through_relproj(const AdjointContext& ctx, const ModuleMap& f) {
  ctx.require_ambient(f.source());
  const ModuleMap eps = ctx.counit(f.target());
  const auto basis = hom_space(f.source(), eps.source());
  std::vector<FpMatrix> images;
  for (const auto& h : basis) images.push_back(eps.matrix() * h.matrix());
  return solve_over(basis, images, f, f.source(), eps.source());
}

std::optional<ModuleMap> factors_through_unit(const AdjointContext& ctx, const ModuleMap& f) {
  ctx.require_ambient(f.source());
  const ModuleMap eta = ctx.unit(f.source());
  const auto basis = hom_space(eta.target(), f.target());
  std::vector<FpMatrix> images;
  for (const auto& h : basis) images.push_back(h.matrix() * eta.matrix());
  return solve_over(basis, images, f, eta.target(), f.target());
}

StableHom stable_hom(const AdjointContext& ctx, const ModuleRep& x, const ModuleRep& y) {
  ctx.require_ambient(x);
  ctx.require_ambient(y);
  const Residue p = x.modulus();
  const std::size_t cells = x.dim() * y.dim();
  StableHom out(x, y);
  out.full_hom_basis = hom_space(x, y);

  const ModuleMap eps = ctx.counit(y);
  std::vector<FpMatrix> composites;
  for (const auto& h : hom_space(x, eps.source())) composites.push_back(eps.matrix() * h.matrix());
  const FpMatrix comp = vectorized_columns(p, cells, composites);
  for (std::size_t k : independent_columns(comp)) {
    out.factoring_subspace_basis.emplace_back(x, y, composites[k]);
  }

  std::vector<FpMatrix> factoring, full;
  for (const auto& b : out.factoring_subspace_basis) factoring.push_back(b.matrix());
  for (const auto& b : out.full_hom_basis) full.push_back(b.matrix());
  const FpMatrix parts[] = {vectorized_columns(p, cells, factoring), vectorized_columns(p, cells, full)};
  const FpMatrix stacked = FpMatrix::hstack(parts);
  const std::size_t nf = out.factoring_subspace_basis.size();
  for (std::size_t k : independent_columns(stacked)) {
    if (k >= nf) out.quotient_representatives.push_back(out.full_hom_basis[k - nf]);
  }
  out.stable_dimension = out.quotient_representatives.size();

  std::vector<FpMatrix> coords;
  for (const auto& b : out.factoring_subspace_basis) coords.push_back(b.matrix());
  for (const auto& b : out.quotient_representatives) coords.push_back(b.matrix());
  out.coordinates_ = vectorized_columns(p, cells, coords);
  return out;
}

std::vector<Residue> StableHom::class_of(const ModuleMap& f) const {
  if (!(f.source() == source) || !(f.target() == target)) {
    throw ContextMismatch("class_of: map does not belong to this hom-space");
  }
  std::vector<Residue> c(stable_dimension, 0);
  if (coordinates_.cols() == 0) return c;
  auto sol = solve_right(coordinates_, f.matrix().vectorized());
  if (!sol) throw std::logic_error("class_of: map outside the hom-space span");
  const std::size_t nf = factoring_subspace_basis.size();
  for (std::size_t k = 0; k < stable_dimension; ++k) c[k] = (*sol)(nf + k, 0);
  return c;
}

bool StableHom::is_stably_zero(const ModuleMap& f) const {
  for (Residue v : class_of(f)) {
    if (v != 0) return false;
  }
  return true;
}

Cosyzygy relative_cosyzygy(const AdjointContext& ctx, const ModuleRep& x) {
  const ModuleMap eta = ctx.unit(x);
  Quotient q = cokernel(eta);
  return Cosyzygy{q.module, eta, q.projection, q.section};
}

Syzygy relative_syzygy(const AdjointContext& ctx, const ModuleRep& x) {
  const ModuleMap eps = ctx.counit(x);
  Submodule k = kernel(eps);
  return Syzygy{k.module, k.inclusion, eps};
}

ModuleMap shift_map(const AdjointContext& ctx, const ModuleMap& f) {
  const Cosyzygy cx = relative_cosyzygy(ctx, f.source());
  const Cosyzygy cy = relative_cosyzygy(ctx, f.target());
  const ModuleMap mf = ctx.induce(ctx.restrict(f));
  return ModuleMap(cx.module, cy.module, cy.deflation.matrix() * mf.matrix() * cx.section);
}

Triangle happel_triangle(const AdjointContext& ctx, const ModuleMap& f) {
  const ModuleRep& x = f.source();
  const ModuleRep& y = f.target();
  ctx.require_ambient(x);
  const ModuleMap eta = ctx.unit(x);
  const auto sum = direct_sum(eta.target(), y);
  const FpMatrix parts[] = {eta.matrix(), f.matrix().negated()};
  const ModuleMap psi(x, sum.sum, FpMatrix::vstack(parts));
  const Quotient cone = cokernel(psi);
  const Cosyzygy shift = relative_cosyzygy(ctx, x);

  ModuleMap to_cone = compose(cone.projection, sum.inclusion_second);
  const FpMatrix t = shift.deflation.matrix() * sum.projection_first.matrix() * cone.section;
  ModuleMap to_shift(cone.module, shift.module, t);
  return Triangle{f, std::move(to_cone), std::move(to_shift), shift_map(ctx, f)};
}

bool triangle_composites_factor(const AdjointContext& ctx, const Triangle& t) {
  return factors_through_relproj(ctx, compose(t.to_cone, t.base)).has_value() &&
         factors_through_relproj(ctx, compose(t.to_shift, t.to_cone)).has_value() &&
         factors_through_relproj(ctx, compose(t.shifted_base, t.to_shift)).has_value();
}

std::optional<ModuleMap> schanuel_compare(const AdjointContext& ctx, const ModuleMap& i1,
                                          const ModuleMap& i2) {
  const ModuleRep& x = i1.source();
  if (!(i2.source() == x)) throw SchanuelPrecondition("embeddings have different sources");
  const ModuleRep& p1 = i1.target();
  const ModuleRep& p2 = i2.target();
  if (!is_relatively_projective(ctx, p1)) throw SchanuelPrecondition("P1 is not relatively projective");
  if (!is_relatively_projective(ctx, p2)) throw SchanuelPrecondition("P2 is not relatively projective");
  if (!is_split_mono(ctx.restrict(i1))) throw SchanuelPrecondition("restriction of i1 is not split");
  if (!is_split_mono(ctx.restrict(i2))) throw SchanuelPrecondition("restriction of i2 is not split");

  // extensions through the relatively injective targets
  auto extend = [](const ModuleMap& along, const ModuleMap& target) -> std::optional<ModuleMap> {
    const auto basis = hom_space(along.target(), target.target());
    std::vector<FpMatrix> images;
    for (const auto& h : basis) images.push_back(h.matrix() * along.matrix());
    return solve_over(basis, images, target, along.target(), target.target());
  };
  const auto b = extend(i1, i2);
  const auto a = extend(i2, i1);
  if (!a || !b) return std::nullopt;

  const Residue p = x.modulus();
  const Quotient c1 = cokernel(i1);
  const Quotient c2 = cokernel(i2);
  const std::size_t n1 = p1.dim(), n2 = p2.dim();
  // Psi(u, v) = (q1 u, v - b u),  Phi(u, v) = (q2 v, u - a v)
  FpMatrix psi(p, c1.module.dim() + n2, n1 + n2);
  psi.set_block(0, 0, c1.projection.matrix());
  psi.set_block(c1.module.dim(), 0, b->matrix().negated());
  psi.set_block(c1.module.dim(), n1, FpMatrix::identity(p, n2));
  FpMatrix phi(p, c2.module.dim() + n1, n1 + n2);
  phi.set_block(0, n1, c2.projection.matrix());
  phi.set_block(c2.module.dim(), 0, FpMatrix::identity(p, n1));
  phi.set_block(c2.module.dim(), n1, a->matrix().negated());

  const auto right_inverse = solve_right(psi, FpMatrix::identity(p, psi.rows()));
  if (!right_inverse) return std::nullopt;
  const FpMatrix t = phi * *right_inverse;
  if (!inverse(t)) return std::nullopt;
  const auto source = direct_sum(c1.module, p2).sum;
  const auto target = direct_sum(c2.module, p1).sum;
  return ModuleMap(source, target, t);
}

StableIsoVerdict is_stably_isomorphic(const AdjointContext& ctx, const ModuleRep& x,
                                      const ModuleRep& y, std::uint64_t seed, std::uint64_t budget) {
  StableIsoVerdict v;
  const Residue p = x.modulus();
  const StableHom xy = stable_hom(ctx, x, y);
  const StableHom yx = stable_hom(ctx, y, x);
  const StableHom xx = stable_hom(ctx, x, x);
  const StableHom yy = stable_hom(ctx, y, y);
  const std::size_t a = xy.stable_dimension;
  const std::size_t b = yx.stable_dimension;
  v.exhaustive = saturating_power(p, a) <= budget;

  // stably isomorphic objects have isomorphic stable endomorphism spaces
  if (xx.stable_dimension != yy.stable_dimension) {
    v.kind = StableIsoVerdict::Kind::no_certified;
    v.exhaustive = true;
    return v;
  }
  const std::size_t sx = xx.stable_dimension;
  const std::size_t sy = yy.stable_dimension;
  const auto id_x = xx.class_of(ModuleMap::identity(x));
  const auto id_y = yy.class_of(ModuleMap::identity(y));

  // gf[i][j] = class of g_j f_i in stable End(X); fg[i][j] = class of f_i g_j in stable End(Y)
  std::vector<std::vector<std::vector<Residue>>> gf(a, std::vector<std::vector<Residue>>(b));
  std::vector<std::vector<std::vector<Residue>>> fg(a, std::vector<std::vector<Residue>>(b));
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      gf[i][j] = xx.class_of(compose(yx.quotient_representatives[j], xy.quotient_representatives[i]));
      fg[i][j] = yy.class_of(compose(xy.quotient_representatives[i], yx.quotient_representatives[j]));
    }
  }

  auto attempt = [&](const std::vector<Residue>& c) -> bool {
    ++v.candidates;
    FpMatrix system(p, sx + sy, b);
    FpMatrix rhs(p, sx + sy, 1);
    for (std::size_t r = 0; r < sx; ++r) rhs.set(r, 0, id_x[r]);
    for (std::size_t r = 0; r < sy; ++r) rhs.set(sx + r, 0, id_y[r]);
    for (std::size_t i = 0; i < a; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < b; ++j) {
        for (std::size_t r = 0; r < sx; ++r) {
          system.set(r, j, add_mod(system(r, j), mul_mod(c[i], gf[i][j][r], p), p));
        }
        for (std::size_t r = 0; r < sy; ++r) {
          system.set(sx + r, j, add_mod(system(sx + r, j), mul_mod(c[i], fg[i][j][r], p), p));
        }
      }
    }
    std::optional<FpMatrix> d;
    if (b == 0) {
      if (rhs.is_zero()) d = FpMatrix(p, 0, 1);
    } else {
      d = solve_right(system, rhs);
    }
    if (!d) return false;
    std::vector<Residue> dc(b);
    for (std::size_t j = 0; j < b; ++j) dc[j] = (*d)(j, 0);
    const ModuleMap f = combine(xy.quotient_representatives, c, x, y);
    const ModuleMap g = combine(yx.quotient_representatives, dc, y, x);
    // exact confirmation of the witness
    if (!factors_through_relproj(ctx, ModuleMap::identity(x) - compose(g, f)) ||
        !factors_through_relproj(ctx, ModuleMap::identity(y) - compose(f, g))) {
      throw std::logic_error("stable iso witness failed exact verification");
    }
    v.f = f;
    v.g = g;
    return true;
  };

  std::vector<Residue> c(a, 0);
  if (v.exhaustive) {
    const std::uint64_t total = saturating_power(p, a);
    for (std::uint64_t n = 0; n < total; ++n) {
      std::uint64_t k = n;
      for (std::size_t i = 0; i < a; ++i) {
        c[i] = static_cast<Residue>(k % p);
        k /= p;
      }
      if (attempt(c)) {
        v.kind = StableIsoVerdict::Kind::yes;
        return v;
      }
    }
    v.kind = StableIsoVerdict::Kind::no_certified;
    return v;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t n = 0; n < budget; ++n) {
    for (auto& ci : c) ci = static_cast<Residue>(draw_below(rng, p));
    if (attempt(c)) {
      v.kind = StableIsoVerdict::Kind::yes;
      return v;
    }
  }
  v.kind = StableIsoVerdict::Kind::inconclusive;
  return v;
}

const char* to_string(StableIsoVerdict::Kind kind) {
  switch (kind) {
    case StableIsoVerdict::Kind::yes:
      return "yes";
    case StableIsoVerdict::Kind::no_certified:
      return "no-certified";
    case StableIsoVerdict::Kind::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace frobstab
