#include "frobstab/adjoint.hpp"

namespace frobstab {

AdjointContext AdjointContext::group_induction(std::shared_ptr<const GroupData> group,
                                               std::shared_ptr<const SubgroupData> subgroup,
                                               Residue p, std::string name) {
  if (!group || !subgroup) throw ContextMismatch("group induction needs a group and a subgroup");
  if (&subgroup->parent() != group.get()) throw ContextMismatch("subgroup of a different group");
  AdjointContext ctx;
  ctx.name_ = std::move(name);
  ctx.ambient_ = ModuleCategory::group_modules(group, nullptr, p, Side::ambient, ctx.name_ + "/G");
  ctx.base_ = ModuleCategory::group_modules(group, subgroup, p, Side::base, ctx.name_ + "/H");
  ctx.data_ = GroupInduction{std::move(group), std::move(subgroup)};
  return ctx;
}

AdjointContext AdjointContext::free_module(std::shared_ptr<const AlgebraData> algebra,
                                           std::string name, std::uint64_t seed) {
  if (!algebra) throw ContextMismatch("free-module context needs an algebra");
  auto form = is_frobenius_algebra(*algebra, seed);
  if (!form) {
    throw AlgebraError("algebra " + name + " has no nondegenerate Frobenius form; (forget, A (x) -) is not an adjunction");
  }
  const auto inv = inverse(frobenius_gram(*algebra, *form));
  AdjointContext ctx;
  ctx.name_ = std::move(name);
  ctx.ambient_ = ModuleCategory::algebra_modules(algebra, Side::ambient, ctx.name_ + "/A");
  ctx.base_ = ModuleCategory::vector_spaces(algebra->modulus(), Side::base, ctx.name_ + "/k");
  ctx.data_ = FreeModule{std::move(algebra), std::move(*form), *inv};
  return ctx;
}

std::size_t AdjointContext::index() const {
  if (auto* g = std::get_if<GroupInduction>(&data_)) return g->subgroup->index();
  return std::get<FreeModule>(data_).algebra->dim();
}

const SubgroupData& AdjointContext::subgroup() const {
  if (auto* g = std::get_if<GroupInduction>(&data_)) return *g->subgroup;
  throw ContextMismatch("free-module context has no subgroup");
}

const AlgebraData& AdjointContext::algebra() const {
  if (auto* f = std::get_if<FreeModule>(&data_)) return *f->algebra;
  throw ContextMismatch("group context has no algebra");
}

const std::vector<Residue>& AdjointContext::frobenius_form() const {
  if (auto* f = std::get_if<FreeModule>(&data_)) return f->form;
  throw ContextMismatch("group context has no Frobenius form");
}

void AdjointContext::require_ambient(const ModuleRep& x) const {
  if (x.category() != ambient_) {
    throw ContextMismatch("module is not an object of " + ambient_->name() + " (it lives in " +
                          x.category()->name() + ")");
  }
}

void AdjointContext::require_base(const ModuleRep& y) const {
  if (y.category() != base_) {
    throw ContextMismatch("module is not an object of " + base_->name() + " (it lives in " +
                          y.category()->name() + ")");
  }
}

ModuleRep AdjointContext::restrict(const ModuleRep& x) const {
  require_ambient(x);
  if (auto* g = std::get_if<GroupInduction>(&data_)) {
    std::vector<FpMatrix> action;
    const auto& elems = x.element_actions();
    const auto& tree = g->group->tree();
    for (auto h : g->subgroup->generators()) action.push_back(elems[tree.position[h]]);
    return ModuleRep(base_, x.dim(), std::move(action));
  }
  return ModuleRep(base_, x.dim(), {});
}

ModuleMap AdjointContext::restrict(const ModuleMap& f) const {
  return ModuleMap(restrict(f.source()), restrict(f.target()), f.matrix());
}

ModuleRep AdjointContext::induce(const ModuleRep& y) const {
  require_base(y);
  const Residue p = modulus();
  const std::size_t d = y.dim();
  const std::size_t m = index();
  std::vector<FpMatrix> action;
  if (auto* g = std::get_if<GroupInduction>(&data_)) {
    const GroupData& G = *g->group;
    const SubgroupData& H = *g->subgroup;
    const auto& hacts = y.element_actions();
    // g * rep_c = rep_c' * h sends rep_c (x) y to rep_c' (x) h y
    for (auto s : G.generators()) {
      FpMatrix a(p, m * d, m * d);
      for (std::size_t c = 0; c < m; ++c) {
        const auto& entry = H.lookup(G.mult(s, H.coset_reps()[c]));
        a.set_block(entry.coset * d, c * d, hacts[H.tree().position[entry.h]]);
      }
      action.push_back(std::move(a));
    }
  } else {
    const AlgebraData& A = *std::get<FreeModule>(data_).algebra;
    // e_a (e_i (x) v) = sum_k c_aik e_k (x) v
    for (std::size_t a = 0; a < A.dim(); ++a) {
      FpMatrix mat(p, m * d, m * d);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
          const Residue c = A.structure(a, i, k);
          if (c == 0) continue;
          for (std::size_t j = 0; j < d; ++j) mat.set(k * d + j, i * d + j, c);
        }
      }
      action.push_back(std::move(mat));
    }
  }
  return ModuleRep(ambient_, m * d, std::move(action));
}

ModuleMap AdjointContext::induce(const ModuleMap& f) const {
  std::vector<FpMatrix> blocks(index(), f.matrix());
  const FpMatrix mat = blocks.empty() ? FpMatrix(modulus(), 0, 0) : FpMatrix::block_diagonal(blocks);
  return ModuleMap(induce(f.source()), induce(f.target()), mat);
}

FpMatrix AdjointContext::unit_matrix(const ModuleRep& x) const {
  require_ambient(x);
  const Residue p = modulus();
  const std::size_t d = x.dim(), m = index();
  FpMatrix eta(p, m * d, d);
  if (auto* g = std::get_if<GroupInduction>(&data_)) {
    // x -> sum_c rep_c (x) rep_c^{-1} x
    const auto& elems = x.element_actions();
    for (std::size_t c = 0; c < m; ++c) {
      eta.set_block(c * d, 0, elems[g->group->inverse(g->subgroup->coset_reps()[c])]);
    }
  } else {
    // x -> sum_i e_i (x) f_i x, with (e_i, f_i) dual under the Frobenius form
    const auto& fm = std::get<FreeModule>(data_);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Residue> coeffs(m);
      for (std::size_t k = 0; k < m; ++k) coeffs[k] = fm.dual(i, k);
      eta.set_block(i * d, 0, linear_combination(x.action(), coeffs));
    }
  }
  return eta;
}

FpMatrix AdjointContext::counit_matrix(const ModuleRep& x) const {
  require_ambient(x);
  const Residue p = modulus();
  const std::size_t d = x.dim(), m = index();
  FpMatrix eps(p, d, m * d);
  if (auto* g = std::get_if<GroupInduction>(&data_)) {
    // rep_c (x) x -> rep_c x
    const auto& elems = x.element_actions();
    for (std::size_t c = 0; c < m; ++c) eps.set_block(0, c * d, elems[g->subgroup->coset_reps()[c]]);
  } else {
    // a (x) x -> a x
    for (std::size_t i = 0; i < m; ++i) eps.set_block(0, i * d, x.action()[i]);
  }
  return eps;
}

FpMatrix AdjointContext::base_unit_matrix(const ModuleRep& y) const {
  require_base(y);
  const Residue p = modulus();
  const std::size_t d = y.dim(), m = index();
  FpMatrix u(p, m * d, d);
  if (is_group_induction()) {
    u.set_block(0, 0, FpMatrix::identity(p, d));  // y -> 1 (x) y
  } else {
    const auto& unit = std::get<FreeModule>(data_).algebra->unit();
    for (std::size_t i = 0; i < m; ++i) u.set_block(i * d, 0, FpMatrix::identity(p, d).scaled(unit[i]));
  }
  return u;
}

FpMatrix AdjointContext::base_counit_matrix(const ModuleRep& y) const {
  require_base(y);
  const Residue p = modulus();
  const std::size_t d = y.dim(), m = index();
  FpMatrix c(p, d, m * d);
  if (is_group_induction()) {
    c.set_block(0, 0, FpMatrix::identity(p, d));  // projection onto the coset of H
  } else {
    const auto& form = std::get<FreeModule>(data_).form;  // a (x) v -> form(a) v
    for (std::size_t i = 0; i < m; ++i) c.set_block(0, i * d, FpMatrix::identity(p, d).scaled(form[i]));
  }
  return c;
}

ModuleMap AdjointContext::unit(const ModuleRep& x) const {
  return ModuleMap(x, induce_restrict(x), unit_matrix(x));
}

ModuleMap AdjointContext::counit(const ModuleRep& x) const {
  return ModuleMap(induce_restrict(x), x, counit_matrix(x));
}

ModuleMap AdjointContext::base_unit(const ModuleRep& y) const {
  return ModuleMap(y, restrict(induce(y)), base_unit_matrix(y));
}

ModuleMap AdjointContext::base_counit(const ModuleRep& y) const {
  return ModuleMap(restrict(induce(y)), y, base_counit_matrix(y));
}

namespace {

bool intertwines(const ModuleRep& source, const ModuleRep& target, const FpMatrix& m) {
  try {
    ModuleMap(source, target, m);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

FpMatrix repeat_diagonal(const FpMatrix& f, std::size_t copies) {
  std::vector<FpMatrix> blocks(copies, f);
  return blocks.empty() ? FpMatrix(f.modulus(), 0, 0) : FpMatrix::block_diagonal(blocks);
}

}  // namespace

TriangleReport check_triangle_identities(const AdjointContext& ctx,
                                         const std::vector<ModuleRep>& ambient_samples,
                                         const std::vector<ModuleRep>& base_samples,
                                         const TriangleCheckHooks& hooks) {
  TriangleReport report;
  auto unit_of = [&](const ModuleRep& x) {
    return hooks.unit_matrix ? hooks.unit_matrix(x) : ctx.unit_matrix(x);
  };
  auto check = [&](bool ok, const char* identity, const std::string& module) {
    ++report.checked;
    if (!ok) report.violations.push_back({identity, module});
  };
  for (std::size_t k = 0; k < ambient_samples.size(); ++k) {
    const ModuleRep& x = ambient_samples[k];
    const std::string tag = "ambient sample " + std::to_string(k) + " (dim " + std::to_string(x.dim()) + ")";
    const ModuleRep lx = ctx.restrict(x);
    const ModuleRep mlx = ctx.induce(lx);
    const FpMatrix eta = unit_of(x);
    const FpMatrix eps = ctx.counit_matrix(x);
    check(intertwines(x, mlx, eta), "eta_X is a module map", tag);
    check(intertwines(mlx, x, eps), "eps_X is a module map", tag);
    check(eta.rows() == mlx.dim() && eta.cols() == x.dim() &&
              (ctx.base_counit_matrix(lx) * eta).is_identity(),
          "eps'_{LX} . L(eta_X) = id_{LX}", tag);
    check((eps * ctx.base_unit_matrix(lx)).is_identity(), "R(eps_X) . eta'_{RX} = id_{RX}", tag);
  }

  for (std::size_t k = 0; k < base_samples.size(); ++k) {
    const ModuleRep& y = base_samples[k];
    const std::string tag = "base sample " + std::to_string(k) + " (dim " + std::to_string(y.dim()) + ")";
    const ModuleRep my = ctx.induce(y);
    const FpMatrix eta_my = unit_of(my);
    const FpMatrix m_eps = repeat_diagonal(ctx.base_counit_matrix(y), ctx.index());
    const FpMatrix m_eta = repeat_diagonal(ctx.base_unit_matrix(y), ctx.index());
    check(eta_my.rows() == m_eps.cols() && (m_eps * eta_my).is_identity(),
          "M(eps'_Y) . eta_{MY} = id_{MY}", tag);
    check((ctx.counit_matrix(my) * m_eta).is_identity(), "eps_{MY} . M(eta'_Y) = id_{MY}", tag);
  }
  return report;
}

}  // namespace frobstab
