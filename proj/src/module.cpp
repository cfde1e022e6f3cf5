#include "frobstab/module.hpp"

#include <algorithm>

namespace frobstab {

std::shared_ptr<const ModuleCategory> ModuleCategory::group_modules(
    std::shared_ptr<const GroupData> group, std::shared_ptr<const SubgroupData> subgroup, Residue p,
    Side side, std::string name) {
  if (!is_prime(p)) throw LinalgError("module modulus is not prime");
  if (subgroup && &subgroup->parent() != group.get()) {
    throw ContextMismatch("subgroup does not belong to the given group");
  }
  auto c = std::shared_ptr<ModuleCategory>(new ModuleCategory());
  c->kind_ = Kind::group;
  c->p_ = p;
  c->side_ = side;
  c->name_ = std::move(name);
  c->group_ = std::move(group);
  c->subgroup_ = std::move(subgroup);
  return c;
}

std::shared_ptr<const ModuleCategory> ModuleCategory::algebra_modules(
    std::shared_ptr<const AlgebraData> algebra, Side side, std::string name) {
  auto c = std::shared_ptr<ModuleCategory>(new ModuleCategory());
  c->kind_ = Kind::algebra;
  c->p_ = algebra->modulus();
  c->side_ = side;
  c->name_ = std::move(name);
  c->algebra_ = std::move(algebra);
  return c;
}

std::shared_ptr<const ModuleCategory> ModuleCategory::vector_spaces(Residue p, Side side,
                                                                    std::string name) {
  if (!is_prime(p)) throw LinalgError("module modulus is not prime");
  auto c = std::shared_ptr<ModuleCategory>(new ModuleCategory());
  c->kind_ = Kind::vector_space;
  c->p_ = p;
  c->side_ = side;
  c->name_ = std::move(name);
  return c;
}

std::size_t ModuleCategory::generator_count() const {
  switch (kind_) {
    case Kind::group:
      return tree().generators.size();
    case Kind::algebra:
      return algebra_->dim();
    case Kind::vector_space:
      return 0;
  }
  return 0;
}

const CayleyTree& ModuleCategory::tree() const {
  if (kind_ != Kind::group) throw ContextMismatch("category has no acting group");
  return subgroup_ ? subgroup_->tree() : group_->tree();
}

ModuleRep::ModuleRep(CategoryPtr category, std::size_t dim, std::vector<FpMatrix> action) {
  if (!category) throw ContextMismatch("module without a category");
  const Residue p = category->modulus();
  if (action.size() != category->generator_count()) {
    throw RepresentationError("expected " + std::to_string(category->generator_count()) +
                              " action matrices, got " + std::to_string(action.size()));
  }
  for (std::size_t s = 0; s < action.size(); ++s) {
    if (action[s].modulus() != p) {
      throw RepresentationError("action matrix " + std::to_string(s) + " has modulus " +
                                std::to_string(action[s].modulus()) + ", category has " +
                                std::to_string(p));
    }
    if (action[s].rows() != dim || action[s].cols() != dim) {
      throw RepresentationError("action matrix " + std::to_string(s) + " is not " +
                                std::to_string(dim) + "x" + std::to_string(dim));
    }
  }
  auto impl = std::make_shared<Impl>();
  switch (category->kind()) {
    case ModuleCategory::Kind::group: {
      // rho(x * s) = rho(x) rho(s) on every edge of the right Cayley graph
      const CayleyTree& t = category->tree();
      impl->elements.reserve(t.size());
      impl->elements.push_back(FpMatrix::identity(p, dim));
      for (std::size_t k = 1; k < t.size(); ++k) {
        impl->elements.push_back(impl->elements[t.parent[k]] * action[t.via[k]]);
      }
      for (std::size_t k = 0; k < t.size(); ++k) {
        for (std::size_t s = 0; s < action.size(); ++s) {
          if (impl->elements[k] * action[s] != impl->elements[t.step[k][s]]) {
            const auto& G = category->group();
            throw RepresentationError("relation rho(" + G.label(t.elements[k]) + ")*rho(gen " +
                                      std::to_string(s) + ") = rho(" +
                                      G.label(t.elements[t.step[k][s]]) + ") fails");
          }
        }
      }
      break;
    }
    case ModuleCategory::Kind::algebra: {
      const AlgebraData& a = category->algebra();
      const std::size_t d = a.dim();
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          std::vector<Residue> coeffs(d);
          for (std::size_t k = 0; k < d; ++k) coeffs[k] = a.structure(i, j, k);
          const FpMatrix rhs = d == 0 ? FpMatrix(p, dim, dim) : linear_combination(action, coeffs);
          if (action[i] * action[j] != rhs) {
            throw RepresentationError("relation rho(e" + std::to_string(i) + ")rho(e" +
                                      std::to_string(j) + ") = sum_k c_ijk rho(e_k) fails");
          }
        }
      }
      if (d > 0 && !linear_combination(action, a.unit()).is_identity()) {
        throw RepresentationError("relation rho(1) = id fails");
      }
      break;
    }
    case ModuleCategory::Kind::vector_space:
      break;
  }
  impl->category = std::move(category);
  impl->dim = dim;
  impl->action = std::move(action);
  impl_ = std::move(impl);
}

ModuleRep ModuleRep::zero(CategoryPtr category) {
  const std::size_t k = category->generator_count();
  std::vector<FpMatrix> action(k, FpMatrix(category->modulus(), 0, 0));
  return ModuleRep(std::move(category), 0, std::move(action));
}

const std::vector<FpMatrix>& ModuleRep::element_actions() const {
  if (impl_->category->kind() != ModuleCategory::Kind::group) {
    throw ContextMismatch("element actions exist only for group modules");
  }
  return impl_->elements;
}

bool operator==(const ModuleRep& a, const ModuleRep& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->category == b.impl_->category && a.impl_->dim == b.impl_->dim &&
         a.impl_->action == b.impl_->action;
}

void require_same_category(const ModuleRep& a, const ModuleRep& b) {
  if (a.category() != b.category()) {
    throw ContextMismatch("modules belong to different categories (" + a.category()->name() +
                          " vs " + b.category()->name() + ")");
  }
}

ModuleMap::ModuleMap(ModuleRep source, ModuleRep target, FpMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require_same_category(source_, target_);
  if (matrix_.modulus() != source_.modulus()) throw RepresentationError("map modulus mismatch");
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim()) {
    throw RepresentationError("map matrix is not target.dim x source.dim");
  }
  const auto& as = source_.action();
  const auto& at = target_.action();
  for (std::size_t s = 0; s < as.size(); ++s) {
    if (at[s] * matrix_ != matrix_ * as[s]) {
      throw RepresentationError("matrix does not intertwine generator " + std::to_string(s));
    }
  }
}

ModuleMap ModuleMap::identity(const ModuleRep& x) {
  return ModuleMap(x, x, FpMatrix::identity(x.modulus(), x.dim()));
}

ModuleMap ModuleMap::zero(const ModuleRep& source, const ModuleRep& target) {
  return ModuleMap(source, target, FpMatrix(source.modulus(), target.dim(), source.dim()));
}

bool ModuleMap::is_injective() const { return rank(matrix_) == source_.dim(); }
bool ModuleMap::is_surjective() const { return rank(matrix_) == target_.dim(); }

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!(f.target() == g.source())) throw ContextMismatch("compose: maps are not composable");
  return ModuleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw ContextMismatch("sum of maps with different source/target");
  }
  return ModuleMap(a.source(), a.target(), a.matrix() + b.matrix());
}

ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw ContextMismatch("difference of maps with different source/target");
  }
  return ModuleMap(a.source(), a.target(), a.matrix() - b.matrix());
}

ModuleMap scale(const ModuleMap& f, Residue c) {
  return ModuleMap(f.source(), f.target(), f.matrix().scaled(c));
}

ModuleMap combine(const std::vector<ModuleMap>& basis, const std::vector<Residue>& coeffs,
                  const ModuleRep& source, const ModuleRep& target) {
  if (basis.empty()) return ModuleMap::zero(source, target);
  std::vector<FpMatrix> mats;
  for (const auto& b : basis) mats.push_back(b.matrix());
  return ModuleMap(source, target, linear_combination(mats, coeffs));
}

FpMatrix intertwiner_system(const ModuleRep& x, const ModuleRep& y) {
  require_same_category(x, y);
  const Residue p = x.modulus();
  const std::size_t dx = x.dim(), dy = y.dim();
  const std::size_t k = x.action().size();
  const std::size_t n = dx * dy;
  FpMatrix sys(p, k * n, n);
  // unknown F(c, b) sits at column c*dx + b; equation (s, a, b): (rhoY F - F rhoX)(a, b) = 0
  for (std::size_t s = 0; s < k; ++s) {
    const FpMatrix& rx = x.action()[s];
    const FpMatrix& ry = y.action()[s];
    for (std::size_t a = 0; a < dy; ++a) {
      for (std::size_t b = 0; b < dx; ++b) {
        const std::size_t row = s * n + a * dx + b;
        for (std::size_t c = 0; c < dy; ++c) {
          const Residue v = ry(a, c);
          if (v != 0) sys.set(row, c * dx + b, add_mod(sys(row, c * dx + b), v, p));
        }
        for (std::size_t c = 0; c < dx; ++c) {
          const Residue v = rx(c, b);
          if (v != 0) sys.set(row, a * dx + c, sub_mod(sys(row, a * dx + c), v, p));
        }
      }
    }
  }
  return sys;
}

std::vector<ModuleMap> hom_space(const ModuleRep& x, const ModuleRep& y) {
  const FpMatrix ker = kernel_basis(intertwiner_system(x, y));
  std::vector<ModuleMap> basis;
  basis.reserve(ker.cols());
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    basis.emplace_back(x, y, FpMatrix::unvectorize(ker.block(0, j, ker.rows(), 1), y.dim(), x.dim()));
  }
  return basis;
}

DirectSum direct_sum(const ModuleRep& x, const ModuleRep& y) {
  require_same_category(x, y);
  const Residue p = x.modulus();
  std::vector<FpMatrix> action;
  for (std::size_t s = 0; s < x.action().size(); ++s) {
    const FpMatrix blocks[] = {x.action()[s], y.action()[s]};
    action.push_back(FpMatrix::block_diagonal(blocks));
  }
  const std::size_t dx = x.dim(), dy = y.dim(), n = dx + dy;
  ModuleRep sum(x.category(), n, std::move(action));
  FpMatrix i1(p, n, dx), i2(p, n, dy);
  for (std::size_t k = 0; k < dx; ++k) i1.set(k, k, 1);
  for (std::size_t k = 0; k < dy; ++k) i2.set(dx + k, k, 1);
  return DirectSum{sum, ModuleMap(x, sum, i1), ModuleMap(y, sum, i2),
                   ModuleMap(sum, x, i1.transpose()), ModuleMap(sum, y, i2.transpose())};
}

ModuleMap direct_sum(const ModuleMap& f1, const ModuleMap& f2) {
  const auto src = direct_sum(f1.source(), f2.source());
  const auto dst = direct_sum(f1.target(), f2.target());
  const FpMatrix blocks[] = {f1.matrix(), f2.matrix()};
  return ModuleMap(src.sum, dst.sum, FpMatrix::block_diagonal(blocks));
}

Summand split_idempotent(const ModuleRep& x, const ModuleMap& e) {
  if (!(e.source() == x) || !(e.target() == x)) {
    throw RepresentationError("idempotent must be an endomorphism of the module");
  }
  const FpMatrix& m = e.matrix();
  if (m * m != m) throw RepresentationError("map is not idempotent");
  const auto ech = rref(m);
  // e = e[:, pivots] * rref(e)[0:rank, :]
  const FpMatrix incl = m.select_columns(ech.pivot_columns);
  const FpMatrix proj = ech.reduced.block(0, 0, ech.rank, m.cols());
  std::vector<FpMatrix> action;
  for (const auto& r : x.action()) action.push_back(proj * r * incl);
  ModuleRep summand(x.category(), ech.rank, std::move(action));
  return Summand{summand, ModuleMap(summand, x, incl), ModuleMap(x, summand, proj)};
}

std::optional<ModuleMap> is_isomorphic(const ModuleRep& x, const ModuleRep& y,
                                       const SearchOptions& options) {
  require_same_category(x, y);
  if (x.dim() != y.dim()) return std::nullopt;
  if (x == y) return ModuleMap::identity(x);
  const auto basis = hom_space(x, y);
  std::vector<FpMatrix> mats;
  for (const auto& b : basis) mats.push_back(b.matrix());
  const auto c = invertible_combination(mats, options.seed, options.max_trials,
                                        options.exhaustive_threshold);
  if (!c) return std::nullopt;
  return combine(basis, *c, x, y);
}

bool iso_search_is_exhaustive(const ModuleRep& x, const ModuleRep& y, const SearchOptions& options) {
  if (x.dim() != y.dim()) return true;
  const auto basis = hom_space(x, y);
  std::vector<FpMatrix> mats;
  for (const auto& b : basis) mats.push_back(b.matrix());
  return exhaustive_regime(mats, options.exhaustive_threshold);
}

Submodule submodule(const ModuleRep& x, const FpMatrix& spanning) {
  const FpMatrix basis = spanning.select_columns(independent_columns(spanning));
  std::vector<FpMatrix> action;
  for (std::size_t s = 0; s < x.action().size(); ++s) {
    auto a = solve_right(basis, x.action()[s] * basis);
    if (!a) throw RepresentationError("subspace is not invariant under generator " + std::to_string(s));
    action.push_back(std::move(*a));
  }
  ModuleRep sub(x.category(), basis.cols(), std::move(action));
  return Submodule{sub, ModuleMap(sub, x, basis)};
}

Quotient quotient(const ModuleRep& x, const FpMatrix& spanning) {
  const Residue p = x.modulus();
  const FpMatrix basis = spanning.select_columns(independent_columns(spanning));
  for (std::size_t s = 0; s < x.action().size(); ++s) {
    if (!solve_right(basis, x.action()[s] * basis)) {
      throw RepresentationError("subspace is not invariant under generator " + std::to_string(s));
    }
  }
  const std::size_t n = x.dim(), r = basis.cols();
  const auto comp = complement_coordinates(basis);
  FpMatrix section(p, n, comp.size());
  for (std::size_t k = 0; k < comp.size(); ++k) section.set(comp[k], k, 1);
  const FpMatrix parts[] = {basis, section};
  const auto tinv = inverse(FpMatrix::hstack(parts));
  const FpMatrix proj = tinv->block(r, 0, n - r, n);
  std::vector<FpMatrix> action;
  for (const auto& a : x.action()) action.push_back(proj * a * section);
  ModuleRep q(x.category(), n - r, std::move(action));
  return Quotient{q, ModuleMap(x, q, proj), section};
}

FpMatrix spin(const ModuleRep& x, const FpMatrix& vectors) {
  FpMatrix basis = vectors.select_columns(independent_columns(vectors));
  while (true) {
    std::vector<FpMatrix> parts{basis};
    for (const auto& a : x.action()) parts.push_back(a * basis);
    const FpMatrix all = FpMatrix::hstack(parts);
    FpMatrix next = all.select_columns(independent_columns(all));
    if (next.cols() == basis.cols()) return basis;
    basis = std::move(next);
  }
}

Submodule kernel(const ModuleMap& f) { return submodule(f.source(), kernel_basis(f.matrix())); }

Quotient cokernel(const ModuleMap& f) { return quotient(f.target(), f.matrix()); }

ModuleRep regular_module(const CategoryPtr& category) {
  const Residue p = category->modulus();
  switch (category->kind()) {
    case ModuleCategory::Kind::group: {
      const CayleyTree& t = category->tree();
      const GroupData& G = category->group();
      std::vector<FpMatrix> action;
      for (auto g : t.generators) {
        FpMatrix m(p, t.size(), t.size());
        for (std::size_t k = 0; k < t.size(); ++k) m.set(t.position[G.mult(g, t.elements[k])], k, 1);
        action.push_back(std::move(m));
      }
      return ModuleRep(category, t.size(), std::move(action));
    }
    case ModuleCategory::Kind::algebra: {
      const AlgebraData& a = category->algebra();
      std::vector<FpMatrix> action;
      for (std::size_t i = 0; i < a.dim(); ++i) action.push_back(a.left_multiplication(i));
      return ModuleRep(category, a.dim(), std::move(action));
    }
    case ModuleCategory::Kind::vector_space:
      return ModuleRep(category, 1, {});
  }
  throw ContextMismatch("unknown category kind");
}

ModuleRep trivial_module(const CategoryPtr& category) {
  if (category->kind() == ModuleCategory::Kind::algebra) {
    throw ContextMismatch("algebra categories have no trivial module");
  }
  std::vector<FpMatrix> action(category->generator_count(),
                               FpMatrix::identity(category->modulus(), 1));
  return ModuleRep(category, 1, std::move(action));
}

}  // namespace frobstab
