#include "frobstab/catalog.hpp"

#include <numeric>
#include <regex>

namespace frobstab {

namespace {

std::size_t to_size(const std::string& s) { return static_cast<std::size_t>(std::stoul(s)); }

Residue prime_from(const std::string& s) {
  const auto p = std::stoul(s);
  if (!is_prime(p)) throw CatalogError("p" + s + " is not a prime");
  return static_cast<Residue>(p);
}

std::shared_ptr<const SubgroupData> closure(const std::shared_ptr<const GroupData>& g,
                                            std::vector<std::size_t> elements) {
  return std::make_shared<const SubgroupData>(subgroup_closure(g, elements));
}

// The cyclic group's generator as listed on the category.
std::size_t cyclic_generator(const AdjointContext& ctx) {
  const auto& cat = *ctx.ambient();
  if (cat.kind() != ModuleCategory::Kind::group || cat.group().generators().size() != 1) {
    throw CatalogError("Jordan blocks need a cyclic group with one generator");
  }
  return cat.group().generators()[0];
}

}  // namespace

std::shared_ptr<const GroupData> cyclic_group(std::size_t n) {
  if (n == 0) throw CatalogError("C0 is not a group");
  if (n == 1) return std::make_shared<const GroupData>(build_group({Permutation{0}}));
  std::vector<std::uint32_t> cycle(n);
  std::iota(cycle.begin(), cycle.end(), 1u);
  return std::make_shared<const GroupData>(build_group({permutation_from_cycles({cycle}, n)}));
}

std::shared_ptr<const GroupData> symmetric_group(std::size_t n) {
  if (n < 2) throw CatalogError("S<n> needs n >= 2");
  std::vector<std::uint32_t> cycle(n);
  std::iota(cycle.begin(), cycle.end(), 1u);
  std::vector<Permutation> gens{permutation_from_cycles({{1, 2}}, n)};
  if (n > 2) gens.push_back(permutation_from_cycles({cycle}, n));
  return std::make_shared<const GroupData>(build_group(gens));
}

std::size_t element_of(const GroupData& g, const std::vector<std::vector<std::uint32_t>>& cycles) {
  const auto e = g.find(permutation_from_cycles(cycles, g.degree()));
  if (!e) throw CatalogError("permutation is not in the group");
  return *e;
}

std::shared_ptr<const AlgebraData> builtin_algebra(const std::string& name) {
  static const std::regex re(R"((kC|kS|x|T)(\d+):p(\d+))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw CatalogError("unknown algebra '" + name + "'");
  const Residue p = prime_from(m[3]);
  const std::size_t n = to_size(m[2]);
  if (m[1] == "kC") return std::make_shared<const AlgebraData>(group_algebra(*cyclic_group(n), p));
  if (m[1] == "kS") return std::make_shared<const AlgebraData>(group_algebra(*symmetric_group(n), p));
  if (m[1] == "x") {
    if (n == 0) throw CatalogError("x0 is not an algebra");
    return std::make_shared<const AlgebraData>(truncated_polynomial(n, p));
  }
  if (n != 2) throw CatalogError("only T2 is built in");
  return std::make_shared<const AlgebraData>(upper_triangular_2x2(p));
}

bool is_builtin_context_name(const std::string& name) {
  static const std::regex re(R"((C|S)\d+:(1|G|A\d+|C\d+):p\d+|A:(kC|kS|x|T)\d+:p\d+)");
  return std::regex_match(name, re);
}

AdjointContext builtin_context(const std::string& name) {
  if (name.rfind("A:", 0) == 0) return AdjointContext::free_module(builtin_algebra(name.substr(2)), name);

  static const std::regex re(R"((C|S)(\d+):(1|G|A\d+|C\d+):p(\d+))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw CatalogError("unknown context '" + name + "'");
  const std::size_t n = to_size(m[2]);
  const Residue p = prime_from(m[4]);
  const bool symmetric = m[1] == "S";
  auto g = symmetric ? symmetric_group(n) : cyclic_group(n);
  const std::string h = m[3];

  std::vector<std::size_t> sub;
  if (h == "1") {
  } else if (h == "G") {
    sub = g->generators();
  } else if (h[0] == 'A') {
    if (!symmetric || to_size(h.substr(1)) != n) throw CatalogError("A<n> must match S<n>");
    for (std::uint32_t k = 3; k <= n; ++k) sub.push_back(element_of(*g, {{1, 2, k}}));
  } else {
    const std::size_t order = to_size(h.substr(1));
    if (symmetric) {
      if (order != 2) throw CatalogError("S<n> only has the built-in subgroup C2 = <(1 2)>");
      sub.push_back(element_of(*g, {{1, 2}}));
    } else {
      if (order == 0 || n % order != 0) throw CatalogError("C<m> must divide C<n>");
      // generator^(n/m) generates the subgroup of order m
      std::size_t x = 0;
      const std::size_t gen = g->generators().empty() ? 0 : g->generators()[0];
      for (std::size_t k = 0; k < n / order; ++k) x = g->mult(x, gen);
      sub.push_back(x);
    }
  }
  return AdjointContext::group_induction(g, closure(g, sub), p, name);
}

ModuleRep jordan_block(const AdjointContext& ctx, std::size_t n) {
  if (n == 0) throw CatalogError("J0 is the zero module; use a positive size");
  const Residue p = ctx.modulus();
  FpMatrix shift(p, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) shift.set(i + 1, i, 1);
  const FpMatrix one = FpMatrix::identity(p, n);
  const auto& cat = ctx.ambient();

  if (cat->kind() == ModuleCategory::Kind::group) {
    cyclic_generator(ctx);
    return ModuleRep(cat, n, {one + shift});
  }
  // algebra contexts: kC<m> on the basis g^k, or k[x]/x^m on the basis x^k
  const AlgebraData& a = cat->algebra();
  std::vector<FpMatrix> action;
  FpMatrix power = one;
  const std::string& nm = ctx.name();
  const bool group_alg = nm.find(":kC") != std::string::npos;
  const bool poly = nm.find(":x") != std::string::npos;
  if (!group_alg && !poly) throw CatalogError("Jordan blocks need a kC<m> or x<m> algebra");
  const FpMatrix step = group_alg ? one + shift : shift;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    action.push_back(power);
    power = power * step;
  }
  return ModuleRep(cat, n, std::move(action));
}

ModuleRep builtin_module(const AdjointContext& ctx, const std::string& name) {
  const auto plus = name.find('+');
  if (plus != std::string::npos) {
    return direct_sum(builtin_module(ctx, name.substr(0, plus)), builtin_module(ctx, name.substr(plus + 1))).sum;
  }
  if (name == "trivial") {
    if (ctx.ambient()->kind() == ModuleCategory::Kind::group) return trivial_module(ctx.ambient());
    // trivial module of an augmented algebra: only the group-algebra case is built in
    if (ctx.name().find(":kC") != std::string::npos) return jordan_block(ctx, 1);
    throw CatalogError("no trivial module for " + ctx.name());
  }
  if (name == "regular") return regular_module(ctx.ambient());
  if (name == "induced") return ctx.induce(regular_module(ctx.base()));
  if (name == "zero") return ModuleRep::zero(ctx.ambient());
  static const std::regex jordan(R"(J(\d+))");
  std::smatch m;
  if (std::regex_match(name, m, jordan)) return jordan_block(ctx, to_size(m[1]));
  throw CatalogError("unknown module '" + name + "'");
}

}  // namespace frobstab
