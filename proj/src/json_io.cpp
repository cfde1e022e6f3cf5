#include "frobstab/json_io.hpp"

#include <algorithm>
#include <memory>

#include "frobstab/catalog.hpp"

namespace frobstab {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t count(const json& j, const char* what) {
  const auto v = integer(j, what);
  if (v < 0) throw FormatError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

Residue prime(const json& j) {
  const auto p = integer(j, "p");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw FormatError("p must be a prime");
  return static_cast<Residue>(p);
}

// One generator: a list of cycles, or a flat list read as a single cycle.
std::vector<std::vector<std::uint32_t>> cycles_of(const json& g) {
  if (!g.is_array()) throw FormatError("a generator must be a list of cycles");
  std::vector<std::vector<std::uint32_t>> cycles;
  const bool flat = !g.empty() && g.front().is_number();
  auto read_cycle = [](const json& c) {
    if (!c.is_array()) throw FormatError("a cycle must be a list of points");
    std::vector<std::uint32_t> cyc;
    for (const auto& x : c) {
      const auto v = integer(x, "cycle point");
      if (v < 1) throw FormatError("cycle points are 1-based");
      cyc.push_back(static_cast<std::uint32_t>(v));
    }
    return cyc;
  };
  if (flat) {
    cycles.push_back(read_cycle(g));
  } else {
    for (const auto& c : g) cycles.push_back(read_cycle(c));
  }
  return cycles;
}

std::size_t degree_of(const json& generators) {
  std::size_t degree = 1;
  for (const auto& g : generators) {
    for (const auto& c : cycles_of(g)) {
      for (auto x : c) degree = std::max<std::size_t>(degree, x);
    }
  }
  return degree;
}

}  // namespace

nlohmann::json matrix_to_json(const FpMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

FpMatrix matrix_from_json(const json& j, Residue p, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw FormatError("matrix must have " + std::to_string(rows) + " rows");
  }
  FpMatrix m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw FormatError("matrix row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, reduce(integer(j[r][c], "matrix entry"), p));
  }
  return m;
}

nlohmann::json module_to_json(const ModuleRep& x) {
  json action = json::object();
  for (std::size_t s = 0; s < x.action().size(); ++s) action[std::to_string(s)] = matrix_to_json(x.action()[s]);
  return json{{"p", x.modulus()}, {"dim", x.dim()}, {"action", action}};
}

AlgebraData algebra_from_json(const json& j) {
  const Residue p = prime(field(j, "p"));
  const std::size_t d = count(field(j, "dim"), "dim");
  const json& s = field(j, "structure");
  if (!s.is_array() || s.size() != d) throw FormatError("structure must be a d x d x d array");
  std::vector<Residue> constants;
  constants.reserve(d * d * d);
  for (const auto& row : s) {
    if (!row.is_array() || row.size() != d) throw FormatError("structure must be a d x d x d array");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != d) throw FormatError("structure must be a d x d x d array");
      for (const auto& c : cell) constants.push_back(reduce(integer(c, "structure constant"), p));
    }
  }
  const json& u = field(j, "unit");
  if (!u.is_array() || u.size() != d) throw FormatError("unit must have d coefficients");
  std::vector<Residue> unit;
  for (const auto& c : u) unit.push_back(reduce(integer(c, "unit coefficient"), p));
  return AlgebraData(p, d, std::move(constants), std::move(unit));
}

LoadedContext context_from_json(const json& j, const std::string& name) {
  if (j.contains("algebra")) {
    auto a = std::make_shared<const AlgebraData>(algebra_from_json(j.at("algebra")));
    return LoadedContext{AdjointContext::free_module(a, name), {}};
  }
  const Residue p = prime(field(j, "p"));
  const json& gens = field(field(j, "group"), "generators");
  if (!gens.is_array() || gens.empty()) throw FormatError("group needs at least one generator");
  const std::size_t degree = degree_of(gens);
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(permutation_from_cycles(cycles_of(g), degree));
  auto group = std::make_shared<const GroupData>(build_group(perms));

  std::vector<std::size_t> listed;
  for (const auto& perm : perms) listed.push_back(*group->find(perm));

  std::vector<std::size_t> sub;
  if (j.contains("subgroup")) {
    const json& h = j.at("subgroup");
    const json& list = h.contains("elements") ? h.at("elements") : field(h, "generators");
    if (!list.is_array()) throw FormatError("subgroup elements/generators must be a list");
    for (const auto& e : list) {
      if (e.is_array()) {
        sub.push_back(element_of(*group, cycles_of(e)));
      } else {
        const std::size_t k = count(e, "subgroup element");
        if (k >= group->order()) throw FormatError("subgroup element index out of range");
        sub.push_back(k);
      }
    }
  }
  auto subgroup = std::make_shared<const SubgroupData>(subgroup_closure(group, sub));
  return LoadedContext{AdjointContext::group_induction(group, subgroup, p, name), std::move(listed)};
}

LoadedContext builtin_loaded_context(const std::string& name) {
  AdjointContext ctx = builtin_context(name);
  std::vector<std::size_t> listed;
  if (ctx.is_group_induction()) listed = ctx.ambient()->group().generators();
  return LoadedContext{std::move(ctx), std::move(listed)};
}

ModuleRep module_from_json(const LoadedContext& lc, const json& j) {
  const AdjointContext& ctx = lc.context;
  const Residue p = prime(field(j, "p"));
  if (p != ctx.modulus()) {
    throw FormatError("module prime " + std::to_string(p) + " differs from context prime " +
                      std::to_string(ctx.modulus()));
  }
  const std::size_t n = count(field(j, "dim"), "dim");
  const json& action = field(j, "action");
  if (!action.is_object()) throw FormatError("action must be an object keyed by generator index");
  const CategoryPtr& cat = ctx.ambient();

  auto matrix_for = [&](std::size_t k) {
    const std::string key = std::to_string(k);
    if (!action.contains(key)) throw FormatError("action is missing generator " + key);
    return matrix_from_json(action.at(key), p, n, n);
  };

  if (cat->kind() != ModuleCategory::Kind::group) {
    std::vector<FpMatrix> mats;
    for (std::size_t k = 0; k < cat->generator_count(); ++k) mats.push_back(matrix_for(k));
    return ModuleRep(cat, n, std::move(mats));
  }

  const auto& tree_gens = cat->tree().generators;
  std::vector<std::optional<FpMatrix>> mats(tree_gens.size());
  for (std::size_t k = 0; k < lc.listed_generators.size(); ++k) {
    FpMatrix m = matrix_for(k);
    const std::size_t e = lc.listed_generators[k];
    const auto it = std::find(tree_gens.begin(), tree_gens.end(), e);
    if (it == tree_gens.end()) {
      // the identity was listed as a generator
      if (!m.is_identity()) throw RepresentationError("generator " + std::to_string(k) + " is the identity but acts nontrivially");
      continue;
    }
    auto& slot = mats[static_cast<std::size_t>(it - tree_gens.begin())];
    if (slot && *slot != m) {
      throw RepresentationError("generator " + std::to_string(k) + " repeats an earlier generator with a different matrix");
    }
    slot = std::move(m);
  }
  std::vector<FpMatrix> out;
  for (auto& m : mats) out.push_back(std::move(*m));
  return ModuleRep(cat, n, std::move(out));
}

}  // namespace frobstab
