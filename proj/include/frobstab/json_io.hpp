#pragma once

// JSON file formats:
//   group     {"generators": [[cycle, ...], ...]}        (1-based points; a flat list is one cycle)
//   subgroup  {"elements": [i, ...]} or {"generators": [i or [cycle, ...], ...]}
//   context   {"p": p, "group": group, "subgroup": subgroup}  or  {"algebra": algebra}
//   algebra   {"p": p, "dim": d, "structure": [[[c_ij0, ...]]], "unit": [u_0, ...]}
//   module    {"p": p, "dim": n, "action": {"<generator index>": [[row], ...]}}
//   map       {"source": module, "target": module, "matrix": [[row], ...]}
// Element indices refer to the enumeration order of the group.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobstab/adjoint.hpp"

namespace frobstab {

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A context plus the generator list JSON module files index into.
struct LoadedContext {
  AdjointContext context;
  /// Group contexts: element index of each listed generator. Algebra contexts: empty.
  std::vector<std::size_t> listed_generators;
};

LoadedContext context_from_json(const nlohmann::json& j, const std::string& name);
/// Context from a built-in name; listed generators are the category's own.
LoadedContext builtin_loaded_context(const std::string& name);
AlgebraData algebra_from_json(const nlohmann::json& j);
ModuleRep module_from_json(const LoadedContext& ctx, const nlohmann::json& j);

nlohmann::json matrix_to_json(const FpMatrix& m);
FpMatrix matrix_from_json(const nlohmann::json& j, Residue p, std::size_t rows, std::size_t cols);
/// Writes the action on the category's generators, keyed "0", "1", ...
nlohmann::json module_to_json(const ModuleRep& x);

}  // namespace frobstab
