#pragma once

// Relative projectivity, the stable category modulo maps factoring through
// relatively projective modules, relative (co)syzygies, Happel triangles,
// Schanuel comparison and a witness search for stable isomorphism.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frobstab/exact_structure.hpp"

namespace frobstab {

/// Section s of eps_X (eps_X . s = id_X). Exact solve: absence is definitive.
std::optional<ModuleMap> is_relatively_projective(const AdjointContext& ctx, const ModuleRep& x);

/// h : X -> M R Y with eps_Y . h = f.
std::optional<ModuleMap> factors_through_relproj(const AdjointContext& ctx, const ModuleMap& f);
/// h : M L X -> Y with h . eta_X = f.
std::optional<ModuleMap> factors_through_unit(const AdjointContext& ctx, const ModuleMap& f);

class StableHom {
 public:
  ModuleRep source;
  ModuleRep target;
  std::vector<ModuleMap> full_hom_basis;
  std::vector<ModuleMap> factoring_subspace_basis;
  std::vector<ModuleMap> quotient_representatives;
  std::size_t stable_dimension = 0;

  /// Coordinates of the class of f on quotient_representatives.
  std::vector<Residue> class_of(const ModuleMap& f) const;
  bool is_stably_zero(const ModuleMap& f) const;

 private:
  friend StableHom stable_hom(const AdjointContext&, const ModuleRep&, const ModuleRep&);
  StableHom(ModuleRep s, ModuleRep t) : source(std::move(s)), target(std::move(t)) {}
  /// Vectorized factoring basis followed by the representatives; invertible on its column span.
  FpMatrix coordinates_;
};

StableHom stable_hom(const AdjointContext& ctx, const ModuleRep& x, const ModuleRep& y);

/// X >-> M L X ->> Omega^-1 X
struct Cosyzygy {
  ModuleRep module;
  ModuleMap inflation;  // eta_X
  ModuleMap deflation;  // q
  FpMatrix section;     // linear right inverse of q
};
Cosyzygy relative_cosyzygy(const AdjointContext& ctx, const ModuleRep& x);

/// Omega X >-> M R X ->> X
struct Syzygy {
  ModuleRep module;
  ModuleMap inflation;  // j
  ModuleMap deflation;  // eps_X
};
Syzygy relative_syzygy(const AdjointContext& ctx, const ModuleRep& x);

/// Omega^-1 of a map, induced by M L f on the cokernels of the units.
ModuleMap shift_map(const AdjointContext& ctx, const ModuleMap& f);

/// X -f-> Y -> C_f -> Omega^-1 X with the cone C_f = coker(x -> (eta_X x, -f x)).
struct Triangle {
  ModuleMap base;         // f
  ModuleMap to_cone;      // Y -> C_f
  ModuleMap to_shift;     // C_f -> Omega^-1 X
  ModuleMap shifted_base; // Omega^-1 f
  const ModuleRep& x() const { return base.source(); }
  const ModuleRep& y() const { return base.target(); }
  const ModuleRep& cone() const { return to_cone.target(); }
  const ModuleRep& shift() const { return to_shift.target(); }
};
Triangle happel_triangle(const AdjointContext& ctx, const ModuleMap& f);

/// The three consecutive composites each factor through a relatively projective module.
bool triangle_composites_factor(const AdjointContext& ctx, const Triangle& t);

class SchanuelPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Isomorphism coker(i1) (+) P2 -> coker(i2) (+) P1, built from b : P1 -> P2 with
/// b i1 = i2 and a : P2 -> P1 with a i2 = i1, then checked to be invertible.
std::optional<ModuleMap> schanuel_compare(const AdjointContext& ctx, const ModuleMap& i1,
                                          const ModuleMap& i2);

inline constexpr std::uint64_t kDefaultStableBudget = std::uint64_t{1} << 20;

struct StableIsoVerdict {
  enum class Kind { yes, no_certified, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<ModuleMap> f;  // X -> Y
  std::optional<ModuleMap> g;  // Y -> X
  bool exhaustive = false;
  std::uint64_t candidates = 0;
};

/// Searches f over stable classes of Hom(X, Y) and solves linearly for g with
/// g f = id_X and f g = id_Y stably. The search is exhaustive when
/// p^(stable dim Hom(X,Y)) <= budget, otherwise `budget` seeded draws.
StableIsoVerdict is_stably_isomorphic(const AdjointContext& ctx, const ModuleRep& x,
                                      const ModuleRep& y, std::uint64_t seed = 0,
                                      std::uint64_t budget = kDefaultStableBudget);

const char* to_string(StableIsoVerdict::Kind kind);

}  // namespace frobstab
