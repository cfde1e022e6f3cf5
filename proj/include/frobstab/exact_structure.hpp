#pragma once

// Short exact sequences, split detection, the relative exact structure of sequences
// that split after restriction, pullbacks/pushouts, and a sampled audit of the
// exact-category axioms Ex0, Ex1, Ex2, Ex2^op.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobstab/adjoint.hpp"

namespace frobstab {

class NotExact : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// X >-> Y ->> Z with exactness checked at construction.
class ShortExactSeq {
 public:
  ShortExactSeq(ModuleMap inflation, ModuleMap deflation);

  const ModuleMap& inflation() const { return inflation_; }
  const ModuleMap& deflation() const { return deflation_; }
  const ModuleRep& left() const { return inflation_.source(); }
  const ModuleRep& middle() const { return inflation_.target(); }
  const ModuleRep& right() const { return deflation_.target(); }

 private:
  ModuleMap inflation_;
  ModuleMap deflation_;
};

/// The sequence ker f >-> X ->> coker... completed from one side.
ShortExactSeq complete_inflation(const ModuleMap& i);
ShortExactSeq complete_deflation(const ModuleMap& d);
ShortExactSeq zero_sequence(const CategoryPtr& category);
ShortExactSeq split_sequence(const ModuleRep& x, const ModuleRep& z);

/// s with f . s = id, if one exists among module maps.
std::optional<ModuleMap> is_split_epi(const ModuleMap& f);
/// r with r . f = id, if one exists among module maps.
std::optional<ModuleMap> is_split_mono(const ModuleMap& f);

struct RelativeMembership {
  bool member = false;
  /// Section of L(deflation) on the base side.
  std::optional<ModuleMap> section;
  /// Retraction of R(inflation) on the base side.
  std::optional<ModuleMap> retraction;
};

/// Membership in the class of sequences whose restriction splits. Runs the L-test
/// (deflation split epi) and the R-test (inflation split mono) and throws
/// std::logic_error if they disagree.
RelativeMembership in_relative_structure(const AdjointContext& ctx, const ShortExactSeq& s);

struct Pullback {
  ModuleRep object;      // Y'
  ModuleMap deflation;   // d' : Y' -> Z'
  ModuleMap to_middle;   // f' : Y' -> Y
};
/// Pullback of the epimorphism d : Y -> Z along f : Z' -> Z, realized as the kernel of
/// Y (+) Z' -> Z, (y, z') -> d(y) - f(z').
Pullback pullback_deflation(const ModuleMap& d, const ModuleMap& f);

struct Pushout {
  ModuleRep object;      // Y'
  ModuleMap inflation;   // i' : X' -> Y'
  ModuleMap from_middle; // f' : Y -> Y'
};
/// Pushout of the monomorphism i : X -> Y along f : X -> X', realized as the cokernel of
/// X -> X' (+) Y, x -> (f(x), -i(x)).
Pushout pushout_inflation(const ModuleMap& i, const ModuleMap& f);

/// Random objects and morphisms for audits and property tests. Every draw is a
/// deterministic function of the engine state.
class ModuleSampler {
 public:
  ModuleSampler(const AdjointContext& ctx, std::uint64_t seed, std::size_t max_dim = 8);

  std::mt19937_64& rng() { return rng_; }
  std::size_t max_dim() const { return max_dim_; }
  ModuleRep ambient_module();
  ModuleRep ambient_module(std::size_t max_dim);
  ModuleRep base_module();
  ModuleRep base_module(std::size_t max_dim);
  /// Uniformly random element of Hom(X, Y) in the hom-space basis coordinates.
  ModuleMap random_map(const ModuleRep& x, const ModuleRep& y);
  /// An inflation X >-> (M L X) (+) U of the relative structure: (eta_X, g).
  ModuleMap relative_inflation(const ModuleRep& x, std::size_t extra_dim);
  /// A deflation (M R X) (+) U ->> X of the relative structure: (eps_X, g).
  ModuleMap relative_deflation(const ModuleRep& x, std::size_t extra_dim);
  /// A sequence of the relative structure built from one of several recipes.
  ShortExactSeq relative_sequence();

 private:
  ModuleRep sample(const CategoryPtr& cat, std::size_t max_dim);
  const AdjointContext& ctx_;
  std::mt19937_64 rng_;
  std::size_t max_dim_;
};

struct AxiomTally {
  std::string axiom;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::uint64_t> failure_seeds;
};

struct AuditReport {
  std::vector<AxiomTally> axioms;
  bool passed() const;
  std::size_t failures() const;
};

struct AuditOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  std::size_t max_dim = 8;
  /// Test fixture: rewrites every computed pullback before it is checked.
  std::function<Pullback(const Pullback&)> tamper_pullback;
};

/// Checks Ex0, Ex1, Ex2, Ex2^op and the hypothesis (iv)/(v) instances on sampled
/// sequences. Sample k uses seed + k, which is recorded on failure.
AuditReport axiom_audit(const AdjointContext& ctx, const AuditOptions& options);

}  // namespace frobstab
