#pragma once

// Module categories over GF(p): modules given by action matrices, intertwiners,
// hom-spaces, biproducts, idempotent splitting, sub- and quotient modules.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frobstab/algebra.hpp"
#include "frobstab/field_linalg.hpp"
#include "frobstab/group.hpp"

namespace frobstab {

class RepresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which category of the adjoint situation an object lives in: the ambient category
/// (modules over G or A) or the base category (modules over H, or vector spaces).
enum class Side { ambient, base };

/// One concrete module category. Modules are comparable only within the same
/// category instance; the pointer identity is the context tag.
class ModuleCategory {
 public:
  enum class Kind { group, algebra, vector_space };

  /// Modules over the subgroup `subgroup` of `group` (or over all of `group` when null).
  static std::shared_ptr<const ModuleCategory> group_modules(
      std::shared_ptr<const GroupData> group, std::shared_ptr<const SubgroupData> subgroup,
      Residue p, Side side, std::string name);
  static std::shared_ptr<const ModuleCategory> algebra_modules(
      std::shared_ptr<const AlgebraData> algebra, Side side, std::string name);
  static std::shared_ptr<const ModuleCategory> vector_spaces(Residue p, Side side, std::string name);

  Kind kind() const { return kind_; }
  Residue modulus() const { return p_; }
  Side side() const { return side_; }
  const std::string& name() const { return name_; }
  /// Number of action matrices a module carries.
  std::size_t generator_count() const;

  const GroupData& group() const { return *group_; }
  const CayleyTree& tree() const;
  const SubgroupData* subgroup() const { return subgroup_.get(); }
  const AlgebraData& algebra() const { return *algebra_; }

 private:
  ModuleCategory() = default;
  Kind kind_ = Kind::vector_space;
  Residue p_ = 2;
  Side side_ = Side::ambient;
  std::string name_;
  std::shared_ptr<const GroupData> group_;
  std::shared_ptr<const SubgroupData> subgroup_;
  std::shared_ptr<const AlgebraData> algebra_;
};

using CategoryPtr = std::shared_ptr<const ModuleCategory>;

/// A finite-dimensional module. Cheap to copy; immutable.
class ModuleRep {
 public:
  /// Validates the defining relations; throws RepresentationError naming the first
  /// violated relation.
  ModuleRep(CategoryPtr category, std::size_t dim, std::vector<FpMatrix> action);

  static ModuleRep zero(CategoryPtr category);

  const CategoryPtr& category() const { return impl_->category; }
  std::size_t dim() const { return impl_->dim; }
  Residue modulus() const { return impl_->category->modulus(); }
  const std::vector<FpMatrix>& action() const { return impl_->action; }
  /// Action of every element of the acting group, indexed by Cayley-tree position.
  /// Group categories only.
  const std::vector<FpMatrix>& element_actions() const;

  /// Structural equality: same category and the same action matrices.
  friend bool operator==(const ModuleRep& a, const ModuleRep& b);

 private:
  struct Impl {
    CategoryPtr category;
    std::size_t dim;
    std::vector<FpMatrix> action;
    std::vector<FpMatrix> elements;
  };
  std::shared_ptr<const Impl> impl_;
};

void require_same_category(const ModuleRep& a, const ModuleRep& b);

/// Intertwiner source -> target, stored as a target.dim x source.dim matrix.
class ModuleMap {
 public:
  /// Throws RepresentationError when the matrix does not intertwine the actions.
  ModuleMap(ModuleRep source, ModuleRep target, FpMatrix matrix);

  static ModuleMap identity(const ModuleRep& x);
  static ModuleMap zero(const ModuleRep& source, const ModuleRep& target);

  const ModuleRep& source() const { return source_; }
  const ModuleRep& target() const { return target_; }
  const FpMatrix& matrix() const { return matrix_; }

  bool is_injective() const;
  bool is_surjective() const;

  friend bool operator==(const ModuleMap& a, const ModuleMap& b) = default;

 private:
  ModuleRep source_;
  ModuleRep target_;
  FpMatrix matrix_;
};

/// g o f
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale(const ModuleMap& f, Residue c);
/// Linear combination of maps sharing source and target.
ModuleMap combine(const std::vector<ModuleMap>& basis, const std::vector<Residue>& coeffs,
                  const ModuleRep& source, const ModuleRep& target);

/// Matrix form of the intertwining condition on F (row-major unknowns).
FpMatrix intertwiner_system(const ModuleRep& x, const ModuleRep& y);

/// Basis of Hom(X, Y), read off the kernel of the stacked intertwining system.
std::vector<ModuleMap> hom_space(const ModuleRep& x, const ModuleRep& y);

struct DirectSum {
  ModuleRep sum;
  ModuleMap inclusion_first, inclusion_second;
  ModuleMap projection_first, projection_second;
};
DirectSum direct_sum(const ModuleRep& x, const ModuleRep& y);
/// Block-diagonal sum of maps f1 (+) f2 : X1 (+) X2 -> Y1 (+) Y2.
ModuleMap direct_sum(const ModuleMap& f1, const ModuleMap& f2);

struct Summand {
  ModuleRep summand;
  ModuleMap inclusion;
  ModuleMap projection;
};
/// Splits an idempotent endomorphism e through its image.
Summand split_idempotent(const ModuleRep& x, const ModuleMap& e);

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t max_trials = 512;
  std::uint64_t exhaustive_threshold = kDefaultExhaustiveThreshold;
};

/// An isomorphism X -> Y when one is found. If the hom-space is in the exhaustive regime
/// of invertible_combination, absence certifies X and Y are not isomorphic.
std::optional<ModuleMap> is_isomorphic(const ModuleRep& x, const ModuleRep& y,
                                       const SearchOptions& options = {});
bool iso_search_is_exhaustive(const ModuleRep& x, const ModuleRep& y,
                              const SearchOptions& options = {});

struct Submodule {
  ModuleRep module;
  ModuleMap inclusion;
};
struct Quotient {
  ModuleRep module;
  ModuleMap projection;
  /// Linear (not necessarily equivariant) right inverse of the projection.
  FpMatrix section;
};

/// Submodule spanned by the columns (must be invariant).
Submodule submodule(const ModuleRep& x, const FpMatrix& spanning);
/// Quotient by the span of the columns (must be invariant).
Quotient quotient(const ModuleRep& x, const FpMatrix& spanning);
/// Smallest submodule containing the given columns.
FpMatrix spin(const ModuleRep& x, const FpMatrix& vectors);

Submodule kernel(const ModuleMap& f);
Quotient cokernel(const ModuleMap& f);

/// Left-regular module of the acting structure (group algebra of the acting group,
/// the algebra itself, or the 1-dimensional space).
ModuleRep regular_module(const CategoryPtr& category);
/// Trivial module (every group element acts as 1). Group and vector-space categories.
ModuleRep trivial_module(const CategoryPtr& category);

}  // namespace frobstab
