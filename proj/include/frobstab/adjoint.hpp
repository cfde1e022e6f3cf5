#pragma once

// The adjoint triple (L, M, R) in its two built-in forms:
//   group induction:  L = R = Res^G_H,  M = Ind_H^G
//   free modules:     L = R = forget,   M = A (x) -   (A a Frobenius algebra)
// Units and counits are explicit matrices.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobstab/module.hpp"

namespace frobstab {

class AdjointContext {
 public:
  /// (G, H, p). Ambient category: GF(p)G-modules; base: GF(p)H-modules.
  static AdjointContext group_induction(std::shared_ptr<const GroupData> group,
                                        std::shared_ptr<const SubgroupData> subgroup, Residue p,
                                        std::string name);
  /// A-modules over vector spaces. A must be Frobenius; the form found by
  /// is_frobenius_algebra(seed) fixes the unit of (forget, A (x) -).
  static AdjointContext free_module(std::shared_ptr<const AlgebraData> algebra, std::string name,
                                    std::uint64_t seed = 0);

  const std::string& name() const { return name_; }
  const CategoryPtr& ambient() const { return ambient_; }
  const CategoryPtr& base() const { return base_; }
  Residue modulus() const { return ambient_->modulus(); }
  bool is_group_induction() const { return std::holds_alternative<GroupInduction>(data_); }
  /// [G:H] for group induction, dim A for free modules: the multiplicity of MLX over X.
  std::size_t index() const;
  const SubgroupData& subgroup() const;
  const AlgebraData& algebra() const;
  /// Frobenius form used by the free-module unit.
  const std::vector<Residue>& frobenius_form() const;

  ModuleRep restrict(const ModuleRep& x) const;
  ModuleMap restrict(const ModuleMap& f) const;
  ModuleRep left_adjoint(const ModuleRep& x) const { return restrict(x); }
  ModuleRep right_adjoint(const ModuleRep& x) const { return restrict(x); }
  ModuleMap left_adjoint(const ModuleMap& f) const { return restrict(f); }
  ModuleMap right_adjoint(const ModuleMap& f) const { return restrict(f); }

  ModuleRep induce(const ModuleRep& y) const;
  ModuleMap induce(const ModuleMap& f) const;
  ModuleRep induce_restrict(const ModuleRep& x) const { return induce(restrict(x)); }

  /// eta_X : X -> M L X, unit of (L, M).
  ModuleMap unit(const ModuleRep& x) const;
  /// eps_X : M R X -> X, counit of (M, R).
  ModuleMap counit(const ModuleRep& x) const;
  /// Base-side unit of (M, R): Y -> R M Y.
  ModuleMap base_unit(const ModuleRep& y) const;
  /// Base-side counit of (L, M): L M Y -> Y.
  ModuleMap base_counit(const ModuleRep& y) const;

  // Raw matrices behind the four maps above.
  FpMatrix unit_matrix(const ModuleRep& x) const;
  FpMatrix counit_matrix(const ModuleRep& x) const;
  FpMatrix base_unit_matrix(const ModuleRep& y) const;
  FpMatrix base_counit_matrix(const ModuleRep& y) const;

  void require_ambient(const ModuleRep& x) const;
  void require_base(const ModuleRep& y) const;

 private:
  struct GroupInduction {
    std::shared_ptr<const GroupData> group;
    std::shared_ptr<const SubgroupData> subgroup;
  };
  struct FreeModule {
    std::shared_ptr<const AlgebraData> algebra;
    std::vector<Residue> form;
    /// Dual basis f_i = sum_k dual(i, k) e_k with form(f_i e_j) = delta_ij.
    FpMatrix dual;
  };
  std::string name_;
  CategoryPtr ambient_;
  CategoryPtr base_;
  std::variant<GroupInduction, FreeModule> data_;
};

struct TriangleViolation {
  std::string identity;
  std::string module;
};

struct TriangleReport {
  std::size_t checked = 0;
  std::vector<TriangleViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Overrides for the matrices the checker consumes (negative-control fixtures).
struct TriangleCheckHooks {
  std::function<FpMatrix(const ModuleRep&)> unit_matrix;
};

/// Verifies on each sample that eta_X and eps_X intertwine and that the four triangle
/// identities hold by matrix multiplication:
///   eps'_{LX} . L(eta_X) = id,   R(eps_X) . eta'_{RX} = id       (X ambient)
///   M(eps'_Y) . eta_{MY} = id,   eps_{MY} . M(eta'_Y) = id       (Y base)
TriangleReport check_triangle_identities(const AdjointContext& ctx,
                                         const std::vector<ModuleRep>& ambient_samples,
                                         const std::vector<ModuleRep>& base_samples,
                                         const TriangleCheckHooks& hooks = {});

}  // namespace frobstab
