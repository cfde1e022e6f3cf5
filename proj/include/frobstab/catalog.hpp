#pragma once

// Named built-in groups, algebras, contexts and modules.
//
//   contexts:  C<n>:1:p<p>  C<n>:C<m>:p<p>  C<n>:G:p<p>
//              S<n>:1:p<p>  S<n>:A<n>:p<p>  S<n>:C2:p<p>  S<n>:G:p<p>
//              A:kC<n>:p<p> A:kS<n>:p<p>    A:x<n>:p<p>   A:T2:p<p>
//   modules:   trivial  regular  induced  J<n>  and direct sums X+Y

#include <memory>
#include <stdexcept>
#include <string>

#include "frobstab/adjoint.hpp"

namespace frobstab {

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::shared_ptr<const GroupData> cyclic_group(std::size_t n);
std::shared_ptr<const GroupData> symmetric_group(std::size_t n);
/// Element index of the permutation given by 1-based cycles.
std::size_t element_of(const GroupData& g, const std::vector<std::vector<std::uint32_t>>& cycles);

/// Algebra part of an "A:..." name, e.g. "kC2:p2", "x3:p3", "T2:p2".
std::shared_ptr<const AlgebraData> builtin_algebra(const std::string& name);
AdjointContext builtin_context(const std::string& name);
bool is_builtin_context_name(const std::string& name);

/// Jordan block J_n: a cyclic generator acts as I + N, x acts as N, N the lower shift.
ModuleRep jordan_block(const AdjointContext& ctx, std::size_t n);
ModuleRep builtin_module(const AdjointContext& ctx, const std::string& name);

}  // namespace frobstab
