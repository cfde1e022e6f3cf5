#pragma once

// Finite permutation groups materialized by their multiplication table, and subgroups
// with left-coset bookkeeping.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobstab {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 0-based image list: point i is sent to perm[i].
using Permutation = std::vector<std::uint32_t>;

/// Builds a permutation of {0..degree-1} from cycles written on 1-based points.
Permutation permutation_from_cycles(const std::vector<std::vector<std::uint32_t>>& cycles,
                                    std::size_t degree);

/// Spanning tree of the right Cayley graph of a group (or subgroup) over a generator list.
/// elements[k] = elements[parent[k]] * generators[via[k]], in BFS order from the identity.
/// Element values are indices into the ambient GroupData.
struct CayleyTree {
  std::vector<std::size_t> generators;
  std::vector<std::size_t> elements;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> via;
  /// step[k][s] = position of elements[k] * generators[s]
  std::vector<std::vector<std::size_t>> step;
  /// ambient element index -> position in `elements`, or npos
  std::vector<std::size_t> position;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t size() const { return elements.size(); }
  bool contains(std::size_t g) const { return position[g] != npos; }
};

inline constexpr std::size_t kDefaultMaxGroupOrder = 10000;

class GroupData {
 public:
  std::size_t order() const { return perms_.size(); }
  std::size_t degree() const { return degree_; }
  /// Product a*b as composition: (a*b)(i) = a(b(i)).
  std::size_t mult(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  const Permutation& permutation(std::size_t a) const { return perms_[a]; }
  std::optional<std::size_t> find(const Permutation& perm) const;
  /// Generators as element indices (deduplicated, identity removed).
  const std::vector<std::size_t>& generators() const { return tree_.generators; }
  const CayleyTree& tree() const { return tree_; }

 private:
  friend GroupData build_group(const std::vector<Permutation>&, std::size_t);
  std::size_t degree_ = 0;
  std::vector<Permutation> perms_;
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> inverse_;
  CayleyTree tree_;
};

/// Enumerates the group generated by `generators` in BFS order from the identity.
GroupData build_group(const std::vector<Permutation>& generators,
                      std::size_t max_order = kDefaultMaxGroupOrder);

class SubgroupData {
 public:
  const GroupData& parent() const { return *parent_; }
  const std::shared_ptr<const GroupData>& parent_ptr() const { return parent_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t index() const { return coset_reps_.size(); }
  /// Sorted ambient indices, always containing 0.
  const std::vector<std::size_t>& elements() const { return elements_; }
  /// Left coset representatives; the first is always the identity.
  const std::vector<std::size_t>& coset_reps() const { return coset_reps_; }
  struct CosetEntry {
    std::size_t coset;
    std::size_t h;  // ambient index of the H-part
  };
  /// g = coset_reps()[coset] * h.
  const CosetEntry& lookup(std::size_t g) const { return lookup_[g]; }
  const std::vector<std::size_t>& generators() const { return tree_.generators; }
  const CayleyTree& tree() const { return tree_; }
  bool contains(std::size_t g) const { return tree_.contains(g); }

 private:
  friend SubgroupData subgroup_closure(std::shared_ptr<const GroupData>,
                                       std::span<const std::size_t>);
  std::shared_ptr<const GroupData> parent_;
  std::vector<std::size_t> elements_;
  std::vector<std::size_t> coset_reps_;
  std::vector<CosetEntry> lookup_;
  CayleyTree tree_;
};

/// Smallest subgroup containing `elements`. Coset representatives are picked greedily as
/// the smallest element index not yet covered.
SubgroupData subgroup_closure(std::shared_ptr<const GroupData> group,
                              std::span<const std::size_t> elements);

/// Cayley tree of the subgroup generated by `generators` inside `group`.
CayleyTree cayley_tree(const GroupData& group, std::span<const std::size_t> generators);

}  // namespace frobstab
