#include "frobstab/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace frobstab {

Permutation permutation_from_cycles(const std::vector<std::vector<std::uint32_t>>& cycles,
                                    std::size_t degree) {
  Permutation perm(degree);
  for (std::size_t i = 0; i < degree; ++i) perm[i] = static_cast<std::uint32_t>(i);
  std::vector<bool> seen(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const auto pt = cycle[k];
      if (pt < 1 || pt > degree) {
        throw GroupError("cycle point " + std::to_string(pt) + " outside 1.." +
                         std::to_string(degree));
      }
      if (seen[pt - 1]) throw GroupError("point " + std::to_string(pt) + " repeated in cycles");
      seen[pt - 1] = true;
      perm[pt - 1] = cycle[(k + 1) % cycle.size()] - 1;
    }
  }
  return perm;
}

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

void check_permutation(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) throw GroupError("generators act on different point sets");
  std::vector<bool> hit(degree, false);
  for (auto x : p) {
    if (x >= degree || hit[x]) throw GroupError("generator is not a bijection");
    hit[x] = true;
  }
}

}  // namespace

std::optional<std::size_t> GroupData::find(const Permutation& perm) const {
  for (std::size_t i = 0; i < perms_.size(); ++i) {
    if (perms_[i] == perm) return i;
  }
  return std::nullopt;
}

GroupData build_group(const std::vector<Permutation>& generators, std::size_t max_order) {
  const std::size_t degree = generators.empty() ? 0 : generators.front().size();
  for (const auto& g : generators) check_permutation(g, degree);

  GroupData G;
  G.degree_ = degree;
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);

  std::map<Permutation, std::size_t> index;
  auto& tree = G.tree_;
  G.perms_.push_back(id);
  G.labels_.push_back("e");
  index.emplace(id, 0);
  tree.elements.push_back(0);
  tree.parent.push_back(0);
  tree.via.push_back(0);

  // BFS over right multiplication x -> x * s
  for (std::size_t k = 0; k < G.perms_.size(); ++k) {
    std::vector<std::size_t> steps(generators.size());
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Permutation y = compose(G.perms_[k], generators[s]);
      auto it = index.find(y);
      if (it == index.end()) {
        if (G.perms_.size() >= max_order) {
          throw GroupError("group order exceeds bound " + std::to_string(max_order));
        }
        const std::size_t n = G.perms_.size();
        it = index.emplace(std::move(y), n).first;
        G.perms_.push_back(it->first);
        const std::string gs = "g" + std::to_string(s);
        G.labels_.push_back(k == 0 ? gs : G.labels_[k] + "*" + gs);
        tree.elements.push_back(n);
        tree.parent.push_back(k);
        tree.via.push_back(s);
      }
      steps[s] = it->second;
    }
    tree.step.push_back(std::move(steps));
  }

  const std::size_t n = G.perms_.size();
  for (std::size_t s = 0; s < generators.size(); ++s) {
    tree.generators.push_back(index.at(generators[s]));
  }
  tree.position.resize(n);
  for (std::size_t i = 0; i < n; ++i) tree.position[i] = i;

  // a * b = (a * parent(b)) * gen(via(b)); BFS order guarantees parent(b) < b
  G.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    G.table_[a * n] = static_cast<std::uint32_t>(a);
    for (std::size_t b = 1; b < n; ++b) {
      const std::size_t ap = G.table_[a * n + tree.parent[b]];
      G.table_[a * n + b] = static_cast<std::uint32_t>(tree.step[ap][tree.via[b]]);
    }
  }
  G.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (G.table_[a * n + b] == 0) {
        G.inverse_[a] = b;
        break;
      }
    }
  }

  if (n <= 128) {
    for (std::size_t a = 0; a < n; ++a) {
      if (G.mult(G.inverse(a), a) != 0) throw GroupError("inverse table inconsistent");
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (G.mult(G.mult(a, b), c) != G.mult(a, G.mult(b, c))) {
            throw GroupError("multiplication table is not associative");
          }
        }
      }
    }
  }
  return G;
}

CayleyTree cayley_tree(const GroupData& group, std::span<const std::size_t> generators) {
  CayleyTree tree;
  tree.generators.assign(generators.begin(), generators.end());
  tree.position.assign(group.order(), CayleyTree::npos);
  tree.elements.push_back(0);
  tree.parent.push_back(0);
  tree.via.push_back(0);
  tree.position[0] = 0;
  for (std::size_t k = 0; k < tree.elements.size(); ++k) {
    std::vector<std::size_t> steps(generators.size());
    for (std::size_t s = 0; s < generators.size(); ++s) {
      const std::size_t y = group.mult(tree.elements[k], generators[s]);
      if (tree.position[y] == CayleyTree::npos) {
        tree.position[y] = tree.elements.size();
        tree.elements.push_back(y);
        tree.parent.push_back(k);
        tree.via.push_back(s);
      }
      steps[s] = tree.position[y];
    }
    tree.step.push_back(std::move(steps));
  }
  return tree;
}

SubgroupData subgroup_closure(std::shared_ptr<const GroupData> group,
                              std::span<const std::size_t> elements) {
  const GroupData& G = *group;
  for (auto e : elements) {
    if (e >= G.order()) throw GroupError("subgroup element index out of range");
  }
  // keep an input element only if it is not already generated by the previous ones
  std::vector<std::size_t> gens;
  std::vector<bool> covered(G.order(), false);
  covered[0] = true;
  for (auto e : elements) {
    if (covered[e]) continue;
    gens.push_back(e);
    const CayleyTree t = cayley_tree(G, gens);
    for (auto x : t.elements) covered[x] = true;
  }

  SubgroupData H;
  H.parent_ = std::move(group);
  H.tree_ = cayley_tree(G, gens);
  H.elements_ = H.tree_.elements;
  std::sort(H.elements_.begin(), H.elements_.end());

  H.lookup_.assign(G.order(), {CayleyTree::npos, 0});
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (H.lookup_[g].coset != CayleyTree::npos) continue;
    const std::size_t c = H.coset_reps_.size();
    H.coset_reps_.push_back(g);
    for (auto h : H.elements_) H.lookup_[G.mult(g, h)] = {c, h};
  }
  return H;
}

}  // namespace frobstab
