#pragma once

// Finite-dimensional associative unital algebras over GF(p) given by structure constants.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frobstab/field_linalg.hpp"
#include "frobstab/group.hpp"

namespace frobstab {

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AlgebraData {
 public:
  /// structure[(i*d + j)*d + k] is the coefficient of e_k in e_i * e_j.
  AlgebraData(Residue p, std::size_t dim, std::vector<Residue> structure,
              std::vector<Residue> unit);

  Residue modulus() const { return p_; }
  std::size_t dim() const { return dim_; }
  Residue structure(std::size_t i, std::size_t j, std::size_t k) const {
    return structure_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Residue>& unit() const { return unit_; }
  /// Matrix of x -> e_i * x on the basis.
  const FpMatrix& left_multiplication(std::size_t i) const { return left_[i]; }
  /// Gram-type matrix C_k with C_k(i, j) = structure(i, j, k).
  FpMatrix structure_slice(std::size_t k) const;
  std::vector<Residue> multiply(const std::vector<Residue>& a, const std::vector<Residue>& b) const;

 private:
  Residue p_;
  std::size_t dim_;
  std::vector<Residue> structure_;
  std::vector<Residue> unit_;
  std::vector<FpMatrix> left_;
};

/// Group algebra GF(p)G on the element basis of G.
AlgebraData group_algebra(const GroupData& group, Residue p);
/// GF(p)[x]/(x^n) on the basis 1, x, ..., x^(n-1).
AlgebraData truncated_polynomial(std::size_t n, Residue p);
/// Upper-triangular 2x2 matrices on the basis E11, E12, E22.
AlgebraData upper_triangular_2x2(Residue p);

/// Gram matrix of (x, y) -> lambda(x y).
FpMatrix frobenius_gram(const AlgebraData& a, const std::vector<Residue>& lambda);

/// A functional lambda whose form (x, y) -> lambda(xy) is nondegenerate, if one exists.
/// Coordinate functionals are tried first, then a seeded search over all functionals;
/// when p^d is below the exhaustive threshold a miss certifies that A is not Frobenius.
std::optional<std::vector<Residue>> is_frobenius_algebra(
    const AlgebraData& a, std::uint64_t seed, std::size_t max_trials = 256,
    std::uint64_t exhaustive_threshold = kDefaultExhaustiveThreshold);

}  // namespace frobstab
