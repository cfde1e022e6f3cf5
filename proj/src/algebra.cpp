#include "frobstab/algebra.hpp"

#include <string>

namespace frobstab {

AlgebraData::AlgebraData(Residue p, std::size_t dim, std::vector<Residue> constants,
                         std::vector<Residue> unit)
    : p_(p), dim_(dim), structure_(std::move(constants)), unit_(std::move(unit)) {
  if (!is_prime(p)) throw AlgebraError("algebra modulus is not prime");
  if (structure_.size() != dim_ * dim_ * dim_) throw AlgebraError("structure constant count != d^3");
  if (unit_.size() != dim_) throw AlgebraError("unit vector length != d");
  for (auto c : structure_) {
    if (c >= p_) throw AlgebraError("structure constant out of range");
  }
  for (auto c : unit_) {
    if (c >= p_) throw AlgebraError("unit coefficient out of range");
  }
  const std::size_t d = dim_;
  // (e_i e_j) e_k = e_i (e_j e_k), coefficient of e_l
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
          std::uint64_t lhs = 0, rhs = 0;
          for (std::size_t m = 0; m < d; ++m) {
            lhs += std::uint64_t{structure(i, j, m)} * structure(m, k, l) % p_;
            rhs += std::uint64_t{structure(j, k, m)} * structure(i, m, l) % p_;
          }
          if (lhs % p_ != rhs % p_) {
            throw AlgebraError("structure constants not associative at (" + std::to_string(i) +
                               "," + std::to_string(j) + "," + std::to_string(k) + ")");
          }
        }
      }
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      std::uint64_t left = 0, right = 0;
      for (std::size_t i = 0; i < d; ++i) {
        left += std::uint64_t{unit_[i]} * structure(i, j, k) % p_;
        right += std::uint64_t{unit_[i]} * structure(j, i, k) % p_;
      }
      const std::uint64_t want = j == k ? 1 : 0;
      if (left % p_ != want || right % p_ != want) throw AlgebraError("unit axiom fails");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    FpMatrix l(p_, d, d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) l.set(k, j, structure(i, j, k));
    }
    left_.push_back(std::move(l));
  }
}

FpMatrix AlgebraData::structure_slice(std::size_t k) const {
  FpMatrix c(p_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) c.set(i, j, structure(i, j, k));
  }
  return c;
}

std::vector<Residue> AlgebraData::multiply(const std::vector<Residue>& a,
                                           const std::vector<Residue>& b) const {
  std::vector<std::uint64_t> acc(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      const std::uint64_t ab = std::uint64_t{a[i]} * b[j] % p_;
      for (std::size_t k = 0; k < dim_; ++k) acc[k] = (acc[k] + ab * structure(i, j, k)) % p_;
    }
  }
  return {acc.begin(), acc.end()};
}

AlgebraData group_algebra(const GroupData& group, Residue p) {
  const std::size_t n = group.order();
  std::vector<Residue> c(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[(i * n + j) * n + group.mult(i, j)] = 1;
  }
  std::vector<Residue> unit(n, 0);
  if (n > 0) unit[0] = 1;
  return AlgebraData(p, n, std::move(c), std::move(unit));
}

AlgebraData truncated_polynomial(std::size_t n, Residue p) {
  if (n == 0) throw AlgebraError("truncated polynomial ring needs n >= 1");
  std::vector<Residue> c(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) c[(i * n + j) * n + i + j] = 1;
  }
  std::vector<Residue> unit(n, 0);
  unit[0] = 1;
  return AlgebraData(p, n, std::move(c), std::move(unit));
}

AlgebraData upper_triangular_2x2(Residue p) {
  // basis 0 = E11, 1 = E12, 2 = E22
  const std::size_t d = 3;
  std::vector<Residue> c(d * d * d, 0);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) { c[(i * d + j) * d + k] = 1; };
  set(0, 0, 0);  // E11 E11 = E11
  set(0, 1, 1);  // E11 E12 = E12
  set(1, 2, 1);  // E12 E22 = E12
  set(2, 2, 2);  // E22 E22 = E22
  return AlgebraData(p, d, std::move(c), {1, 0, 1});
}

FpMatrix frobenius_gram(const AlgebraData& a, const std::vector<Residue>& lambda) {
  const std::size_t d = a.dim();
  FpMatrix g(a.modulus(), d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < d; ++k) s += std::uint64_t{a.structure(i, j, k)} * lambda[k] % a.modulus();
      g.set(i, j, static_cast<Residue>(s % a.modulus()));
    }
  }
  return g;
}

std::optional<std::vector<Residue>> is_frobenius_algebra(const AlgebraData& a, std::uint64_t seed,
                                                         std::size_t max_trials,
                                                         std::uint64_t exhaustive_threshold) {
  const std::size_t d = a.dim();
  if (d == 0) return std::vector<Residue>{};
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Residue> lambda(d, 0);
    lambda[k] = 1;
    if (rank(frobenius_gram(a, lambda)) == d) return lambda;
  }
  // Gram(lambda) = sum_k lambda_k C_k, so this is an invertible-combination search.
  std::vector<FpMatrix> slices;
  for (std::size_t k = 0; k < d; ++k) slices.push_back(a.structure_slice(k));
  return invertible_combination(slices, seed, max_trials, exhaustive_threshold);
}

}  // namespace frobstab
