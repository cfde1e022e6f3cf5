#pragma once

// Dense exact linear algebra over prime fields GF(p).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobstab {

using Residue = std::uint32_t;

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

inline Residue add_mod(Residue a, Residue b, Residue p) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p ? s - p : s);
}
inline Residue sub_mod(Residue a, Residue b, Residue p) {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p - b);
}
inline Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(std::uint64_t{a} * b % p);
}
inline Residue neg_mod(Residue a, Residue p) { return a == 0 ? 0 : p - a; }
Residue inv_mod(Residue a, Residue p);
/// Reduces an arbitrary signed integer into [0, p).
Residue reduce(std::int64_t v, Residue p);

/// Dense row-major matrix over GF(p). Entries are kept in [0, p) at all times.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(Residue p, std::size_t rows, std::size_t cols);
  FpMatrix(Residue p, std::size_t rows, std::size_t cols, std::vector<Residue> entries);

  static FpMatrix identity(Residue p, std::size_t n);
  static FpMatrix from_rows(Residue p, const std::vector<std::vector<std::int64_t>>& rows);
  /// Column vector from a coefficient list.
  static FpMatrix column(Residue p, std::span<const Residue> values);
  static FpMatrix hstack(std::span<const FpMatrix> blocks);
  static FpMatrix vstack(std::span<const FpMatrix> blocks);
  static FpMatrix block_diagonal(std::span<const FpMatrix> blocks);

  Residue modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v);
  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<Residue>& entries() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  FpMatrix transpose() const;
  FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  FpMatrix select_columns(std::span<const std::size_t> cols) const;
  FpMatrix select_rows(std::span<const std::size_t> rows) const;
  void set_block(std::size_t r0, std::size_t c0, const FpMatrix& b);
  FpMatrix scaled(Residue s) const;
  FpMatrix negated() const;
  /// Row-major flattening as an (rows*cols) x 1 column.
  FpMatrix vectorized() const;
  /// Inverse of vectorized().
  static FpMatrix unvectorize(const FpMatrix& column, std::size_t rows, std::size_t cols);

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) = default;
  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);

  std::string to_string() const;

 private:
  Residue p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

void require_same_modulus(const FpMatrix& a, const FpMatrix& b);

struct RowEchelon {
  FpMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

/// Reduced row echelon form; pivots are the first nonzero entry in column order.
RowEchelon rref(const FpMatrix& a);
std::size_t rank(const FpMatrix& a);

/// Some X with A*X = B, or nothing when B has a column outside the column space of A.
std::optional<FpMatrix> solve_right(const FpMatrix& a, const FpMatrix& b);

/// Columns form a basis of ker A, one per free column of rref(A), in column order.
FpMatrix kernel_basis(const FpMatrix& a);

std::optional<FpMatrix> inverse(const FpMatrix& a);

/// Indices of a maximal linearly independent subset of the columns (rref pivots).
std::vector<std::size_t> independent_columns(const FpMatrix& a);

/// Coefficients c with sum_k c_k * images[k] = target, if the target lies in the span.
std::optional<std::vector<Residue>> solve_combination(std::span<const FpMatrix> images,
                                                      const FpMatrix& target);

FpMatrix linear_combination(std::span<const FpMatrix> basis, std::span<const Residue> coeffs);

/// Completes the independent columns of `a` to a basis of GF(p)^rows with standard
/// vectors. Returns the indices of the standard vectors used, in increasing order.
std::vector<std::size_t> complement_coordinates(const FpMatrix& a);

inline constexpr std::uint64_t kDefaultExhaustiveThreshold = std::uint64_t{1} << 16;

/// p^k saturated at UINT64_MAX.
std::uint64_t saturating_power(std::uint64_t p, std::size_t k);

/// Searches for coefficients making sum_k c_k * basis[k] invertible. Seeded random trials
/// come first; when p^(dim span) <= exhaustive_threshold every combination of an
/// independent subset is then enumerated, so a miss certifies that none exists.
std::optional<std::vector<Residue>> invertible_combination(
    std::span<const FpMatrix> basis, std::uint64_t seed, std::size_t max_trials,
    std::uint64_t exhaustive_threshold = kDefaultExhaustiveThreshold);

/// True when invertible_combination would run the exhaustive enumeration on this basis.
bool exhaustive_regime(std::span<const FpMatrix> basis,
                       std::uint64_t exhaustive_threshold = kDefaultExhaustiveThreshold);

/// Portable uniform-ish draw in [0, bound) from a 64-bit engine.
template <typename Engine>
std::uint64_t draw_below(Engine& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

}  // namespace frobstab
