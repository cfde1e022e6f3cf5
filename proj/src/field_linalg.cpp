#include "frobstab/field_linalg.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

namespace frobstab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Residue inv_mod(Residue a, Residue p) {
  if (a % p == 0) throw LinalgError("inv_mod: zero has no inverse");
  // extended Euclid on signed 64-bit
  std::int64_t r0 = p, r1 = a % p, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return reduce(t0, p);
}

Residue reduce(std::int64_t v, Residue p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

namespace {

void check_modulus(Residue p) {
  if (p < 2 || p >= (Residue{1} << 31) || !is_prime(p)) {
    throw LinalgError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
}

}  // namespace

FpMatrix::FpMatrix(Residue p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  check_modulus(p);
}

FpMatrix::FpMatrix(Residue p, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
    : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_modulus(p);
  if (data_.size() != rows * cols) {
    throw LinalgError("entry count does not match shape");
  }
  for (Residue e : data_) {
    if (e >= p) throw LinalgError("entry out of range [0, p)");
  }
}

FpMatrix FpMatrix::identity(Residue p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(Residue p, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.front().size();
  FpMatrix m(p, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (rows[r].size() != nc) throw LinalgError("ragged row list");
    for (std::size_t c = 0; c < nc; ++c) m.data_[r * nc + c] = reduce(rows[r][c], p);
  }
  return m;
}

FpMatrix FpMatrix::column(Residue p, std::span<const Residue> values) {
  std::vector<Residue> v(values.begin(), values.end());
  for (auto& x : v) x %= p;
  const std::size_t n = v.size();
  return FpMatrix(p, n, 1, std::move(v));
}

FpMatrix FpMatrix::hstack(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw LinalgError("hstack of nothing");
  const std::size_t nr = blocks.front().rows();
  std::size_t nc = 0;
  for (const auto& b : blocks) {
    require_same_modulus(blocks.front(), b);
    if (b.rows() != nr) throw LinalgError("hstack: row count mismatch");
    nc += b.cols();
  }
  FpMatrix m(blocks.front().modulus(), nr, nc);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(0, c0, b);
    c0 += b.cols();
  }
  return m;
}

FpMatrix FpMatrix::vstack(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw LinalgError("vstack of nothing");
  const std::size_t nc = blocks.front().cols();
  std::size_t nr = 0;
  for (const auto& b : blocks) {
    require_same_modulus(blocks.front(), b);
    if (b.cols() != nc) throw LinalgError("vstack: column count mismatch");
    nr += b.rows();
  }
  FpMatrix m(blocks.front().modulus(), nr, nc);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    m.set_block(r0, 0, b);
    r0 += b.rows();
  }
  return m;
}

FpMatrix FpMatrix::block_diagonal(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw LinalgError("block_diagonal of nothing");
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    require_same_modulus(blocks.front(), b);
    nr += b.rows();
    nc += b.cols();
  }
  FpMatrix m(blocks.front().modulus(), nr, nc);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, Residue v) {
  if (r >= rows_ || c >= cols_) throw LinalgError("set: index out of range");
  data_[r * cols_ + c] = v % p_;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue e) { return e == 0; });
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
    }
  }
  return true;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

FpMatrix FpMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw LinalgError("block out of range");
  FpMatrix b(p_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                b.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
  }
  return b;
}

FpMatrix FpMatrix::select_columns(std::span<const std::size_t> cols) const {
  FpMatrix m(p_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) m.data_[r * cols.size() + k] = (*this)(r, cols[k]);
  }
  return m;
}

FpMatrix FpMatrix::select_rows(std::span<const std::size_t> rows) const {
  FpMatrix m(p_, rows.size(), cols_);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[k] * cols_), cols_,
                m.data_.begin() + static_cast<std::ptrdiff_t>(k * cols_));
  }
  return m;
}

void FpMatrix::set_block(std::size_t r0, std::size_t c0, const FpMatrix& b) {
  require_same_modulus(*this, b);
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw LinalgError("set_block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(r * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
  }
}

FpMatrix FpMatrix::scaled(Residue s) const {
  FpMatrix m = *this;
  s %= p_;
  for (auto& e : m.data_) e = mul_mod(e, s, p_);
  return m;
}

FpMatrix FpMatrix::negated() const {
  FpMatrix m = *this;
  for (auto& e : m.data_) e = neg_mod(e, p_);
  return m;
}

FpMatrix FpMatrix::vectorized() const { return FpMatrix(p_, rows_ * cols_, 1, data_); }

FpMatrix FpMatrix::unvectorize(const FpMatrix& column, std::size_t rows, std::size_t cols) {
  if (column.cols() != 1 || column.rows() != rows * cols) {
    throw LinalgError("unvectorize: shape mismatch");
  }
  return FpMatrix(column.modulus(), rows, cols, column.entries());
}

void require_same_modulus(const FpMatrix& a, const FpMatrix& b) {
  if (a.modulus() != b.modulus()) {
    throw LinalgError("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                      std::to_string(b.modulus()));
  }
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  require_same_modulus(a, b);
  if (a.cols_ != b.rows_) throw LinalgError("product: dimension mismatch");
  const Residue p = a.p_;
  FpMatrix c(p, a.rows_, b.cols_);
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t aik = a.data_[i * a.cols_ + k];
      if (aik == 0) continue;
      const Residue* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * b.cols_ + j] = static_cast<Residue>(acc[j]);
  }
  return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinalgError("sum: dimension mismatch");
  FpMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = add_mod(a.data_[k], b.data_[k], a.p_);
  return c;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinalgError("difference: dimension mismatch");
  FpMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = sub_mod(a.data_[k], b.data_[k], a.p_);
  return c;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << "]";
  }
  os << "] mod " << p_;
  return os.str();
}

RowEchelon rref(const FpMatrix& a) {
  const Residue p = a.modulus();
  const std::size_t nr = a.rows(), nc = a.cols();
  std::vector<Residue> m = a.entries();
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = r;
    while (piv < nr && m[piv * nc + c] == 0) ++piv;
    if (piv == nr) continue;
    if (piv != r) {
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv * nc),
                       m.begin() + static_cast<std::ptrdiff_t>(piv * nc + nc),
                       m.begin() + static_cast<std::ptrdiff_t>(r * nc));
    }
    Residue* prow = m.data() + r * nc;
    const Residue inv = inv_mod(prow[c], p);
    for (std::size_t j = c; j < nc; ++j) prow[j] = mul_mod(prow[j], inv, p);
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r) continue;
      Residue* row = m.data() + i * nc;
      const Residue f = row[c];
      if (f == 0) continue;
      const Residue nf = p - f;
      for (std::size_t j = c; j < nc; ++j) {
        if (prow[j] != 0) row[j] = static_cast<Residue>((row[j] + std::uint64_t{nf} * prow[j]) % p);
      }
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = FpMatrix(p, nr, nc, std::move(m));
  return out;
}

std::size_t rank(const FpMatrix& a) { return rref(a).rank; }

std::optional<FpMatrix> solve_right(const FpMatrix& a, const FpMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows() != b.rows()) throw LinalgError("solve_right: row count mismatch");
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  const FpMatrix blocks[] = {a, b};
  const auto ech = rref(FpMatrix::hstack(blocks));
  FpMatrix x(a.modulus(), n, k);
  for (std::size_t i = 0; i < ech.rank; ++i) {
    const std::size_t pc = ech.pivot_columns[i];
    if (pc >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x.set(pc, j, ech.reduced(i, n + j));
  }
  return x;
}

FpMatrix kernel_basis(const FpMatrix& a) {
  const Residue p = a.modulus();
  const auto ech = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  FpMatrix k(p, n, n - ech.rank);
  std::size_t col = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k.set(f, col, 1);
    for (std::size_t i = 0; i < ech.rank; ++i) {
      k.set(ech.pivot_columns[i], col, neg_mod(ech.reduced(i, f), p));
    }
    ++col;
  }
  return k;
}

std::optional<FpMatrix> inverse(const FpMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve_right(a, FpMatrix::identity(a.modulus(), a.rows()));
  if (!x) return std::nullopt;
  return x;
}

std::vector<std::size_t> independent_columns(const FpMatrix& a) { return rref(a).pivot_columns; }

std::optional<std::vector<Residue>> solve_combination(std::span<const FpMatrix> images,
                                                      const FpMatrix& target) {
  const Residue p = target.modulus();
  const std::size_t len = target.rows() * target.cols();
  FpMatrix sys(p, len, images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    const auto& im = images[k];
    require_same_modulus(im, target);
    if (im.rows() != target.rows() || im.cols() != target.cols()) {
      throw LinalgError("solve_combination: shape mismatch");
    }
    for (std::size_t e = 0; e < len; ++e) sys.set(e, k, im.entries()[e]);
  }
  auto x = solve_right(sys, target.vectorized());
  if (!x) return std::nullopt;
  std::vector<Residue> c(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) c[k] = (*x)(k, 0);
  return c;
}

FpMatrix linear_combination(std::span<const FpMatrix> basis, std::span<const Residue> coeffs) {
  if (basis.empty()) throw LinalgError("linear_combination of an empty basis");
  if (basis.size() != coeffs.size()) throw LinalgError("linear_combination: length mismatch");
  const Residue p = basis.front().modulus();
  const std::size_t nr = basis.front().rows(), nc = basis.front().cols();
  std::vector<std::uint64_t> acc(nr * nc, 0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Residue c = coeffs[k] % p;
    if (c == 0) continue;
    if (basis[k].modulus() != p || basis[k].rows() != nr || basis[k].cols() != nc) {
      throw LinalgError("linear_combination: inconsistent basis");
    }
    const auto& e = basis[k].entries();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + std::uint64_t{c} * e[i]) % p;
  }
  std::vector<Residue> out(acc.begin(), acc.end());
  return FpMatrix(p, nr, nc, std::move(out));
}

std::vector<std::size_t> complement_coordinates(const FpMatrix& a) {
  // Pivots of rref(A^T) mark coordinates already covered by the column space.
  const auto ech = rref(a.transpose());
  std::vector<bool> covered(a.rows(), false);
  for (auto c : ech.pivot_columns) covered[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!covered[i]) out.push_back(i);
  }
  return out;
}

std::uint64_t saturating_power(std::uint64_t p, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

namespace {

// Columns are the vectorized basis matrices.
FpMatrix stacked_basis(std::span<const FpMatrix> basis) {
  const auto& first = basis.front();
  const std::size_t len = first.rows() * first.cols();
  FpMatrix s(first.modulus(), len, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].rows() != first.rows() || basis[k].cols() != first.cols()) {
      throw LinalgError("invertible_combination: basis shapes differ");
    }
    require_same_modulus(first, basis[k]);
    for (std::size_t e = 0; e < len; ++e) s.set(e, k, basis[k].entries()[e]);
  }
  return s;
}

bool invertible(const FpMatrix& m) { return rank(m) == m.rows(); }

}  // namespace

bool exhaustive_regime(std::span<const FpMatrix> basis, std::uint64_t exhaustive_threshold) {
  if (basis.empty()) return true;
  const auto span_dim = rank(stacked_basis(basis));
  return saturating_power(basis.front().modulus(), span_dim) <= exhaustive_threshold;
}

std::optional<std::vector<Residue>> invertible_combination(std::span<const FpMatrix> basis,
                                                           std::uint64_t seed,
                                                           std::size_t max_trials,
                                                           std::uint64_t exhaustive_threshold) {
  if (basis.empty()) return std::nullopt;
  const auto& first = basis.front();
  if (first.rows() != first.cols()) throw LinalgError("invertible_combination: non-square basis");
  const Residue p = first.modulus();
  if (first.rows() == 0) return std::vector<Residue>(basis.size(), 0);

  const auto independent = independent_columns(stacked_basis(basis));
  std::vector<FpMatrix> sub;
  for (auto k : independent) sub.push_back(basis[k]);
  auto expand = [&](const std::vector<Residue>& c) {
    std::vector<Residue> full(basis.size(), 0);
    for (std::size_t k = 0; k < independent.size(); ++k) full[independent[k]] = c[k];
    return full;
  };
  if (sub.empty()) return std::nullopt;

  std::mt19937_64 rng(seed);
  std::vector<Residue> c(sub.size());
  for (std::size_t t = 0; t < max_trials; ++t) {
    for (auto& x : c) x = static_cast<Residue>(draw_below(rng, p));
    if (invertible(linear_combination(sub, c))) return expand(c);
  }

  if (saturating_power(p, sub.size()) > exhaustive_threshold) return std::nullopt;
  std::fill(c.begin(), c.end(), 0);
  while (true) {
    // odometer increment, least significant digit last
    std::size_t k = c.size();
    while (k > 0) {
      --k;
      if (++c[k] < p) break;
      c[k] = 0;
      if (k == 0) return std::nullopt;
    }
    if (invertible(linear_combination(sub, c))) return expand(c);
  }
}

}  // namespace frobstab
