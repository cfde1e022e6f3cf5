#include <doctest.h>

#include <random>

#include "frobstab/field_linalg.hpp"
#include "../support/oracles.hpp"

using namespace frobstab;

namespace {

FpMatrix random_matrix(std::mt19937_64& rng, Residue p, std::size_t r, std::size_t c) {
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<Residue>(draw_below(rng, p)));
  }
  return m;
}

}  // namespace

TEST_CASE("matrix construction validates modulus and entries") {
  CHECK_THROWS_AS(FpMatrix(4, 1, 1), LinalgError);
  CHECK_THROWS_AS(FpMatrix(3, 1, 2, {1}), LinalgError);
  CHECK_THROWS_AS(FpMatrix(3, 1, 1, {3}), LinalgError);
  CHECK(FpMatrix::from_rows(5, {{-1, 7}}) == FpMatrix(5, 1, 2, {4, 2}));
  CHECK(FpMatrix(2147483647u, 1, 1, {2147483646u}).is_zero() == false);
}

TEST_CASE("arithmetic stays exact near the largest modulus") {
  const Residue p = 2147483647u;  // 2^31 - 1
  const FpMatrix a(p, 1, 1, {p - 1});
  CHECK((a * a)(0, 0) == 1);
  CHECK((a + a)(0, 0) == p - 2);
  CHECK(mul_mod(inv_mod(12345, p), 12345, p) == 1);
}

TEST_CASE("modulus mismatch is rejected") {
  CHECK_THROWS(FpMatrix::identity(2, 2) * FpMatrix::identity(3, 2));
  CHECK_THROWS(solve_right(FpMatrix::identity(2, 2), FpMatrix::identity(3, 2)));
  CHECK_THROWS(solve_right(FpMatrix::identity(2, 2), FpMatrix::identity(2, 3)));
}

TEST_CASE("rref examples") {
  auto e = rref(FpMatrix::from_rows(2, {{1, 1}, {1, 1}}));
  CHECK(e.rank == 1);
  CHECK(e.pivot_columns == std::vector<std::size_t>{0});

  e = rref(FpMatrix(3, 0, 0));
  CHECK(e.rank == 0);
  CHECK(e.pivot_columns.empty());

  for (Residue p : {2u, 3u, 7u}) {
    e = rref(FpMatrix::identity(p, 4));
    CHECK(e.rank == 4);
    CHECK(e.reduced == FpMatrix::identity(p, 4));
  }
}

TEST_CASE("solve_right examples") {
  const FpMatrix b = FpMatrix::from_rows(3, {{1, 2}, {0, 1}});
  CHECK(solve_right(FpMatrix::identity(3, 2), b) == b);
  CHECK_FALSE(solve_right(FpMatrix::from_rows(2, {{1, 1}, {1, 1}}), FpMatrix::from_rows(2, {{1}, {0}})));
  CHECK(solve_right(FpMatrix::from_rows(2, {{1, 1}, {0, 1}}), FpMatrix::identity(2, 2)) ==
        FpMatrix::from_rows(2, {{1, 1}, {0, 1}}));
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(FpMatrix::identity(5, 3)).cols() == 0);
  const auto k = kernel_basis(FpMatrix(5, 2, 2));
  CHECK(k.cols() == 2);
  CHECK(rank(k) == 2);
  CHECK(kernel_basis(FpMatrix::from_rows(2, {{1, 1}})) == FpMatrix::from_rows(2, {{1}, {1}}));
}

TEST_CASE("invertible_combination examples") {
  const FpMatrix id[] = {FpMatrix::identity(2, 2)};
  CHECK(invertible_combination(id, 0, 64) == std::vector<Residue>{1});

  const FpMatrix nil[] = {FpMatrix::from_rows(3, {{0, 1}, {0, 0}})};
  CHECK(exhaustive_regime(nil));
  CHECK_FALSE(invertible_combination(nil, 0, 64));

  const FpMatrix diag[] = {FpMatrix::from_rows(2, {{1, 0}, {0, 0}}), FpMatrix::from_rows(2, {{0, 0}, {0, 1}})};
  CHECK(invertible_combination(diag, 0, 64) == std::vector<Residue>{1, 1});

  CHECK_FALSE(invertible_combination(std::span<const FpMatrix>{}, 0, 64));
}

TEST_CASE("invertible_combination finds rare invertibles by enumeration") {
  // over GF(2) only c = (1, 1, 1) makes the diagonal combination invertible
  const FpMatrix basis[] = {FpMatrix::from_rows(2, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}),
                            FpMatrix::from_rows(2, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
                            FpMatrix::from_rows(2, {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}})};
  const auto c = invertible_combination(basis, 99, 0);
  REQUIRE(c);
  CHECK(*c == std::vector<Residue>{1, 1, 1});
}

TEST_CASE("rref is idempotent and rank-nullity holds on random matrices") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Residue p = std::vector<Residue>{2, 3, 5, 7}[t % 4];
    const auto a = random_matrix(rng, p, draw_below(rng, 6), draw_below(rng, 6));
    const auto e = rref(a);
    CHECK(rref(e.reduced).reduced == e.reduced);
    CHECK(e.rank == e.pivot_columns.size());
    const auto k = kernel_basis(a);
    CHECK(e.rank + k.cols() == a.cols());
    if (a.rows() > 0 && k.cols() > 0) CHECK((a * k).is_zero());
    CHECK(oracle::kernel_count(a) == oracle::ipow(p, k.cols()));
  }
}

TEST_CASE("solve_right is sound and complete on GF(2), dims up to 3") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + draw_below(rng, 3), k = 1 + draw_below(rng, 3), c = 1 + draw_below(rng, 3);
    const auto a = random_matrix(rng, 2, r, k);
    const auto b = random_matrix(rng, 2, r, c);
    bool exists = false;
    oracle::for_each_vector(2, k * c, [&](const oracle::Vec& x) {
      if (oracle::mat_mul(oracle::raw(a), x, r, k, c, 2) == oracle::raw(b)) exists = true;
    });
    const auto x = solve_right(a, b);
    CHECK(x.has_value() == exists);
    if (x) CHECK(a * *x == b);
  }
}

TEST_CASE("inverse and complement coordinates") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_matrix(rng, 5, 4, 4);
    const auto inv = inverse(a);
    CHECK(inv.has_value() == (rank(a) == 4));
    if (inv) CHECK((a * *inv).is_identity());
  }
  const FpMatrix a = FpMatrix::from_rows(3, {{1}, {1}, {0}});
  const auto comp = complement_coordinates(a);
  CHECK(comp.size() == 2);
  FpMatrix full = a;
  for (auto c : comp) {
    FpMatrix e(3, 3, 1);
    e.set(c, 0, 1);
    const FpMatrix parts[] = {full, e};
    full = FpMatrix::hstack(parts);
  }
  CHECK(rank(full) == 3);
}

TEST_CASE("vectorize round trip and block helpers") {
  const FpMatrix m = FpMatrix::from_rows(7, {{1, 2, 3}, {4, 5, 6}});
  CHECK(FpMatrix::unvectorize(m.vectorized(), 2, 3) == m);
  CHECK(m.transpose().transpose() == m);
  CHECK(m.block(1, 1, 1, 2) == FpMatrix::from_rows(7, {{5, 6}}));
  const FpMatrix parts[] = {FpMatrix::identity(7, 1), m};
  const auto d = FpMatrix::block_diagonal(parts);
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 4);
  CHECK(d(0, 0) == 1);
  CHECK(d(2, 3) == 6);
}
