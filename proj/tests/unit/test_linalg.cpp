#include "doctest.h"

#include <algorithm>

#include <fixspace/error.hpp>
#include <fixspace/linalg.hpp>
#include <fixspace/perm.hpp>
#include <fixspace/rng.hpp>

using namespace fixspace;

namespace {

Matrix random_matrix(const FieldCtx& F, SeedStream& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = F.element(rng.below(F.order()));
  return m;
}

Matrix perm_matrix(const FieldCtx& F, const Perm& g) {
  Matrix m(g.degree(), g.degree());
  for (std::size_t i = 0; i < g.degree(); ++i) m(i, g[i]) = F.one();
  return m;
}

// Leibniz expansion, independent of elimination.
FieldElem leibniz_det(const FieldCtx& F, const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  FieldElem total = F.zero();
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += idx[i] > idx[j];
    FieldElem term = F.one();
    for (std::size_t i = 0; i < n; ++i) term = F.mul(term, a(i, idx[i]));
    total = inversions % 2 ? F.sub(total, term) : F.add(total, term);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return total;
}

} // namespace

TEST_CASE("determinant agrees with Leibniz expansion") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}, {2, 3}, {5, 2}}) {
    const FieldCtx F = make_field(p, k);
    SeedStream rng(p + k);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng.below(5);
      const Matrix a = random_matrix(F, rng, n, n);
      CHECK(mat::det(F, a) == leibniz_det(F, a));
    }
  }
}

TEST_CASE("char_poly: constant term, Cayley-Hamilton, permutation matrices") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}, {2, 1}, {3, 2}, {13, 1}}) {
    const FieldCtx F = make_field(p, k);
    SeedStream rng(3 * p + k);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng.below(7);
      const Matrix a = random_matrix(F, rng, n, n);
      const Poly f = mat::char_poly(F, a);
      REQUIRE(f.degree() == static_cast<int>(n));
      CHECK(f.lead() == F.one());
      FieldElem c0 = mat::det(F, mat::scale(F, a, F.from_int(-1)));
      CHECK(f.coeff(0) == c0);
      const Matrix z = mat::eval_poly(F, f, a);
      CHECK(mat::rank(F, z) == 0);
    }
    // det(xI - P_g) = prod over cycles (x^c - 1)
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + rng.below(9);
      std::vector<std::uint32_t> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>(i);
      for (std::size_t i = n; i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
      const Perm g(img);
      Poly want = poly::constant(F, F.one());
      std::vector<bool> seen(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = g[j]) seen[j] = true, ++len;
        std::vector<FieldElem> c(len + 1);
        c[0] = F.from_int(-1);
        c[len] = F.one();
        want = poly::mul(F, want, Poly(c));
      }
      CHECK(mat::char_poly(F, perm_matrix(F, g)) == want);
    }
  }
}

TEST_CASE("inverse, rank and left nullspace") {
  const FieldCtx F = make_field(5, 2);
  SeedStream rng(99);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const Matrix a = random_matrix(F, rng, n, n);
    if (F.is_zero(mat::det(F, a))) {
      CHECK(mat::rank(F, a) < n);
      CHECK_THROWS_AS(mat::inverse(F, a), Error);
    } else {
      CHECK(mat::is_identity(F, mat::mul(F, a, mat::inverse(F, a))));
      CHECK(mat::rank(F, a) == n);
    }
    const Matrix b = random_matrix(F, rng, n, 1 + rng.below(3));
    const Matrix ab = mat::hconcat({a, b});
    const auto ns = mat::left_nullspace(F, ab);
    CHECK(ns.size() + mat::rank(F, ab) == n);
    for (const auto& v : ns) {
      for (auto x : mat::vec_mul(F, v, ab)) CHECK(F.is_zero(x));
    }
  }
}

TEST_CASE("low-rank products have the expected rank") {
  const FieldCtx F = make_field(11);
  SeedStream rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t r = 1 + rng.below(4);
    const Matrix a = random_matrix(F, rng, 6, r), b = random_matrix(F, rng, r, 7);
    CHECK(mat::rank(F, mat::mul(F, a, b)) <= r);
  }
}

TEST_CASE("Subspace bookkeeping and spin") {
  const FieldCtx F = make_field(3);
  Subspace S(F, 4);
  CHECK(S.add({F.one(), F.one(), F.zero(), F.zero()}));
  CHECK(S.add({F.zero(), F.one(), F.one(), F.zero()}));
  CHECK_FALSE(S.add({F.one(), F.from_int(2), F.one(), F.zero()}));
  CHECK(S.dim() == 2);
  CHECK(S.free_columns().size() == 2);
  const Vec v{F.from_int(2), F.zero(), F.one(), F.zero()};
  REQUIRE(S.contains(v));
  const Vec c = S.coordinates(v);
  Vec back(4);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j) back[j] = F.add(back[j], F.mul(c[i], S.basis()[i][j]));
  CHECK(back == v);

  // 4-cycle permutation matrix: spin of e_0 is everything, spin of ones is a line.
  const Matrix P = perm_matrix(F, Perm({1, 2, 3, 0}));
  CHECK(spin(F, {{F.one(), F.zero(), F.zero(), F.zero()}}, {P}).dim() == 4);
  CHECK(spin(F, {{F.one(), F.one(), F.one(), F.one()}}, {P}).dim() == 1);
}

TEST_CASE("kron and frobenius") {
  const FieldCtx F = make_field(2, 2);
  SeedStream rng(8);
  const Matrix a = random_matrix(F, rng, 2, 2), b = random_matrix(F, rng, 3, 3);
  const Matrix k = mat::kron(F, a, b);
  CHECK(k(1 * 3 + 2, 0 * 3 + 1) == F.mul(a(1, 0), b(2, 1)));
  const Matrix fr = mat::frobenius(F, a, 1);
  CHECK(fr(0, 1) == F.frobenius(a(0, 1)));
  CHECK(mat::frobenius(F, a, 2) == a);
}
