#include "doctest.h"

#include <fixspace/bounds.hpp>
#include <fixspace/error.hpp>
#include <fixspace/library.hpp>

#include <algorithm>
#include <set>

using namespace fixspace;

namespace {

MatRep rep(GroupLibrary& lib, const std::string& text) { return build_rep(parse_module_spec(text), lib); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;  // sentinel: nothing thrown
}

// Fixed dimension straight from the kernel of rho(g) - 1, without the rank shortcut.
std::size_t fixdim_oracle(const MatRep& R, const Perm& g) {
  const FieldCtx& F = R.field();
  const Matrix A = mat::sub(F, R.image(g), Matrix::identity(F, R.dim()));
  return mat::left_nullspace(F, A).size();
}

const ClauseResult& clause(const BoundReport& r, const std::string& id) {
  const auto it = std::find_if(r.clauses.begin(), r.clauses.end(), [&](const ClauseResult& c) { return c.id == id; });
  REQUIRE(it != r.clauses.end());
  return *it;
}

} // namespace

TEST_CASE("thresholds compare exactly and keep strictness") {
  const Threshold half{1, 2, true};
  CHECK(half.admits(1, 3));
  CHECK_FALSE(half.admits(1, 2));
  CHECK(half.admits(3, 7));
  CHECK_FALSE(half.admits(4, 7));
  const Threshold third{1, 3, false};
  CHECK(third.admits(1, 3));
  CHECK_FALSE(third.admits(2, 5));
  const Threshold three_eighths{3, 8, false};
  CHECK(three_eighths.admits(3, 8));
  CHECK_FALSE(three_eighths.admits(4, 8));
  CHECK(half.text() == "< 1/2 n");
  CHECK(third.text() == "<= 1/3 n");
}

TEST_CASE("min_semisimple_fixdim examples") {
  GroupLibrary lib;
  const MatRep m3 = rep(lib, "(deleted (perm AGL1_8) :field (gf 7))");
  const MinFixDim a = min_semisimple_fixdim(m3);
  CHECK(a.dim == 3);
  REQUIRE(a.witness);
  CHECK(a.witness->order == 2);
  CHECK(a.kernel_classes == 0);
  for (const auto& c : a.per_class) CHECK(c.fixdim == 3);

  const MatRep m2 = rep(lib, "(deleted (perm AGL1_4) :field (gf 3))");
  CHECK(min_semisimple_fixdim(m2).dim == 1);

  const MatRep s3 = rep(lib, "(deleted (perm S3) :field (gf 5))");
  const MinFixDim b = min_semisimple_fixdim(s3);
  CHECK(b.dim == 0);
  REQUIRE(b.witness);
  CHECK(b.witness->order == 3);

  // -I lies in the kernel of even symmetric powers
  const MatRep sym2 = rep(lib, "(sym 2 (explicit SL2_5))");
  CHECK(min_semisimple_fixdim(sym2).kernel_classes == 1);
}

TEST_CASE("witness dimensions agree with an independent kernel computation") {
  GroupLibrary lib;
  for (const char* t : {"(deleted (perm A5) :field (gf 7))", "(sym 3 (explicit SL2_7))", "(explicit SL3_3)",
                        "(deleted (perm S4) :field (gf 5))", "(explicit Ex3_7)"}) {
    CAPTURE(std::string(t));
    const MatRep R = rep(lib, t);
    const ConjugacyClasses cls = conjugacy_classes(R.group());
    const MinFixDim m = min_semisimple_fixdim(R, cls, 2);
    for (const auto& c : m.per_class) {
      CHECK(c.fixdim == fixdim_oracle(R, cls[c.cls].rep));
      CHECK(acts_semisimply(R, cls[c.cls].rep));
      CHECK(c.fixdim >= m.dim);
    }
    CHECK(m.per_class == min_semisimple_fixdim(R, cls, 1).per_class);
  }
}

TEST_CASE("check_bound_theorems examples") {
  GroupLibrary lib;
  SUBCASE("Mersenne a = 3 sits exactly at the strict half bound") {
    const BoundReport r = check_bound_theorems(rep(lib, "(deleted (perm AGL1_8) :field (gf 7))"));
    CHECK(r.n == 7);
    CHECK(r.p == 7);
    CHECK(r.min.dim == 3);
    CHECK(clause(r, "half").satisfied);
    CHECK_FALSE(clause(r, "coprime").applicable);
    CHECK_FALSE(clause(r, "large_p").applicable);
    CHECK_FALSE(clause(r, "p_nmid_n").applicable);
    CHECK_FALSE(clause(r, "two_primitive").applicable);  // 2 has order 3 mod 7
    CHECK_FALSE(clause(r, "eigenspace").applicable);
    CHECK(r.all_satisfied());
  }
  SUBCASE("deleted A5 over GF(7), coprime") {
    const BoundReport r = check_bound_theorems(rep(lib, "(deleted (perm A5) :field (gf 7))"));
    CHECK(r.min.dim == 0);
    CHECK(r.min.witness->order == 5);
    CHECK(clause(r, "coprime").applicable);
    CHECK(clause(r, "coprime").satisfied);
    CHECK(clause(r, "p_nmid_n").applicable);
    CHECK(r.all_satisfied());
  }
  SUBCASE("SL2(5) natural") {
    const BoundReport r = check_bound_theorems(rep(lib, "(explicit SL2_5)"));
    CHECK(r.n == 2);
    CHECK(r.min.dim == 0);
    CHECK(clause(r, "half").satisfied);
    CHECK(clause(r, "large_p").applicable);  // 5 > 2 + 2
    CHECK(clause(r, "large_p").satisfied);
  }
  SUBCASE("prime dimension clauses") {
    // n = 5, p = 11 > 2n - 3, and 2 generates (Z/5)^x
    const BoundReport r = check_bound_theorems(rep(lib, "(deleted (perm S6) :field (gf 11))"));
    CHECK(r.n == 5);
    CHECK(clause(r, "two_primitive").applicable);
    CHECK(clause(r, "two_primitive").satisfied);
    CHECK(clause(r, "eigenspace").applicable);
    CHECK(clause(r, "eigenspace").satisfied);
    CHECK(clause(r, "eigenspace").witness->fixdim <= 1);
    CHECK(clause(r, "large_p").applicable);
  }
  SUBCASE("reducible modules are refused") {
    CHECK(code_of([&] { check_bound_theorems(rep(lib, "(perm A5 :field (gf 7))")); }) == Errc::NotIrreducible);
  }
}

TEST_CASE("scott_check examples and a sweep") {
  GroupLibrary lib;
  const MatRep R = rep(lib, "(deleted (perm A5) :field (gf 7))");
  const Perm e = Perm::identity(5);
  const ScottRecord id = scott_check(R, e, e);
  CHECK(id.lhs == 12);
  CHECK(id.rhs == 12);
  CHECK(id.holds);

  const Perm x = Perm::from_cycles(5, {{0, 1, 2}});
  const Perm y = Perm::from_cycles(5, {{2, 3, 4}});
  REQUIRE(R.group().subgroup_order(std::vector<Perm>{x, y}) == 60);
  const ScottRecord s = scott_check(R, x, y);
  CHECK(s.fix_h == 0);
  CHECK(s.fix_h_dual == 0);
  CHECK(s.lhs <= 4);
  CHECK(s.holds);
  CHECK(code_of([&] { scott_check(R, Perm::from_cycles(5, {{0, 1}}), y); }) == Errc::NotInGroup);

  SeedStream rng(3);
  for (const char* t : {"(deleted (perm AGL1_8) :field (gf 7))", "(sym 2 (explicit SL2_7))", "(explicit SL3_3)",
                        "(perm S4 :field (gf 2))"}) {
    const MatRep M = rep(lib, t);
    for (int i = 0; i < 100; ++i) {
      const Perm a = M.group().random_element(rng);
      const Perm b = M.group().random_element(rng);
      const ScottRecord r = scott_check(M, a, b);
      CHECK(r.holds);
      CHECK(r.lhs == fixdim_oracle(M, a) + fixdim_oracle(M, b) + fixdim_oracle(M, (a * b).inverse()));
    }
  }
}

TEST_CASE("composition factors") {
  GroupLibrary lib;
  const auto f = composition_factors(rep(lib, "(perm A5 :field (gf 5))"));
  std::multiset<std::size_t> dims;
  for (const auto& m : f) {
    dims.insert(m.dim());
    CHECK(is_irreducible(m).irreducible);
  }
  CHECK(dims == std::multiset<std::size_t>{1, 1, 3});
  CHECK(composition_factors(rep(lib, "(explicit SL2_5)")).size() == 1);
}

TEST_CASE("SL3(3) on End of its natural module") {
  GroupLibrary lib;
  const AdjointReport r = sl_p_adjoint_check(3, lib);
  CHECK(r.dim_w == 9);
  CHECK(r.dim_v == 7);
  std::vector<std::size_t> dims = r.factor_dims;
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{1, 1, 7});
  CHECK(r.section_irreducible);
  CHECK(r.min_fix_v >= 1);
  CHECK(r.min_fix_w >= 3);
  CHECK(r.holds);
  bool saw13 = false;
  for (const auto& row : r.rows) {
    if (row.order == 13) {
      saw13 = true;
      CHECK(row.fix_w >= 3);
    }
    CHECK(row.fix_v + 2 >= row.fix_w);
  }
  CHECK(saw13);
  CHECK(code_of([&] { sl_p_adjoint_check(5, lib); }) == Errc::InvalidArgument);

  // the catalog recipe for the same section has the same characteristic polynomials
  const MatRep V = rep(lib, "(section (section (tensor (explicit SL3_3) (dual (explicit SL3_3))) :mode sub :basis cofixed)"
                            " :mode quotient :basis fixed)");
  CHECK(V.dim() == 7);
  const MatRep W = rep(lib, "(tensor (explicit SL3_3) (dual (explicit SL3_3)))");
  const auto factors = composition_factors(W);
  const auto big = std::max_element(factors.begin(), factors.end(),
                                     [](const MatRep& a, const MatRep& b) { return a.dim() < b.dim(); });
  SeedStream rng(8);
  for (int i = 0; i < 30; ++i) {
    const Perm g = V.group().random_element(rng);
    CHECK(char_poly(V, g) == char_poly(*big, g));
  }
}

TEST_CASE("Mersenne sharpness") {
  GroupLibrary lib;
  const MersenneReport two = mersenne_check(2, lib);
  CHECK(two.p == 3);
  CHECK(two.n == 3);
  CHECK(two.irreducible);
  CHECK(two.sharp);
  const MersenneReport three = mersenne_check(3, lib);
  CHECK(three.p == 7);
  CHECK(three.n == 7);
  CHECK(three.irreducible);
  CHECK(three.sharp);
  CHECK_FALSE(three.per_class.empty());
  for (const auto& c : three.per_class) CHECK(c.fixdim == 3);
  CHECK(code_of([&] { mersenne_check(4, lib); }) == Errc::InvalidArgument);
}

TEST_CASE("extraspecial group of order 27 has a free cyclic subgroup") {
  GroupLibrary lib;
  const MatRep R = rep(lib, "(explicit Ex3_7)");
  const ConjugacyClasses cls = conjugacy_classes(R.group());
  const auto c = free_cyclic_class(R, cls, 3);
  REQUIRE(c.has_value());
  const Perm& a = cls[*c].rep;
  for (const Perm& g : {a, a * a}) {
    const Poly f = char_poly(R, g);
    const FieldCtx& F = R.field();
    // x^3 - 1 has three distinct roots in GF(7)
    for (std::uint64_t v : {1, 2, 4}) CHECK(root_multiplicity(F, f, F.element(v)) == 1);
  }
  CHECK_FALSE(free_cyclic_class(rep(lib, "(deleted (perm A4) :field (gf 5))"), conjugacy_classes(*lib.group("A4")), 2));
}

TEST_CASE("catalog shape and small entries") {
  const auto& cat = bound_catalog();
  CHECK(cat.size() >= 25);
  std::set<std::string> ids;
  for (const auto& e : cat) ids.insert(e.id);
  CHECK(ids.size() == cat.size());
  GroupLibrary lib;
  for (const auto& e : cat) {
    const MatRep R = rep(lib, e.spec);
    if (R.group().order() > 720) continue;
    CAPTURE(e.id);
    const BoundReport r = check_bound_theorems(R);
    CHECK(r.all_satisfied());
    CHECK(clause(r, "half").satisfied);
  }
}
