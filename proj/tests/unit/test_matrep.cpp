#include "doctest.h"

#include <fixspace/error.hpp>
#include <fixspace/library.hpp>
#include <fixspace/matrep.hpp>

using namespace fixspace;

namespace {

MatRep rep(GroupLibrary& lib, const char* text) { return build_rep(parse_module_spec(text), lib); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;  // sentinel: nothing thrown
}

Perm involution_of_agl18(const PermGroup& G) {
  // x -> x + 1 on GF(8): four 2-cycles
  return G.generators()[0];
}

Matrix random_matrix(const FieldCtx& F, SeedStream& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = F.element(rng.below(F.order()));
  return m;
}

Matrix random_invertible(const FieldCtx& F, SeedStream& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_matrix(F, rng, n);
    if (!F.is_zero(mat::det(F, m))) return m;
  }
}

Poly reciprocal(const FieldCtx& F, const Poly& f) {
  std::vector<FieldElem> c(f.coeffs().rbegin(), f.coeffs().rend());
  return poly::monic(F, Poly(c));
}

} // namespace

TEST_CASE("build_rep examples") {
  GroupLibrary lib;
  CHECK(rep(lib, "(deleted (perm A5) :field (gf 7))").dim() == 4);
  const MatRep M = rep(lib, "(deleted (perm AGL1_8) :field (gf 7))");
  CHECK(M.dim() == 7);
  CHECK(is_irreducible(M).irreducible);
  CHECK(rep(lib, "(tensor (explicit SL2_5) (explicit SL2_5))").dim() == 4);
  CHECK(rep(lib, "(sym 3 (explicit SL2_7))").dim() == 4);
}

TEST_CASE("typing and field errors") {
  GroupLibrary lib;
  CHECK(code_of([&] { rep(lib, "(deleted (perm A5) :field (gf 5))"); }) == Errc::IllTyped);
  CHECK(code_of([&] { rep(lib, "(deleted (explicit SL2_5))"); }) == Errc::IllTyped);
  CHECK(code_of([&] { rep(lib, "(explicit SL2_5 :field (gf 7))"); }) == Errc::FieldMismatch);
  CHECK(code_of([&] { rep(lib, "(tensor (perm A5 :field (gf 7)) (perm A5 :field (gf 5)))"); }) == Errc::FieldMismatch);
  CHECK(code_of([&] { rep(lib, "(tensor (perm A5) (perm A6) :field (gf 7))"); }) == Errc::IllTyped);
  CHECK(code_of([&] { rep(lib, "(perm A5)"); }) == Errc::IllTyped);
  CHECK(code_of([&] { rep(lib, "(perm NoSuchGroup :field (gf 7))"); }) == Errc::NotFound);
  CHECK(code_of([&] { parse_module_spec("(deleted (perm A5)"); }) == Errc::Parse);
  CHECK(code_of([&] { parse_module_spec("(frobnicate A5)"); }) == Errc::Parse);
  CHECK(code_of([&] { rep(lib, "(section (perm A5) :mode sub :basis [[1,0,0,0,0]] :field (gf 7))"); }) ==
        Errc::IllTyped);
}

TEST_CASE("module spec text round-trips") {
  for (const char* t : {"(deleted (perm A5) :field (gf 7))", "(sym 2 (explicit SL2_5))",
                        "(twist 1 (tensor (explicit SL2_5) (dual (explicit SL2_5))))",
                        "(section (perm A5) :mode quotient :basis [[1,1,1,1,1]] :field (gf 5))",
                        "(deleted (perm A5) :sumzero :field (gf 5 2))"}) {
    const ModuleSpec s = parse_module_spec(t);
    CHECK(format_module_spec(s) == t);
    CHECK(parse_module_spec(format_module_spec(s)) == s);
  }
}

TEST_CASE("char_poly and fixed space examples") {
  GroupLibrary lib;
  const FieldCtx F = make_field(7);
  const MatRep P = rep(lib, "(perm A5 :field (gf 7))");
  const Perm id = Perm::identity(5);
  CHECK(char_poly(P, id) == poly::pow(F, poly::from_ints(F, {-1, 1}), 5));
  const Perm five = Perm::from_cycles(5, {{0, 1, 2, 3, 4}});
  CHECK(char_poly(P, five) == poly::from_ints(F, {-1, 0, 0, 0, 0, 1}));

  const MatRep D = rep(lib, "(deleted (perm A5) :field (gf 7))");
  CHECK(fixed_space_dim(D, id) == 4);
  CHECK(fixed_space_dim(D, five) == 0);

  const MatRep M = rep(lib, "(deleted (perm AGL1_8) :field (gf 7))");
  const Perm t = involution_of_agl18(M.group());
  REQUIRE(t.cycle_type() == std::vector<std::size_t>{2, 2, 2, 2});
  const Poly want = poly::mul(F, poly::pow(F, poly::from_ints(F, {-1, 1}), 3), poly::pow(F, poly::from_ints(F, {1, 1}), 4));
  CHECK(char_poly(M, t) == want);
  CHECK(fixed_space_dim(M, t) == 3);
  CHECK(root_multiplicity(F, char_poly(M, t), F.one()) == 3);
  CHECK(fixed_space_dim(M, Perm::identity(8)) == 7);
  CHECK_THROWS_AS(fixed_space_dim(M, Perm::identity(7)), Error);
}

TEST_CASE("eigenspace_profile examples") {
  GroupLibrary lib;
  const MatRep M = rep(lib, "(deleted (perm AGL1_8) :field (gf 7))");
  const Perm t = M.group().generators()[0];
  CHECK(eigenspace_profile(M, t).max_eigenspace_dim == 4);
  CHECK(eigenspace_profile(M, t).fixed_multiplicity == 3);
  CHECK(eigenspace_profile(M, Perm::identity(8)).max_eigenspace_dim == 7);
  const Perm seven = M.group().generators()[1];
  CHECK(code_of([&] { eigenspace_profile(M, seven); }) == Errc::NotSemisimple);
  // distinct eigenvalues <=> squarefree: 5-cycle on the A5 perm module over GF(11)
  const MatRep P = rep(lib, "(perm A5 :field (gf 11))");
  CHECK(eigenspace_profile(P, Perm::from_cycles(5, {{0, 1, 2, 3, 4}})).max_eigenspace_dim == 1);
}

TEST_CASE("is_irreducible examples with certificates") {
  GroupLibrary lib;
  const MatRep P = rep(lib, "(perm A5 :field (gf 7))");
  const auto r1 = is_irreducible(P);
  CHECK_FALSE(r1.irreducible);
  CHECK(is_invariant_subspace(P.field(), P.gen_images(), r1.submodule));

  const MatRep D5 = rep(lib, "(deleted (perm A5) :sumzero :field (gf 5))");
  const auto r2 = is_irreducible(D5);
  CHECK_FALSE(r2.irreducible);
  CHECK(is_invariant_subspace(D5.field(), D5.gen_images(), r2.submodule));
  CHECK(module_fixed_dim(D5, D5.group().generators()) == 1);  // ones lies in the sum-zero space

  const MatRep Q = rep(lib, "(section (deleted (perm A5) :sumzero :field (gf 5)) :mode quotient :basis fixed)");
  CHECK(Q.dim() == 3);
  CHECK(is_irreducible(Q).irreducible);
  CHECK(irreducible_by_enumeration(Q.field(), Q.gen_images()));
}

TEST_CASE("MeatAxe agrees with exhaustive search on small modules") {
  GroupLibrary lib;
  for (const char* t : {"(perm A4 :field (gf 3))", "(deleted (perm A4) :field (gf 3))", "(deleted (perm A5) :field (gf 2))",
                        "(deleted (perm S3) :field (gf 5))", "(perm S3 :field (gf 2))", "(explicit SL2_5)",
                        "(explicit SL2_7)", "(sym 2 (explicit SL2_5))", "(sym 3 (explicit SL2_5))",
                        "(tensor (explicit SL2_3) (explicit SL2_3))", "(explicit Ex3_7)", "(explicit SL3_3)",
                        "(deleted (perm C5) :field (gf 2))", "(deleted (perm AGL1_4) :field (gf 3))",
                        "(perm C4 :field (gf 3 2))", "(deleted (perm A5) :field (gf 3 2))"}) {
    const std::string ts = t;
    CAPTURE(ts);
    const MatRep R = rep(lib, t);
    REQUIRE(R.dim() <= 4);
    const auto res = is_irreducible(R);
    CHECK(res.irreducible == irreducible_by_enumeration(R.field(), R.gen_images()));
    if (!res.irreducible) CHECK(is_invariant_subspace(R.field(), R.gen_images(), res.submodule));
  }
  SeedStream rng(2024);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    const FieldCtx F = make_field(p, k);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 2 + rng.below(3);
      CAPTURE(p);
      CAPTURE(k);
      CAPTURE(trial);
      std::vector<Matrix> gens;
      const bool block = rng.below(2) == 0;
      const Matrix C = random_invertible(F, rng, n);
      const Matrix Ci = mat::inverse(F, C);
      for (std::size_t g = 0; g < 1 + rng.below(2); ++g) {
        Matrix A = random_invertible(F, rng, n);
        if (block) {
          // [a 0; * B] with a != 0 and B invertible, then conjugated: stabilises a line
          const Matrix B = random_invertible(F, rng, n - 1);
          for (std::size_t j = 1; j < n; ++j) {
            A(0, j) = F.zero();
            for (std::size_t i = 1; i < n; ++i) A(i, j) = B(i - 1, j - 1);
          }
          if (F.is_zero(A(0, 0))) A(0, 0) = F.one();
        }
        gens.push_back(mat::mul(F, mat::mul(F, Ci, A), C));
      }
      const auto res = meataxe(F, gens, 7 + trial);
      CHECK(res.irreducible == irreducible_by_enumeration(F, gens));
      if (!res.irreducible) CHECK(is_invariant_subspace(F, gens, res.submodule));
    }
  }
}

TEST_CASE("module_fixed_dim examples and dual") {
  GroupLibrary lib;
  const MatRep M = rep(lib, "(deleted (perm AGL1_8) :field (gf 7))");
  CHECK(module_fixed_dim(M, {Perm::identity(8)}) == 7);
  CHECK(module_fixed_dim(M, M.group().generators()) == 0);
  CHECK(module_fixed_dim(M, M.group().generators(), true) == 0);
  const MatRep P = rep(lib, "(perm A5 :field (gf 7))");
  CHECK(module_fixed_dim(P, P.group().generators()) == 1);
  CHECK(module_fixed_dim(P, P.group().generators(), true) == 1);
}

TEST_CASE("embed_matrix_group examples") {
  GroupLibrary lib;
  const auto& s = lib.matgroup("SL2_5");
  CHECK(s.group->order() == 120);
  CHECK(s.points.size() == 24);
  const auto& t = lib.matgroup("SL3_3");
  CHECK(t.group->order() == 5616);
  CHECK(t.points.size() == 26);
  CHECK(lib.matgroup("Ex3_7").group->order() == 27);
  const FieldCtx F = make_field(5);
  const auto e = embed_matrix_group(F, 3, {Matrix::identity(F, 3)});
  CHECK(e.group->order() == 1);
  CHECK(e.points.size() == 3);
  Matrix sing(2, 2);
  CHECK(code_of([&] { embed_matrix_group(F, 2, {sing}); }) == Errc::NotInvertible);
  CHECK(code_of([&] { embed_matrix_group(F, 2, {Matrix::from_rows({{F.one(), F.one()}, {F.zero(), F.one()}})}, "", 3); }) ==
        Errc::OrbitTooLarge);
}

TEST_CASE("images define homomorphisms; bad images are rejected") {
  GroupLibrary lib;
  const FieldCtx F = make_field(7);
  auto S3 = lib.group("S3");
  // transposition -> 2 (order 3) is not a homomorphism
  std::vector<Matrix> bad{Matrix::from_rows({{F.from_int(2)}}), Matrix::from_rows({{F.one()}})};
  CHECK(code_of([&] { MatRep(S3, F, bad); }) == Errc::IllTyped);
  std::vector<Matrix> sign{Matrix::from_rows({{F.from_int(-1)}}), Matrix::from_rows({{F.one()}})};
  CHECK_NOTHROW(MatRep(S3, F, sign));

  SeedStream rng(3);
  const MatRep R = rep(lib, "(tensor (explicit SL2_5) (dual (explicit SL2_5)))");
  for (int i = 0; i < 50; ++i) {
    const Perm g = R.group().random_element(rng), h = R.group().random_element(rng);
    CHECK(R.image(g * h) == mat::mul(R.field(), R.image(g), R.image(h)));
  }
}

TEST_CASE("fixed dim equals root multiplicity on p'-elements") {
  GroupLibrary lib;
  SeedStream rng(11);
  for (const char* t : {"(deleted (perm A6) :field (gf 7))", "(deleted (perm AGL1_8) :field (gf 7))",
                        "(sym 4 (explicit SL2_7))", "(explicit SL3_3)", "(deleted (perm L2_7) :field (gf 3))",
                        "(tensor (explicit SL2_5) (dual (explicit SL2_5)))"}) {
    const std::string ts = t;
    CAPTURE(ts);
    const MatRep R = rep(lib, t);
    const FieldCtx& F = R.field();
    for (int i = 0; i < 60; ++i) {
      const Perm g = R.group().random_element(rng);
      const Poly f = char_poly(R, g);
      CHECK(f.degree() == static_cast<int>(R.dim()));
      if (is_p_prime_element(g, F.p())) CHECK(fixed_space_dim(R, g) == root_multiplicity(F, f, F.one()));
    }
  }
}

TEST_CASE("deleted module fixed dim is cycles minus one") {
  GroupLibrary lib;
  for (const char* t : {"(deleted (perm A5) :field (gf 7))", "(deleted (perm A4) :field (gf 5))",
                        "(deleted (perm S3) :field (gf 5))", "(deleted (perm A5) :field (gf 2))"}) {
    const std::string ts = t;
    CAPTURE(ts);
    const MatRep R = rep(lib, t);
    for (const auto& g : R.group().elements()) {
      std::size_t cycles = g.cycle_type().size();
      CHECK(fixed_space_dim(R, g) == cycles - 1);
    }
  }
}

TEST_CASE("dual, tensor and symmetric power characteristic polynomials") {
  GroupLibrary lib;
  SeedStream rng(5);
  const MatRep V = rep(lib, "(deleted (perm A5) :field (gf 11))");
  const MatRep Vd = rep(lib, "(dual (deleted (perm A5) :field (gf 11)))");
  for (int i = 0; i < 40; ++i) {
    const Perm g = V.group().random_element(rng);
    CHECK(char_poly(Vd, g) == char_poly(V, g.inverse()));
    CHECK(char_poly(Vd, g) == reciprocal(V.field(), char_poly(V, g)));
  }

  const MatRep N = rep(lib, "(explicit SL2_11)");
  const MatRep T = rep(lib, "(tensor (explicit SL2_11) (explicit SL2_11))");
  const MatRep S = rep(lib, "(sym 3 (explicit SL2_11))");
  const FieldCtx& F = N.field();
  int split = 0;
  for (int i = 0; i < 200; ++i) {
    const Perm g = N.group().random_element(rng);
    const auto rts = poly::roots(F, char_poly(N, g));
    if (rts.size() != 2) continue;
    ++split;
    const FieldElem a = rts[0], b = rts[1];
    Poly wt = poly::constant(F, F.one());
    for (FieldElem x : {a, b})
      for (FieldElem y : {a, b}) wt = poly::mul(F, wt, poly::linear(F, F.mul(x, y)));
    CHECK(char_poly(T, g) == wt);
    Poly ws = poly::constant(F, F.one());
    for (unsigned i3 = 0; i3 <= 3; ++i3) ws = poly::mul(F, ws, poly::linear(F, F.mul(F.pow(a, 3 - i3), F.pow(b, i3))));
    CHECK(char_poly(S, g) == ws);
  }
  CHECK(split > 20);
}

TEST_CASE("twist over an extension field and matrix group files") {
  const MatGroupSpec spec = parse_matgroup("# diagonal torus of SL2(4)\nmatgroup T4 field 2 ext 2 dim 2\ngen [[2,0],[0,3]]\n");
  CHECK(spec.k == 2);
  CHECK(parse_matgroup(format_matgroup(spec)) == spec);
  GroupLibrary lib;
  lib.add_matgroup(spec);
  const MatRep R = rep(lib, "(explicit T4)");
  const MatRep Tw = rep(lib, "(twist 1 (explicit T4))");
  const FieldCtx& F = R.field();
  const Matrix& A = R.gen_images()[0];
  CHECK(Tw.gen_images()[0](0, 0) == F.frobenius(A(0, 0)));
  CHECK(Tw.gen_images()[0](0, 0) == A(1, 1));  // x -> x^2 swaps the two primitive cube roots
  CHECK(code_of([] { parse_matgroup("matgroup X field 3 dim 2\ngen [[1,0]]\n"); }) == Errc::Parse);
}
