#include "doctest.h"

#include <fixspace/error.hpp>
#include <fixspace/weights.hpp>

#include <map>
#include <set>

using namespace fixspace;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Inconclusive;  // sentinel: nothing thrown
}

Weight w(std::initializer_list<std::int64_t> v) { return Weight(v); }

// Dominant multiplicities times Weyl orbit sizes, orbits found by brute BFS.
std::uint64_t total_from_orbits(const RootSystem& rs, const Weight& lambda) {
  std::uint64_t total = 0;
  for (const auto& [mu, m] : dominant_multiplicities(rs, lambda)) {
    std::set<Weight> orbit{mu};
    std::vector<Weight> stack{mu};
    while (!stack.empty()) {
      const Weight u = stack.back();
      stack.pop_back();
      for (unsigned i = 0; i < rs.rank(); ++i) {
        const Weight v = rs.reflect(u, i);
        if (orbit.insert(v).second) stack.push_back(v);
      }
    }
    total += m * orbit.size();
  }
  return total;
}

std::vector<Weight> all_small(unsigned rank, std::int64_t cap) {
  std::vector<Weight> out{Weight(rank, 0)};
  for (unsigned i = 0; i < rank; ++i) {
    std::vector<Weight> next;
    for (const auto& u : out)
      for (std::int64_t v = 0; v <= cap; ++v) {
        Weight x = u;
        x[i] = v;
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

} // namespace

TEST_CASE("positive root counts and rho") {
  const std::map<std::string, std::size_t> expected = {{"A1", 1}, {"A2", 3}, {"A3", 6}, {"A4", 10}, {"B2", 4},
                                                       {"B3", 9}, {"B4", 16}, {"C2", 4}, {"C3", 9}, {"C4", 16},
                                                       {"D3", 6}, {"D4", 12}, {"G2", 6}};
  for (const auto& [name, count] : expected) {
    CAPTURE(name);
    const RootSystem rs = RootSystem::parse(name);
    CHECK(rs.name() == name);
    CHECK(rs.positive_roots().size() == count);
    for (unsigned i = 0; i < rs.rank(); ++i) {
      // <rho, alpha_i^vee> = 1 and <alpha_i, alpha_i^vee> = 2
      CHECK(rs.cartan()[i][i] == 2);
      const Weight a = rs.simple_root(i);
      CHECK(2 * rs.form(rs.rho(), a) == rs.form(a, a));
    }
    // the form is Weyl invariant
    const Weight x = rs.positive_roots().back();
    const Weight y = rs.rho();
    for (unsigned i = 0; i < rs.rank(); ++i) CHECK(rs.form(rs.reflect(x, i), rs.reflect(y, i)) == rs.form(x, y));
  }
  CHECK(code_of([] { RootSystem::parse("E8"); }) == Errc::Parse);
  CHECK(code_of([] { RootSystem::parse("B1"); }) == Errc::InvalidArgument);
  CHECK(code_of([] { RootSystem::parse("A5"); }) == Errc::InvalidArgument);
}

TEST_CASE("Weyl dimensions of familiar modules") {
  const RootSystem a1 = RootSystem::parse("A1");
  for (std::int64_t s = 0; s < 20; ++s) CHECK(weyl_dim(a1, w({s})) == static_cast<std::uint64_t>(s + 1));
  const RootSystem a2 = RootSystem::parse("A2");
  for (std::int64_t a = 0; a < 6; ++a)
    for (std::int64_t b = 0; b < 6; ++b)
      CHECK(weyl_dim(a2, w({a, b})) == static_cast<std::uint64_t>((a + 1) * (b + 1) * (a + b + 2) / 2));
  CHECK(weyl_dim(RootSystem::parse("G2"), w({1, 0})) == 7);
  CHECK(weyl_dim(RootSystem::parse("G2"), w({0, 1})) == 14);
  CHECK(weyl_dim(RootSystem::parse("B2"), w({1, 0})) == 5);
  CHECK(weyl_dim(RootSystem::parse("B2"), w({0, 1})) == 4);
  CHECK(weyl_dim(RootSystem::parse("C2"), w({1, 0})) == 4);
  CHECK(weyl_dim(RootSystem::parse("C2"), w({0, 1})) == 5);
  CHECK(weyl_dim(RootSystem::parse("B3"), w({1, 0, 0})) == 7);
  CHECK(weyl_dim(RootSystem::parse("B3"), w({0, 1, 0})) == 21);
  CHECK(weyl_dim(RootSystem::parse("B3"), w({0, 0, 1})) == 8);
  CHECK(weyl_dim(RootSystem::parse("C3"), w({0, 0, 1})) == 14);
  CHECK(weyl_dim(RootSystem::parse("A3"), w({0, 1, 0})) == 6);
  const RootSystem d4 = RootSystem::parse("D4");
  CHECK(weyl_dim(d4, w({1, 0, 0, 0})) == 8);
  CHECK(weyl_dim(d4, w({0, 1, 0, 0})) == 28);
  CHECK(weyl_dim(d4, w({0, 0, 1, 0})) == 8);
  CHECK(weyl_dim(d4, w({0, 0, 0, 1})) == 8);
  CHECK(code_of([&] { weyl_dim(a2, w({-1, 0})); }) == Errc::NotDominant);
}

TEST_CASE("Freudenthal totals match Weyl dimensions") {
  for (const char* name : {"A1", "A2", "A3", "B2", "C2", "G2"}) {
    const RootSystem rs = RootSystem::parse(name);
    for (const Weight& lambda : all_small(rs.rank(), rs.rank() <= 2 ? 3 : 2)) {
      CAPTURE(name);
      CAPTURE(lambda);
      CHECK(total_from_orbits(rs, lambda) == weyl_dim(rs, lambda));
    }
  }
  for (const char* name : {"B3", "C3", "D4", "A4"}) {
    const RootSystem rs = RootSystem::parse(name);
    for (const Weight& lambda : all_small(rs.rank(), 1)) CHECK(total_from_orbits(rs, lambda) == weyl_dim(rs, lambda));
  }
}

TEST_CASE("weight multisets") {
  const RootSystem a2 = RootSystem::parse("A2");
  const WeightMultiset adj = weight_multiset(a2, w({1, 1}));
  CHECK(adj.total() == 8);
  CHECK(adj.multiplicity(w({0, 0})) == 2);
  CHECK(adj.entries.size() == 7);

  // G2 short: six short roots and 0 once
  const RootSystem g2 = RootSystem::parse("G2");
  const WeightMultiset seven = weight_multiset(g2, w({1, 0}));
  CHECK(seven.total() == 7);
  CHECK(seven.multiplicity(w({0, 0})) == 1);
  std::size_t short_roots = 0;
  for (const auto& alpha : g2.positive_roots()) {
    const bool is_short = g2.form(alpha, alpha) == g2.form(g2.simple_root(0), g2.simple_root(0));
    if (!is_short) continue;
    Weight neg = alpha;
    for (auto& v : neg) v = -v;
    short_roots += seven.multiplicity(alpha) + seven.multiplicity(neg);
  }
  CHECK(short_roots == 6);

  // every multiset is stable under the simple reflections
  for (const char* name : {"B2", "G2", "A3"}) {
    const RootSystem rs = RootSystem::parse(name);
    Weight lambda(rs.rank(), 1);
    const WeightMultiset m = weight_multiset(rs, lambda);
    for (unsigned i = 0; i < rs.rank(); ++i)
      for (const auto& [mu, k] : m.entries) CHECK(m.multiplicity(rs.reflect(mu, i)) == k);
  }

  CHECK(code_of([&] { weight_multiset(a2, w({60, 60})); }) == Errc::TooLarge);

  const WeightMultiset one = weight_multiset(RootSystem::parse("A1"), w({1}));
  const WeightMultiset sq = tensor_weights(one, one);
  CHECK(sq.multiplicity(w({0})) == 2);
  CHECK(sq.total() == 4);
  CHECK(scale_weights(one, 5).multiplicity(w({-5})) == 1);
  CHECK(multiset_contains(sq, weight_multiset(RootSystem::parse("A1"), w({2}))));
  CHECK_FALSE(multiset_contains(one, sq));
}

TEST_CASE("torus characteristic polynomials") {
  const FieldCtx F = make_field(7);
  const RootSystem a1 = RootSystem::parse("A1");
  const WeightMultiset two = weight_multiset(a1, w({2}));
  const Poly expect = poly::mul(F, poly::mul(F, poly::linear(F, F.from_int(2)), poly::linear(F, F.from_int(1))),
                                poly::linear(F, F.from_int(4)));
  CHECK(torus_char_poly(two, {F.from_int(3)}, F) == expect);
  const WeightMultiset one = weight_multiset(a1, w({1}));
  CHECK(torus_char_poly(one, {F.from_int(2)}, F) ==
        poly::mul(F, poly::linear(F, F.from_int(2)), poly::linear(F, F.from_int(4))));
  CHECK(code_of([&] { torus_char_poly(one, {F.zero()}, F); }) == Errc::ZeroTorusValue);
  CHECK(code_of([&] { torus_char_poly(one, {F.one(), F.one()}, F); }) == Errc::InvalidArgument);

  const auto s = torus_samples(F, 3, 10, 4);
  CHECK(s.size() == 10);
  for (const auto& t : s) {
    CHECK(t.size() == 3);
    for (FieldElem x : t) CHECK_FALSE(F.is_zero(x));
  }
  CHECK(s == torus_samples(F, 3, 10, 4));
}

TEST_CASE("twist divisibility") {
  {
    const FieldCtx F = make_field(5, 2);
    const RootSystem rs = RootSystem::parse("A1");
    const auto rep = check_twist_divisibility(rs, w({2}), w({1}), 5, F, torus_samples(F, 1, 20, 1));
    CHECK(rep.verdict == CheckVerdict::Holds);
    CHECK(rep.containment);
    CHECK(rep.samples_dividing == 20);
    CHECK(check_twist_divisibility(rs, w({1}), w({1}), 5, F, {}).verdict == CheckVerdict::NotApplicable);
    CHECK(code_of([&] { check_twist_divisibility(rs, w({2}), w({1}), 3, F, {}); }) == Errc::InvalidArgument);
  }
  {
    const FieldCtx F = make_field(7);
    const RootSystem rs = RootSystem::parse("A2");
    const auto rep = check_twist_divisibility(rs, w({1, 1}), w({1, 0}), 7, F, torus_samples(F, 2, 20, 2));
    CHECK(rep.verdict == CheckVerdict::Holds);
  }
  {
    const FieldCtx F = make_field(11);
    const RootSystem rs = RootSystem::parse("G2");
    const auto rep = check_twist_divisibility(rs, w({1, 0}), w({1, 0}), 11, F, torus_samples(F, 2, 10, 3));
    CHECK(rep.verdict == CheckVerdict::Holds);
  }
  CHECK(check_verdict_name(CheckVerdict::NotApplicable) == "not_applicable");
}

TEST_CASE("symmetric power divisibility") {
  for (unsigned n : {2U, 3U})
    for (unsigned s : {1U, 2U, 3U}) {
      CAPTURE(n);
      CAPTURE(s);
      const FieldCtx F = make_field(11);
      const auto rep = check_sym_divisibility(n, s, F, torus_samples(F, n - 1, 15, n * 10 + s));
      CHECK(rep.verdict == CheckVerdict::Holds);
      CHECK(rep.containment);
      CHECK(rep.samples_dividing == 15);
    }
  CHECK(code_of([] { check_sym_divisibility(2, 1, make_field(3), {}); }) == Errc::HypothesisViolated);
  CHECK(code_of([] { check_sym_divisibility(1, 1, make_field(11), {}); }) == Errc::InvalidArgument);
}

TEST_CASE("Cartan multiplication check") {
  const FieldCtx F = make_field(13);
  const RootSystem a2 = RootSystem::parse("A2");
  // adding the highest root nests weight multisets
  const auto rep = check_cartan_mult(a2, w({1, 0}), w({1, 1}), F, torus_samples(F, 2, 10, 5));
  CHECK(rep.verdict == CheckVerdict::Holds);
  CHECK(code_of([&] { check_cartan_mult(a2, w({1, 1}), w({-2, 1}), F, {}); }) == Errc::NotDominant);
  CHECK(code_of([&] { check_cartan_mult(a2, w({1, 1}), w({1, 0}), F, {}); }) == Errc::InvalidArgument);
  // adjoint (zero weight twice) against 3 omega_1 (zero weight once)
  const auto un = check_cartan_mult(a2, w({1, 1}), w({2, -1}), F, torus_samples(F, 2, 5, 6));
  CHECK(un.verdict == CheckVerdict::Unresolved);
  CHECK_FALSE(un.containment);
}

TEST_CASE("sl2 eigenvalue rule") {
  for (std::uint64_t q : {3ULL, 5ULL, 7ULL, 9ULL, 11ULL, 13ULL}) {
    const std::uint64_t p = q == 9 ? 3 : q;
    for (unsigned s = 0; s < p; ++s) {
      CAPTURE(q);
      CAPTURE(s);
      const auto rep = sl2_distinct_eigenvalues(q, s);
      // values z^w with z of order q + 1 collide iff some difference 2j <= 2s is divisible by q + 1
      const bool oracle = 2 * s < q + 1;
      CHECK(rep.distinct == oracle);
      CHECK(rep.predicted_distinct == rep.distinct);
      CHECK(rep.collision.has_value() == !rep.distinct);
    }
  }
  CHECK(code_of([] { sl2_distinct_eigenvalues(4, 1); }) == Errc::InvalidArgument);
  CHECK(code_of([] { sl2_distinct_eigenvalues(6, 1); }) == Errc::InvalidArgument);
  CHECK(code_of([] { sl2_distinct_eigenvalues(9, 3); }) == Errc::NotRestricted);
}
