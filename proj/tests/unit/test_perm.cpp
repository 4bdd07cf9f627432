#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include <fixspace/arith.hpp>
#include <fixspace/error.hpp>
#include <fixspace/perm.hpp>

using namespace fixspace;

namespace {

Perm cyc(std::size_t n, std::vector<std::vector<std::uint32_t>> c) { return Perm::from_cycles(n, c); }

PermGroup A5() { return group_from_generators(5, {cyc(5, {{0, 1, 2, 3, 4}}), cyc(5, {{2, 3, 4}})}); }

// Class sizes by brute-force conjugation over the whole element list.
std::multiset<std::uint64_t> brute_class_sizes(const std::vector<Perm>& elems) {
  std::set<Perm> done;
  std::multiset<std::uint64_t> sizes;
  for (const auto& x : elems) {
    if (done.count(x)) continue;
    std::set<Perm> cls;
    for (const auto& g : elems) cls.insert(x.conjugate_by(g));
    done.insert(cls.begin(), cls.end());
    sizes.insert(cls.size());
  }
  return sizes;
}

struct Named {
  const char* name;
  std::size_t degree;
  std::vector<Perm> gens;
};

std::vector<Named> small_groups() {
  return {
      {"S3", 3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}},
      {"A4", 4, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})}},
      {"S4", 4, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})}},
      {"A5", 5, {cyc(5, {{0, 1, 2, 3, 4}}), cyc(5, {{2, 3, 4}})}},
      {"S5", 5, {cyc(5, {{0, 1}}), cyc(5, {{0, 1, 2, 3, 4}})}},
      {"A6", 6, {cyc(6, {{0, 1, 2, 3, 4}}), cyc(6, {{3, 4, 5}})}},
      {"D8", 4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})}},
      {"L2(7)", 7, {cyc(7, {{0, 1, 2, 3, 4, 5, 6}}), cyc(7, {{1, 2, 4}, {3, 6, 5}}), cyc(7, {{0, 6}, {1, 3}})}},
      {"AGL(1,8)", 8, {cyc(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}), cyc(8, {{1, 2, 4, 3, 6, 7, 5}})}},
  };
}

} // namespace

TEST_CASE("group_from_generators examples") {
  CHECK(A5().order() == 60);
  CHECK(closure_order(5, A5().generators()) == 60);
  CHECK(group_from_generators(3, {cyc(3, {{0, 1}})}).order() == 2);
  const PermGroup A12 = group_from_generators(
      12, {cyc(12, {{0, 1, 2}}), cyc(12, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}})});
  std::uint64_t fact = 1;
  for (std::uint64_t i = 2; i <= 12; ++i) fact *= i;
  CHECK(A12.order() == fact / 2);
  CHECK(A12.order() == 239500800ULL);
  CHECK_THROWS_AS(Perm({0, 0, 1}), Error);
}

TEST_CASE("BSGS order equals closure size; generators sift") {
  for (const auto& g : small_groups()) {
    CAPTURE(g.name);
    const PermGroup G = group_from_generators(g.degree, g.gens);
    CHECK(G.order() == closure_order(g.degree, g.gens));
    for (const auto& s : g.gens) CHECK(G.contains(s));
    std::uint64_t fact = 1;
    for (std::uint64_t i = 2; i <= g.degree; ++i) fact *= i;
    CHECK(fact % G.order() == 0);
    const auto elems = G.elements();
    CHECK(elems.size() == G.order());
    CHECK(std::set<Perm>(elems.begin(), elems.end()).size() == G.order());
  }
}

TEST_CASE("contains examples") {
  const PermGroup G = A5();
  CHECK(G.contains(cyc(5, {{0, 1, 2}})));
  CHECK_FALSE(G.contains(cyc(5, {{0, 1}})));
  const PermGroup S3 = group_from_generators(5, {cyc(5, {{0, 1}}), cyc(5, {{0, 1, 2}})});
  CHECK_FALSE(S3.contains(cyc(5, {{3, 4}})));
  try {
    G.contains(Perm::identity(4));
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegreeMismatch);
  }
}

TEST_CASE("factor reproduces the element through the straight-line program") {
  const PermGroup G = A5();
  SeedStream rng(4);
  const auto& gens = G.generators();
  for (int t = 0; t < 50; ++t) {
    const Perm g = G.random_element(rng);
    const auto nodes = G.factor(g);
    const auto vals = G.slp().evaluate<Perm>(nodes, std::span<const Perm>(gens), Perm::identity(5),
                                             [](const Perm& a, const Perm& b) { return a * b; },
                                             [](const Perm& a) { return a.inverse(); });
    Perm prod = Perm::identity(5);
    for (const auto& v : vals) prod = prod * v;
    CHECK(prod == g);
  }
  CHECK_THROWS_AS(G.factor(cyc(5, {{0, 1}})), Error);
}

TEST_CASE("random_element examples") {
  SeedStream rng(1);
  const PermGroup T = group_from_generators(4, {});
  for (int i = 0; i < 10; ++i) CHECK(T.random_element(rng).is_identity());
  const PermGroup C2 = group_from_generators(2, {cyc(2, {{0, 1}})});
  int id = 0;
  for (int i = 0; i < 10000; ++i) id += C2.random_element(rng).is_identity();
  CHECK(id >= 4600);
  CHECK(id <= 5400);
  const PermGroup G = A5();
  std::set<Perm> seen;
  for (int i = 0; i < 60000; ++i) seen.insert(G.random_element(rng));
  CHECK(seen.size() == 60);
}

TEST_CASE("element_order and p-prime tests") {
  CHECK(element_order(cyc(5, {{0, 1, 2, 3, 4}})) == 5);
  CHECK(element_order(cyc(5, {{0, 1}, {2, 3, 4}})) == 6);
  CHECK(element_order(Perm::identity(5)) == 1);
  CHECK_FALSE(is_p_prime_element(cyc(5, {{0, 1, 2, 3, 4}}), 5));
  CHECK(is_p_prime_element(cyc(5, {{0, 1, 2}}), 5));
  CHECK(is_p_prime_element(Perm::identity(7), 3));
}

TEST_CASE("conjugacy class examples") {
  auto sizes = [](const PermGroup& G) {
    std::multiset<std::uint64_t> s;
    for (const auto& c : conjugacy_classes(G).classes()) s.insert(c.size);
    return s;
  };
  CHECK(sizes(group_from_generators(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})})) ==
        std::multiset<std::uint64_t>{1, 3, 2});
  CHECK(sizes(A5()) == std::multiset<std::uint64_t>{1, 15, 20, 12, 12});
  CHECK(sizes(group_from_generators(4, {cyc(4, {{0, 1, 2}}), cyc(4, {{1, 2, 3}})})) ==
        std::multiset<std::uint64_t>{1, 3, 4, 4});
  try {
    conjugacy_classes(A5(), 59);
    FAIL("expected GroupTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::GroupTooLarge);
  }
}

TEST_CASE("class structure matches brute force, sorted, with power maps") {
  SeedStream rng(77);
  for (const auto& g : small_groups()) {
    CAPTURE(g.name);
    const PermGroup G = group_from_generators(g.degree, g.gens);
    const auto cc = conjugacy_classes(G);
    const auto elems = G.elements();
    std::multiset<std::uint64_t> got;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < cc.size(); ++i) {
      const auto& c = cc[i];
      got.insert(c.size);
      total += c.size;
      CHECK(G.order() % c.size == 0);
      CHECK(c.members.size() == c.size);
      CHECK(c.rep == *std::min_element(c.members.begin(), c.members.end()));
      CHECK(c.element_order == element_order(c.rep));
      if (i > 0) {
        const auto& d = cc[i - 1];
        CHECK(std::tie(d.element_order, d.size, d.rep) < std::tie(c.element_order, c.size, c.rep));
      }
      CHECK(cc.class_of(c.rep.inverse()) == cc.inverse_class(i));
      CHECK(cc.class_of(c.rep.pow(2)) == cc.power_class(i, 2));
      CHECK(cc.class_of(c.rep.pow(-1)) == cc.power_class(i, -1));
      const Perm x = G.random_element(rng);
      CHECK(cc.class_of(c.rep.conjugate_by(x)) == i);
    }
    CHECK(total == G.order());
    CHECK(got == brute_class_sizes(elems));
    CHECK(cc[0].rep.is_identity());
  }
}

TEST_CASE("subgroup_order examples and Lagrange") {
  const PermGroup G = A5();
  const std::vector<Perm> two{cyc(5, {{0, 1, 2}}), cyc(5, {{2, 3, 4}})};
  CHECK(G.subgroup_order(two) == 60);
  CHECK(closure_order(5, two) == 60);
  const std::vector<Perm> one{cyc(5, {{0, 1, 2}})};
  CHECK(G.subgroup_order(one) == 3);
  const std::vector<Perm> id{Perm::identity(5)};
  CHECK(G.subgroup_order(id) == 1);
  const std::vector<Perm> bad{cyc(5, {{0, 1}})};
  CHECK_THROWS_AS(G.subgroup_order(bad), Error);

  SeedStream rng(12);
  for (const auto& g : small_groups()) {
    const PermGroup H = group_from_generators(g.degree, g.gens);
    for (int t = 0; t < 1000 / static_cast<int>(small_groups().size()) + 1; ++t) {
      std::vector<Perm> s;
      const auto m = 1 + rng.below(3);
      for (std::uint64_t i = 0; i < m; ++i) s.push_back(H.random_element(rng));
      const auto o = H.subgroup_order(s);
      CHECK(H.order() % o == 0);
      if (t < 10) CHECK(o == closure_order(g.degree, s));
    }
  }
}

TEST_CASE("cycle parsing and group spec text") {
  CHECK(parse_cycles("(1,2,3)(4,5)", 5) == cyc(5, {{0, 1, 2}, {3, 4}}));
  CHECK(parse_cycles("()", 3).is_identity());
  CHECK(cyc(5, {{0, 1, 2}, {3, 4}}).to_cycle_string() == "(1,2,3)(4,5)");
  const auto spec = parse_group_spec("# A5\ngroup A5\ndegree 5\ngen (1,2,3,4,5)\ngen (3,4,5)\n");
  CHECK(spec.name == "A5");
  CHECK(build_group(spec).order() == 60);
  CHECK(parse_group_spec(format_group_spec(spec)).generators == spec.generators);
  CHECK_THROWS_AS(parse_group_spec("degree 3\ngen (1,4)\n"), Error);
}
