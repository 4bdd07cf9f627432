#include "fixspace/gensearch.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "fixspace/arith.hpp"
#include "fixspace/chartab.hpp"
#include "fixspace/error.hpp"

namespace fixspace {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Generates: return "generates";
    case Verdict::NotFoundBudget: return "not_found_budget";
    case Verdict::NotFoundExhausted: return "not_found_exhausted";
  }
  return "?";
}

std::string_view completeness_name(Completeness c) noexcept {
  return c == Completeness::ExistsWithWitness ? "exists_with_witness" : "proved_none";
}

namespace {

constexpr std::uint64_t kSweepChunk = 64;

void require_prime(std::uint64_t p) {
  if (!arith::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
}

std::size_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

// Cheap necessary condition when G is transitive.
bool pair_is_transitive(const Perm& x, const Perm& y) {
  const std::size_t n = x.degree();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  std::size_t comps = n;
  for (const Perm* g : {&x, &y}) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto a = find_root(parent, i);
      const auto b = find_root(parent, (*g)[i]);
      if (a != b) {
        parent[a] = static_cast<std::uint32_t>(b);
        --comps;
      }
    }
  }
  return comps == 1;
}

struct SweepOutcome {
  std::size_t winner = 0;
  bool found = false;
  std::uint64_t attempts = 0;
};

// Runs attempt(worker, rng) until one succeeds or the budget is spent. Each
// worker keeps its own stream across sweeps; a sweep's winner is the lowest
// worker index with a hit, so the outcome is independent of scheduling.
template <class Attempt>
SweepOutcome sweep_search(const SearchOptions& opt, Attempt&& attempt) {
  if (opt.budget == 0) throw Error(Errc::InvalidArgument, "budget must be at least 1");
  const unsigned W = std::max(1U, opt.workers);
  std::vector<SeedStream> streams;
  for (unsigned w = 0; w < W; ++w) streams.push_back(SeedStream::fork(opt.seed, w));

  SweepOutcome out;
  std::uint64_t used = 0;
  while (used < opt.budget) {
    const std::uint64_t remaining = opt.budget - used;
    const std::uint64_t per = std::min(kSweepChunk, (remaining + W - 1) / W);
    std::vector<std::uint64_t> quota(W, 0), done(W, 0);
    std::vector<char> hit(W, 0);
    std::uint64_t left = remaining;
    for (unsigned w = 0; w < W; ++w) {
      quota[w] = std::min(per, left);
      left -= quota[w];
    }
    auto run = [&](unsigned w) {
      for (std::uint64_t i = 0; i < quota[w]; ++i) {
        ++done[w];
        if (attempt(w, streams[w])) {
          hit[w] = 1;
          return;
        }
      }
    };
    if (W == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < W; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
    }
    for (unsigned w = 0; w < W; ++w) used += done[w];
    for (unsigned w = 0; w < W; ++w) {
      if (hit[w]) {
        out.found = true;
        out.winner = w;
        out.attempts = used;
        return out;
      }
    }
  }
  out.attempts = used;
  return out;
}

bool admissible(const Perm& g, std::uint64_t p, const std::optional<std::uint64_t>& want, std::uint64_t& order) {
  order = element_order(g);
  if (order % p == 0) return false;
  return !want || order == *want;
}

bool is_abelian(const PermGroup& G) {
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

std::uint64_t generated_order(std::size_t degree, const Perm& x, const Perm& y) {
  return group_from_generators(degree, {x, y}).order();
}

} // namespace

TripleCertificate find_triple(const PermGroup& G, std::uint64_t p, const SearchOptions& opt) {
  require_prime(p);
  const bool transitive = G.is_transitive();
  const unsigned W = std::max(1U, opt.workers);
  std::vector<TripleCertificate> slot(W);
  std::array<std::optional<std::uint64_t>, 3> want;
  want.fill(opt.element_order);
  if (opt.triple_orders)
    for (std::size_t i = 0; i < 3; ++i) want[i] = (*opt.triple_orders)[i];
  auto attempt = [&](unsigned w, SeedStream& rng) {
    TripleCertificate& c = slot[w];
    const Perm x = G.random_element(rng);
    if (!admissible(x, p, want[0], c.orders[0])) return false;
    const Perm y = G.random_element(rng);
    if (!admissible(y, p, want[1], c.orders[1])) return false;
    const Perm z = (x * y).inverse();
    if (!admissible(z, p, want[2], c.orders[2])) return false;
    if (transitive && !pair_is_transitive(x, y)) return false;
    const std::uint64_t order = generated_order(G.degree(), x, y);
    if (order != G.order()) return false;
    c.x = x;
    c.y = y;
    c.z = z;
    c.subgroup_order = order;
    return true;
  };
  const SweepOutcome r = sweep_search(opt, attempt);
  TripleCertificate c;
  if (r.found) {
    c = slot[r.winner];
    c.verdict = Verdict::Generates;
  } else {
    c.verdict = Verdict::NotFoundBudget;
    c.orders = {};
  }
  c.p = p;
  c.attempts = r.attempts;
  c.abelian_group = is_abelian(G);
  return c;
}

PairCertificate find_conjugate_pair(const PermGroup& G, std::uint64_t p, const SearchOptions& opt) {
  require_prime(p);
  const bool transitive = G.is_transitive();
  const unsigned W = std::max(1U, opt.workers);
  std::vector<PairCertificate> slot(W);
  auto attempt = [&](unsigned w, SeedStream& rng) {
    PairCertificate& c = slot[w];
    const Perm x = G.random_element(rng);
    if (x.is_identity() || !admissible(x, p, opt.element_order, c.order)) return false;
    const Perm h = G.random_element(rng);
    const Perm y = x.conjugate_by(h);
    if (transitive && !pair_is_transitive(x, y)) return false;
    const std::uint64_t order = generated_order(G.degree(), x, y);
    if (order != G.order()) return false;
    c.x = x;
    c.h = h;
    c.y = y;
    c.subgroup_order = order;
    return true;
  };
  const SweepOutcome r = sweep_search(opt, attempt);
  PairCertificate c;
  if (r.found) {
    c = slot[r.winner];
    c.verdict = Verdict::Generates;
  } else {
    c.verdict = Verdict::NotFoundBudget;
    c.order = 0;
  }
  c.p = p;
  c.attempts = r.attempts;
  return c;
}

bool verify_certificate(const PermGroup& G, const TripleCertificate& c) {
  if (c.verdict != Verdict::Generates || !arith::is_prime(c.p)) return false;
  const std::size_t n = G.degree();
  for (const Perm* g : {&c.x, &c.y, &c.z})
    if (g->degree() != n || !G.contains(*g)) return false;
  if (!(c.x * c.y * c.z).is_identity()) return false;
  const std::array<const Perm*, 3> elems{&c.x, &c.y, &c.z};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::uint64_t o = element_order(*elems[i]);
    if (o != c.orders[i] || o % c.p == 0) return false;
  }
  const std::uint64_t order = generated_order(n, c.x, c.y);
  return order == c.subgroup_order && order == G.order();
}

bool verify_certificate(const PermGroup& G, const PairCertificate& c) {
  if (c.verdict != Verdict::Generates || !arith::is_prime(c.p)) return false;
  const std::size_t n = G.degree();
  for (const Perm* g : {&c.x, &c.h, &c.y})
    if (g->degree() != n || !G.contains(*g)) return false;
  if (c.x.conjugate_by(c.h) != c.y) return false;
  const std::uint64_t o = element_order(c.x);
  if (o != c.order || o % c.p == 0) return false;
  const std::uint64_t order = generated_order(n, c.x, c.y);
  return order == c.subgroup_order && order == G.order();
}

ExhaustiveResult exhaustive_triple_search(const PermGroup& G, std::uint64_t p, std::uint64_t cap) {
  require_prime(p);
  if (G.order() > cap)
    throw Error(Errc::GroupTooLarge, "exhaustive search needs |G| <= " + std::to_string(cap));
  const ConjugacyClasses classes = conjugacy_classes(G);
  const CharTable T = character_table(G, classes);
  std::vector<std::size_t> pc;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].element_order % p != 0) pc.push_back(i);

  ExhaustiveResult res;
  const bool transitive = G.is_transitive();
  std::vector<char> allowed(classes.size());
  for (std::size_t c1 : pc) {
    const Perm& x = classes[c1].rep;
    for (std::size_t c2 : pc) {
      std::fill(allowed.begin(), allowed.end(), 0);
      bool any = false;
      for (std::size_t c3 : pc) {
        ++res.class_triples;
        if (triple_count(T, c1, c2, c3) == 0) {
          ++res.pruned_by_count;
        } else {
          allowed[c3] = 1;
          any = true;
        }
      }
      if (!any) continue;
      for (const Perm& y : classes[c2].members) {
        ++res.pairs_tested;
        const Perm z = (x * y).inverse();
        if (!allowed[classes.class_of(z)]) continue;
        if (transitive && !pair_is_transitive(x, y)) continue;
        const std::uint64_t order = generated_order(G.degree(), x, y);
        if (order != G.order()) continue;
        TripleCertificate c;
        c.x = x;
        c.y = y;
        c.z = z;
        c.orders = {element_order(x), element_order(y), element_order(z)};
        c.p = p;
        c.subgroup_order = order;
        c.verdict = Verdict::Generates;
        c.attempts = res.pairs_tested;
        c.abelian_group = is_abelian(G);
        res.witness = c;
        res.verdict = Completeness::ExistsWithWitness;
        return res;
      }
    }
  }
  res.verdict = Completeness::ProvedNone;
  return res;
}

Perm find_fpf_prime_power_element(const PermGroup& G, std::uint64_t budget, std::uint64_t seed) {
  if (!G.is_transitive()) throw Error(Errc::NotTransitive, "group is not transitive");
  SeedStream rng(seed);
  for (std::uint64_t i = 0; i < budget; ++i) {
    const Perm g = G.random_element(rng);
    const std::uint64_t o = element_order(g);
    if (o == 1) continue;
    for (const auto& [r, a] : arith::factorize(o)) {
      std::uint64_t ra = 1;
      for (unsigned j = 0; j < a; ++j) ra *= r;
      const Perm h = g.pow(static_cast<std::int64_t>(o / ra));
      if (h.fixed_points() == 0) return h;
    }
  }
  throw Error(Errc::NotFound, "no fixed-point-free prime-power element within budget");
}

std::uint64_t phi_star(unsigned n, std::uint64_t q) {
  if (n < 2 || n > 40) throw Error(Errc::InvalidArgument, "phi_star needs 2 <= n <= 40");
  if (q < 2 || arith::prime_power(q).first == 0)
    throw Error(Errc::InvalidArgument, std::to_string(q) + " is not a prime power");
  std::uint64_t qn = 0;
  if (!arith::checked_pow(q, n, (std::uint64_t{1} << 62) - 1, qn))
    throw Error(Errc::Overflow, "q^n must stay below 2^62");
  std::uint64_t N = qn - 1;
  std::uint64_t qm = 1;
  for (unsigned m = 1; m < n; ++m) {
    qm *= q;
    // strip every prime shared with q^m - 1, with multiplicity
    for (std::uint64_t g = arith::gcd(N, qm - 1); g > 1; g = arith::gcd(N, qm - 1)) N /= g;
  }
  return N;
}

} // namespace fixspace
