#include "fixspace/weights.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "fixspace/arith.hpp"
#include "fixspace/error.hpp"

namespace fixspace {

namespace {

using IMat = std::vector<std::vector<std::int64_t>>;

std::int64_t det(const IMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IMat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const std::int64_t term = m[0][c] * det(minor);
    out += (c % 2 ? -term : term);
  }
  return out;
}

IMat adjugate(const IMat& m) {
  const std::size_t n = m.size();
  IMat adj(n, std::vector<std::int64_t>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IMat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<std::int64_t> row;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i) row.push_back(m[r][k]);
        minor.push_back(std::move(row));
      }
      const std::int64_t c = det(minor);
      adj[i][j] = (i + j) % 2 ? -c : c;
    }
  return adj;
}

// Symmetric matrix of (alpha_i, alpha_j) with short roots of squared length 2.
IMat root_form(RootType t, unsigned r) {
  IMat b(r, std::vector<std::int64_t>(r, 0));
  auto link = [&](unsigned i, unsigned j, std::int64_t v) { b[i][j] = b[j][i] = v; };
  switch (t) {
    case RootType::A:
      for (unsigned i = 0; i < r; ++i) b[i][i] = 2;
      for (unsigned i = 0; i + 1 < r; ++i) link(i, i + 1, -1);
      break;
    case RootType::B:  // alpha_r short
      for (unsigned i = 0; i < r; ++i) b[i][i] = i + 1 < r ? 4 : 2;
      for (unsigned i = 0; i + 1 < r; ++i) link(i, i + 1, -2);
      break;
    case RootType::C:  // alpha_r long
      for (unsigned i = 0; i < r; ++i) b[i][i] = i + 1 < r ? 2 : 4;
      for (unsigned i = 0; i + 2 < r; ++i) link(i, i + 1, -1);
      link(r - 2, r - 1, -2);
      break;
    case RootType::D:  // alpha_{r-1}, alpha_r both hang off alpha_{r-2}
      for (unsigned i = 0; i < r; ++i) b[i][i] = 2;
      for (unsigned i = 0; i + 2 < r; ++i) link(i, i + 1, -1);
      link(r - 3, r - 1, -1);
      break;
    case RootType::G:  // alpha_1 short
      b[0][0] = 2;
      b[1][1] = 6;
      link(0, 1, -3);
      break;
  }
  return b;
}

std::uint64_t gcd128(arith::u128 a, arith::u128 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return static_cast<std::uint64_t>(a);
}

std::int64_t height(const std::vector<std::int64_t>& c) { return std::accumulate(c.begin(), c.end(), std::int64_t{0}); }

void require_dominant(const Weight& w, unsigned rank) {
  if (w.size() != rank) throw Error(Errc::InvalidArgument, "weight has the wrong number of coordinates");
  if (!RootSystem::is_dominant(w)) throw Error(Errc::NotDominant, "weight is not dominant");
}

WeightMultiset from_map(const std::map<Weight, std::uint64_t>& m) {
  WeightMultiset out;
  for (const auto& [w, k] : m)
    if (k) out.entries.emplace_back(w, k);
  return out;
}

} // namespace

RootSystem RootSystem::make(RootType type, unsigned rank) {
  const bool ok = (type == RootType::A && rank >= 1 && rank <= 4) ||
                  ((type == RootType::B || type == RootType::C) && rank >= 2 && rank <= 4) ||
                  (type == RootType::D && rank >= 3 && rank <= 4) || (type == RootType::G && rank == 2);
  if (!ok) throw Error(Errc::InvalidArgument, "unsupported root system");
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  const IMat b = root_form(type, rank);
  rs.d_.resize(rank);
  for (unsigned i = 0; i < rank; ++i) rs.d_[i] = b[i][i] / 2;
  rs.cartan_.assign(rank, std::vector<std::int64_t>(rank));
  for (unsigned i = 0; i < rank; ++i)
    for (unsigned j = 0; j < rank; ++j) rs.cartan_[i][j] = b[i][j] / rs.d_[j];
  rs.det_ = det(rs.cartan_);
  rs.inv_num_ = adjugate(rs.cartan_);
  // (omega_i, omega_j) = (C^-1)_{ji} d_i; scaled by det C
  rs.gram_.assign(rank, std::vector<std::int64_t>(rank));
  for (unsigned i = 0; i < rank; ++i)
    for (unsigned j = 0; j < rank; ++j) rs.gram_[i][j] = rs.inv_num_[j][i] * rs.d_[i];

  // all roots as the orbit of the simple roots; positive ones kept
  std::set<std::vector<std::int64_t>> seen;
  std::deque<std::vector<std::int64_t>> queue;
  for (unsigned i = 0; i < rank; ++i) {
    std::vector<std::int64_t> e(rank, 0);
    e[i] = 1;
    if (seen.insert(e).second) queue.push_back(e);
  }
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (unsigned i = 0; i < rank; ++i) {
      std::int64_t pairing = 0;  // <beta, alpha_i^vee>
      for (unsigned j = 0; j < rank; ++j) pairing += c[j] * rs.cartan_[j][i];
      auto next = c;
      next[i] -= pairing;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  for (const auto& c : seen)
    if (std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v >= 0; })) rs.pos_simple_.push_back(c);
  std::stable_sort(rs.pos_simple_.begin(), rs.pos_simple_.end(),
                   [](const auto& a, const auto& b) { return height(a) < height(b); });
  for (const auto& c : rs.pos_simple_) {
    Weight w(rank, 0);
    for (unsigned j = 0; j < rank; ++j)
      for (unsigned i = 0; i < rank; ++i) w[i] += c[j] * rs.cartan_[j][i];
    rs.pos_.push_back(std::move(w));
  }
  return rs;
}

RootSystem RootSystem::parse(std::string_view name) {
  if (name.size() < 2) throw Error(Errc::Parse, "root system name like A2 or G2");
  RootType t;
  switch (name[0]) {
    case 'A': t = RootType::A; break;
    case 'B': t = RootType::B; break;
    case 'C': t = RootType::C; break;
    case 'D': t = RootType::D; break;
    case 'G': t = RootType::G; break;
    default: throw Error(Errc::Parse, "unknown root system type '" + std::string(name) + "'");
  }
  unsigned r = 0;
  const auto rest = name.substr(1);
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), r);
  if (ec != std::errc{} || ptr != rest.data() + rest.size()) throw Error(Errc::Parse, "bad rank in '" + std::string(name) + "'");
  return make(t, r);
}

std::string RootSystem::name() const {
  static const char letters[] = {'A', 'B', 'C', 'D', 'G'};
  return letters[static_cast<int>(type_)] + std::to_string(rank_);
}

std::int64_t RootSystem::form(const Weight& a, const Weight& b) const {
  std::int64_t s = 0;
  for (unsigned i = 0; i < rank_; ++i)
    for (unsigned j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
  return s;
}

Weight RootSystem::simple_root(unsigned i) const { return Weight(cartan_[i].begin(), cartan_[i].end()); }

Weight RootSystem::reflect(const Weight& w, unsigned i) const {
  Weight out = w;
  for (unsigned j = 0; j < rank_; ++j) out[j] -= w[i] * cartan_[i][j];
  return out;
}

bool RootSystem::is_dominant(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](std::int64_t v) { return v >= 0; });
}

Weight RootSystem::dominant_conjugate(Weight w) const {
  for (bool moved = true; moved;) {
    moved = false;
    for (unsigned i = 0; i < rank_; ++i)
      if (w[i] < 0) {
        w = reflect(w, i);
        moved = true;
      }
  }
  return w;
}

std::optional<std::vector<std::int64_t>> RootSystem::root_lattice_coords(const Weight& w) const {
  std::vector<std::int64_t> c(rank_, 0);
  for (unsigned j = 0; j < rank_; ++j) {
    std::int64_t s = 0;
    for (unsigned i = 0; i < rank_; ++i) s += w[i] * inv_num_[i][j];
    if (s % det_ != 0) return std::nullopt;
    c[j] = s / det_;
  }
  return c;
}

std::uint64_t weyl_dim(const RootSystem& rs, const Weight& lambda) {
  require_dominant(lambda, rs.rank());
  const auto& C = rs.cartan();
  const auto& d = rs.half_lengths();
  arith::u128 num = 1, den = 1;
  for (const auto& c : rs.positive_roots_simple()) {
    // alpha^vee = sum c_i (d_i / d_alpha) alpha_i^vee, with d_alpha = (alpha, alpha) / 2
    std::int64_t len2 = 0;
    for (unsigned i = 0; i < rs.rank(); ++i)
      for (unsigned j = 0; j < rs.rank(); ++j) len2 += c[i] * c[j] * C[i][j] * d[j];
    const std::int64_t d_alpha = len2 / 2;
    std::int64_t top = 0, bottom = 0;
    for (unsigned i = 0; i < rs.rank(); ++i) {
      const std::int64_t coroot = c[i] * d[i] / d_alpha;
      top += (lambda[i] + 1) * coroot;
      bottom += coroot;
    }
    num *= static_cast<arith::u128>(top);
    den *= static_cast<arith::u128>(bottom);
    const std::uint64_t g = gcd128(num, den);
    num /= g;
    den /= g;
    if (num >> 100) throw Error(Errc::Overflow, "Weyl dimension too large");
  }
  if (den != 1) throw Error(Errc::NonIntegerResult, "Weyl dimension product is not integral");
  if (num > UINT64_MAX) throw Error(Errc::Overflow, "Weyl dimension too large");
  return static_cast<std::uint64_t>(num);
}

std::vector<std::pair<Weight, std::uint64_t>> dominant_multiplicities(const RootSystem& rs, const Weight& lambda) {
  if (weyl_dim(rs, lambda) > kMaxWeightDim) throw Error(Errc::TooLarge, "module dimension above the cap");
  struct Dom {
    Weight w;
    std::int64_t height;
    std::uint64_t mult = 0;
  };
  std::vector<Dom> doms{{lambda, 0, 1}};
  std::map<Weight, std::size_t> index{{lambda, 0}};
  const auto& roots = rs.positive_roots();
  const auto& roots_simple = rs.positive_roots_simple();
  for (std::size_t k = 0; k < doms.size(); ++k) {
    for (std::size_t a = 0; a < roots.size(); ++a) {
      Weight v = doms[k].w;
      for (unsigned i = 0; i < rs.rank(); ++i) v[i] -= roots[a][i];
      if (!RootSystem::is_dominant(v) || index.count(v)) continue;
      index.emplace(v, doms.size());
      doms.push_back({v, doms[k].height + height(roots_simple[a]), 0});
    }
  }
  std::vector<std::size_t> order(doms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return doms[a].height < doms[b].height; });

  const Weight rho = rs.rho();
  auto plus = [](Weight a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  const Weight lr = plus(lambda, rho);
  const std::int64_t top = rs.form(lr, lr);
  for (std::size_t idx : order) {
    Dom& mu = doms[idx];
    if (mu.height == 0) continue;
    std::int64_t sum = 0;
    for (const auto& alpha : roots) {
      Weight v = mu.w;
      for (;;) {
        v = plus(v, alpha);
        const auto it = index.find(rs.dominant_conjugate(v));
        if (it == index.end()) break;  // weight strings are unbroken
        sum += static_cast<std::int64_t>(doms[it->second].mult) * rs.form(v, alpha);
      }
    }
    const Weight mr = plus(mu.w, rho);
    const std::int64_t gap = top - rs.form(mr, mr);
    if (gap <= 0 || (2 * sum) % gap != 0) throw Error(Errc::NonIntegerResult, "Freudenthal quotient not integral");
    mu.mult = static_cast<std::uint64_t>(2 * sum / gap);
  }
  std::vector<std::pair<Weight, std::uint64_t>> out;
  for (std::size_t idx : order) out.emplace_back(doms[idx].w, doms[idx].mult);
  return out;
}

WeightMultiset weight_multiset(const RootSystem& rs, const Weight& lambda) {
  const std::uint64_t dim = weyl_dim(rs, lambda);
  std::map<Weight, std::uint64_t> all;
  for (const auto& [w, m] : dominant_multiplicities(rs, lambda)) {
    if (m == 0) continue;
    std::deque<Weight> queue{w};
    all[w] = m;
    while (!queue.empty()) {
      const Weight u = queue.front();
      queue.pop_front();
      for (unsigned i = 0; i < rs.rank(); ++i) {
        Weight v = rs.reflect(u, i);
        if (all.emplace(v, m).second) queue.push_back(std::move(v));
      }
    }
  }
  WeightMultiset out = from_map(all);
  if (out.total() != dim) throw Error(Errc::NonIntegerResult, "weight multiplicities do not add up to the Weyl dimension");
  return out;
}

std::uint64_t WeightMultiset::total() const {
  std::uint64_t s = 0;
  for (const auto& e : entries) s += e.second;
  return s;
}

std::uint64_t WeightMultiset::multiplicity(const Weight& w) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), w,
                                   [](const auto& e, const Weight& x) { return e.first < x; });
  return it != entries.end() && it->first == w ? it->second : 0;
}

bool multiset_contains(const WeightMultiset& sup, const WeightMultiset& sub) {
  return std::all_of(sub.entries.begin(), sub.entries.end(),
                     [&](const auto& e) { return sup.multiplicity(e.first) >= e.second; });
}

WeightMultiset scale_weights(const WeightMultiset& w, std::int64_t k) {
  std::map<Weight, std::uint64_t> m;
  for (const auto& [u, c] : w.entries) {
    Weight v = u;
    for (auto& x : v) x *= k;
    m[v] += c;
  }
  return from_map(m);
}

WeightMultiset tensor_weights(const WeightMultiset& a, const WeightMultiset& b) {
  std::map<Weight, std::uint64_t> m;
  for (const auto& [u, c] : a.entries)
    for (const auto& [v, e] : b.entries) {
      Weight s = u;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i];
      m[s] += c * e;
    }
  return from_map(m);
}

Poly torus_char_poly(const WeightMultiset& w, const std::vector<FieldElem>& t, const FieldCtx& F) {
  std::vector<FieldElem> tinv;
  for (FieldElem x : t) {
    if (F.is_zero(x)) throw Error(Errc::ZeroTorusValue, "torus coordinates must be nonzero");
    tinv.push_back(F.inv(x));
  }
  std::map<FieldElem, std::uint64_t> roots;
  for (const auto& [mu, m] : w.entries) {
    if (mu.size() != t.size()) throw Error(Errc::InvalidArgument, "torus element has the wrong rank");
    FieldElem v = F.one();
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const auto e = static_cast<std::uint64_t>(mu[i] < 0 ? -mu[i] : mu[i]);
      v = F.mul(v, F.pow(mu[i] < 0 ? tinv[i] : t[i], e));
    }
    roots[v] += m;
  }
  Poly out = poly::constant(F, F.one());
  for (const auto& [v, m] : roots) out = poly::mul(F, out, poly::pow(F, poly::linear(F, v), m));
  return out;
}

std::vector<std::vector<FieldElem>> torus_samples(const FieldCtx& F, unsigned rank, std::size_t count,
                                                  std::uint64_t seed) {
  SeedStream rng(seed);
  std::vector<std::vector<FieldElem>> out(count);
  for (auto& t : out)
    for (unsigned i = 0; i < rank; ++i) t.push_back(F.element(1 + rng.below(F.order() - 1)));
  return out;
}

std::string_view check_verdict_name(CheckVerdict v) noexcept {
  switch (v) {
    case CheckVerdict::Holds: return "holds";
    case CheckVerdict::Fails: return "fails";
    case CheckVerdict::NotApplicable: return "not_applicable";
    case CheckVerdict::Unresolved: return "unresolved";
  }
  return "?";
}

namespace {

void run_samples(DivisibilityReport& rep, const WeightMultiset& small, const WeightMultiset& big, const FieldCtx& F,
                 const std::vector<std::vector<FieldElem>>& samples) {
  rep.samples = samples.size();
  for (const auto& t : samples)
    if (poly_divides(F, torus_char_poly(small, t, F), torus_char_poly(big, t, F))) ++rep.samples_dividing;
}

} // namespace

DivisibilityReport check_twist_divisibility(const RootSystem& rs, const Weight& lambda0, const Weight& lambda1,
                                            std::uint64_t p, const FieldCtx& F,
                                            const std::vector<std::vector<FieldElem>>& samples) {
  if (F.p() != p) throw Error(Errc::InvalidArgument, "field characteristic must equal the twist prime");
  const WeightMultiset w0 = weight_multiset(rs, lambda0);
  const WeightMultiset w1 = weight_multiset(rs, lambda1);
  DivisibilityReport rep;
  if (w0.multiplicity(Weight(rs.rank(), 0)) == 0) {
    rep.verdict = CheckVerdict::NotApplicable;
    rep.note = "0 is not a weight of the untwisted factor";
    return rep;
  }
  const WeightMultiset twist = scale_weights(w1, static_cast<std::int64_t>(p));
  const WeightMultiset tensor = tensor_weights(w0, twist);
  rep.containment = multiset_contains(tensor, twist);
  run_samples(rep, twist, tensor, F, samples);
  rep.verdict = rep.containment && rep.samples_dividing == rep.samples ? CheckVerdict::Holds : CheckVerdict::Fails;
  rep.note = "torus samples only";
  return rep;
}

DivisibilityReport check_sym_divisibility(unsigned n, unsigned s, const FieldCtx& F,
                                          const std::vector<std::vector<FieldElem>>& samples) {
  if (n < 2 || n > 5) throw Error(Errc::InvalidArgument, "need 2 <= n <= 5");
  if (F.p() <= s + n)
    throw Error(Errc::HypothesisViolated, "characteristic " + std::to_string(F.p()) + " <= s + n = " + std::to_string(s + n));
  const RootSystem rs = RootSystem::make(RootType::A, n - 1);
  const unsigned r = n - 1;
  // epsilon_1 = omega_1, epsilon_i = omega_i - omega_{i-1}, epsilon_n = -omega_{n-1}
  std::vector<Weight> eps(n, Weight(r, 0));
  for (unsigned i = 0; i < n; ++i) {
    if (i < r) eps[i][i] += 1;
    if (i > 0) eps[i][i - 1] -= 1;
  }
  auto monomial_weights = [&](unsigned deg) {
    std::map<Weight, std::uint64_t> m;
    std::vector<unsigned> e(n, 0);
    // enumerate exponent vectors of total degree deg
    auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
      if (i + 1 == n) {
        e[i] = left;
        Weight w(r, 0);
        for (unsigned k = 0; k < n; ++k)
          for (unsigned j = 0; j < r; ++j) w[j] += static_cast<std::int64_t>(e[k]) * eps[k][j];
        ++m[w];
        return;
      }
      for (unsigned v = 0; v <= left; ++v) {
        e[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, deg);
    return from_map(m);
  };
  Weight ls(r, 0), lb(r, 0);
  ls[0] = s;
  lb[0] = s + n;
  const WeightMultiset small = weight_multiset(rs, ls);
  const WeightMultiset big = weight_multiset(rs, lb);
  DivisibilityReport rep;
  // multiplying a monomial by t_1 ... t_n keeps its weight, so the monomial
  // multisets nest; the Freudenthal multisets must agree with them
  rep.containment = small == monomial_weights(s) && big == monomial_weights(s + n) && multiset_contains(big, small);
  run_samples(rep, small, big, F, samples);
  rep.verdict = rep.containment && rep.samples_dividing == rep.samples ? CheckVerdict::Holds : CheckVerdict::Fails;
  rep.note = "torus samples only";
  return rep;
}

DivisibilityReport check_cartan_mult(const RootSystem& rs, const Weight& lambda, const Weight& mu, const FieldCtx& F,
                                     const std::vector<std::vector<FieldElem>>& samples) {
  if (mu.size() != rs.rank() || !rs.root_lattice_coords(mu))
    throw Error(Errc::InvalidArgument, "mu must lie in the root lattice");
  Weight sum = lambda;
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += mu[i];
  require_dominant(lambda, rs.rank());
  require_dominant(sum, rs.rank());
  const WeightMultiset small = weight_multiset(rs, lambda);
  const WeightMultiset big = weight_multiset(rs, sum);
  DivisibilityReport rep;
  rep.containment = multiset_contains(big, small);
  run_samples(rep, small, big, F, samples);
  if (!rep.containment) {
    rep.verdict = CheckVerdict::Unresolved;
    rep.note = "weight multisets are not nested";
  } else {
    rep.verdict = rep.samples_dividing == rep.samples ? CheckVerdict::Holds : CheckVerdict::Fails;
    rep.note = "torus samples only";
  }
  return rep;
}

Sl2EigenReport sl2_distinct_eigenvalues(std::uint64_t q, unsigned s) {
  const auto [p, k] = arith::prime_power(q);
  if (p == 0 || p == 2 || q > 10'000) throw Error(Errc::InvalidArgument, "q must be an odd prime power <= 10^4");
  if (s > p - 1) throw Error(Errc::NotRestricted, "s must be at most p - 1");
  const FieldCtx F = make_field(p, 2 * k);
  const FieldElem zeta = F.pow(F.primitive_element(), q - 1);  // order q + 1
  Sl2EigenReport rep;
  rep.q = q;
  rep.s = s;
  std::map<FieldElem, std::int64_t> seen;
  for (std::int64_t w = s; w >= -static_cast<std::int64_t>(s); w -= 2) {
    const FieldElem v = w < 0 ? F.inv(F.pow(zeta, static_cast<std::uint64_t>(-w))) : F.pow(zeta, static_cast<std::uint64_t>(w));
    const auto [it, fresh] = seen.emplace(v, w);
    if (!fresh && !rep.collision) rep.collision = std::make_pair(it->second, w);
  }
  rep.distinct = !rep.collision;
  rep.predicted_distinct = 2 * (s + 1) - 2 < q + 1;
  return rep;
}

} // namespace fixspace
