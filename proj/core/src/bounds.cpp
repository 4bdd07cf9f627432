#include "fixspace/bounds.hpp"

#include <algorithm>
#include <thread>

#include "fixspace/arith.hpp"
#include "fixspace/error.hpp"
#include "fixspace/ff.hpp"
#include "fixspace/library.hpp"

namespace fixspace {

namespace {

// fn(i) for i < count, striped over workers; results land by index.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  const unsigned W = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (W == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < W; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += W) fn(i);
    });
  for (auto& t : pool) t.join();
}

// Largest multiplicity in the squarefree decomposition: the largest
// eigenspace over the algebraic closure when the image is semisimple.
std::size_t max_eigenspace(const MatRep& R, const Perm& g) {
  std::size_t best = 0;
  for (const auto& part : squarefree_decomposition(R.field(), char_poly(R, g)))
    best = std::max<std::size_t>(best, part.multiplicity);
  return best;
}

bool better(const ClassFixDim& a, const ClassFixDim& b) {
  if (a.fixdim != b.fixdim) return a.fixdim < b.fixdim;
  if (a.order != b.order) return a.order < b.order;
  return a.cls < b.cls;
}

} // namespace

bool acts_semisimply(const MatRep& R, const Perm& g) {
  const std::uint64_t p = R.field().p();
  std::uint64_t m = element_order(g);
  while (m % p == 0) m /= p;
  return mat::is_identity(R.field(), R.image(g.pow(static_cast<std::int64_t>(m))));
}

MinFixDim min_semisimple_fixdim(const MatRep& R, const ConjugacyClasses& classes, unsigned workers) {
  const std::size_t k = classes.size();
  std::vector<char> keep(k, 0), kernel(k, 0);
  std::vector<ClassFixDim> rows(k);
  parallel_for(k, workers, [&](std::size_t i) {
    if (i == classes.identity_class()) return;
    const Perm& g = classes[i].rep;
    if (mat::is_identity(R.field(), R.image(g))) {
      kernel[i] = 1;
      return;
    }
    if (!acts_semisimply(R, g)) return;
    keep[i] = 1;
    rows[i] = {i, classes[i].element_order, fixed_space_dim(R, g)};
  });
  MinFixDim out;
  out.dim = R.dim();
  for (std::size_t i = 0; i < k; ++i) {
    out.kernel_classes += kernel[i];
    if (!keep[i]) continue;
    out.per_class.push_back(rows[i]);
    if (!out.witness || better(rows[i], *out.witness)) out.witness = rows[i];
  }
  if (out.witness) out.dim = out.witness->fixdim;
  return out;
}

MinFixDim min_semisimple_fixdim(const MatRep& R, unsigned workers) {
  return min_semisimple_fixdim(R, conjugacy_classes(R.group()), workers);
}

bool Threshold::admits(std::size_t value, std::size_t n) const {
  const auto lhs = static_cast<std::uint64_t>(value) * den;
  const auto rhs = static_cast<std::uint64_t>(n) * num;
  return strict ? lhs < rhs : lhs <= rhs;
}

std::string Threshold::text() const {
  return std::string(strict ? "< " : "<= ") + std::to_string(num) + "/" + std::to_string(den) + " n";
}

bool BoundReport::all_satisfied() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const ClauseResult& c) { return !c.applicable || c.satisfied; });
}

BoundReport check_bound_theorems(const MatRep& R, const ConjugacyClasses& classes, unsigned workers) {
  if (!is_irreducible(R).irreducible)
    throw Error(Errc::NotIrreducible, "bound clauses need an irreducible module: " + R.label());
  BoundReport rep;
  rep.module = R.label();
  rep.n = R.dim();
  rep.p = R.field().p();
  rep.group_order = R.group().order();
  rep.min = min_semisimple_fixdim(R, classes, workers);

  const std::size_t n = rep.n;
  const std::uint64_t p = rep.p;
  // the identity is semisimple with fixed dim n; it is the witness only when
  // nothing else qualifies
  const std::size_t m = rep.min.dim;
  auto clause = [&](std::string id, bool applicable, Threshold t) {
    ClauseResult c;
    c.id = std::move(id);
    c.applicable = applicable;
    c.bound = t;
    c.witness = rep.min.witness;
    c.satisfied = applicable && t.admits(m, n);
    rep.clauses.push_back(std::move(c));
  };
  const bool n_prime = arith::is_prime(n);
  clause("half", true, {1, 2, true});
  clause("coprime", rep.group_order % p != 0, {1, 3, false});
  clause("large_p", p > n + 2, {1, 3, false});
  clause("p_nmid_n", n % p != 0, {3, 8, false});
  clause("two_primitive", n_prime && n > 2 && arith::multiplicative_order(2, n) == n - 1, {1, 3, false});

  ClauseResult eig_clause;
  eig_clause.id = "eigenspace";
  eig_clause.applicable = n_prime && n % 2 == 1 && p > 2 * n - 3;
  eig_clause.bound = {1, 1, false};  // every eigenspace of dimension <= 1
  if (eig_clause.applicable) {
    const std::size_t k = classes.size();
    std::vector<std::size_t> eig(k, n + 1);
    parallel_for(k, workers, [&](std::size_t i) {
      if (i == classes.identity_class() || classes[i].element_order % p == 0) return;
      eig[i] = max_eigenspace(R, classes[i].rep);
    });
    for (std::size_t i = 0; i < k; ++i) {
      if (eig[i] > n) continue;
      ClassFixDim c{i, classes[i].element_order, eig[i]};
      if (!eig_clause.witness || better(c, *eig_clause.witness)) eig_clause.witness = c;
    }
    eig_clause.satisfied = eig_clause.witness && eig_clause.witness->fixdim <= 1;
  }
  rep.clauses.push_back(std::move(eig_clause));
  return rep;
}

BoundReport check_bound_theorems(const MatRep& R, unsigned workers) {
  return check_bound_theorems(R, conjugacy_classes(R.group()), workers);
}

ScottRecord scott_check(const MatRep& R, const Perm& x, const Perm& y) {
  ScottRecord s;
  const Perm z = (x * y).inverse();
  s.dx = fixed_space_dim(R, x);
  s.dy = fixed_space_dim(R, y);
  s.dz = fixed_space_dim(R, z);
  s.lhs = s.dx + s.dy + s.dz;
  s.fix_h = module_fixed_dim(R, {x, y});
  s.fix_h_dual = module_fixed_dim(R, {x, y}, true);
  s.rhs = R.dim() + s.fix_h + s.fix_h_dual;
  s.holds = s.lhs <= s.rhs;
  return s;
}

std::vector<MatRep> composition_factors(const MatRep& R, std::uint64_t seed) {
  const auto res = is_irreducible(R, seed);
  if (res.irreducible) return {R};
  auto out = composition_factors(submodule_rep(R, res.submodule), seed + 1);
  for (auto& f : composition_factors(quotient_rep(R, res.submodule), seed + 2)) out.push_back(std::move(f));
  return out;
}

AdjointReport sl_p_adjoint_check(std::uint64_t p, GroupLibrary& lib) {
  if (p != 3) throw Error(Errc::InvalidArgument, "only SL3(3) is available");
  const MatRep W = build_rep(parse_module_spec("(tensor (explicit SL3_3) (dual (explicit SL3_3)))"), lib);
  AdjointReport rep;
  rep.p = p;
  rep.dim_w = W.dim();
  const auto factors = composition_factors(W);
  std::size_t big = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    rep.factor_dims.push_back(factors[i].dim());
    if (factors[i].dim() > factors[big].dim()) big = i;
  }
  const MatRep& V = factors[big];
  rep.dim_v = V.dim();
  rep.section_irreducible = is_irreducible(V, 17).irreducible;

  const ConjugacyClasses classes = conjugacy_classes(W.group());
  rep.min_fix_v = rep.dim_v;
  rep.min_fix_w = rep.dim_w;
  rep.holds = rep.section_irreducible && rep.dim_v == p * p - 2;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i == classes.identity_class() || classes[i].element_order % p == 0) continue;
    AdjointRow row{i, classes[i].element_order, fixed_space_dim(W, classes[i].rep),
                   fixed_space_dim(V, classes[i].rep)};
    rep.min_fix_v = std::min(rep.min_fix_v, row.fix_v);
    rep.min_fix_w = std::min(rep.min_fix_w, row.fix_w);
    rep.holds = rep.holds && row.fix_w >= p && row.fix_v + 2 >= p;
    rep.rows.push_back(row);
  }
  return rep;
}

MersenneReport mersenne_check(unsigned a, GroupLibrary& lib) {
  if (a < 2 || a > 5 || !arith::is_prime((1ULL << a) - 1))
    throw Error(Errc::InvalidArgument, "2^a - 1 must be a prime with 2 <= a <= 5");
  MersenneReport rep;
  rep.a = a;
  rep.p = (1ULL << a) - 1;
  const std::string q = std::to_string(1ULL << a);
  const MatRep R = build_rep(
      parse_module_spec("(deleted (perm AGL1_" + q + ") :field (gf " + std::to_string(rep.p) + "))"), lib);
  rep.n = R.dim();
  rep.irreducible = is_irreducible(R).irreducible;
  const MinFixDim m = min_semisimple_fixdim(R);
  rep.per_class = m.per_class;
  rep.sharp = rep.irreducible && !m.per_class.empty() &&
              std::all_of(m.per_class.begin(), m.per_class.end(),
                          [&](const ClassFixDim& c) { return c.fixdim == (rep.p - 1) / 2; });
  return rep;
}

std::optional<std::size_t> free_cyclic_class(const MatRep& R, const ConjugacyClasses& classes, std::uint64_t r) {
  if (R.dim() != r || r % R.field().p() == 0) return std::nullopt;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].element_order != r) continue;
    if (max_eigenspace(R, classes[i].rep) == 1) return i;
  }
  return std::nullopt;
}

const std::vector<CatalogEntry>& bound_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> c;
    const std::pair<const char*, unsigned> perm_groups[] = {{"A4", 4}, {"A5", 5}, {"A6", 6}, {"A7", 7}, {"A8", 8},
                                                            {"A9", 9}, {"S3", 3}, {"S4", 4}, {"S5", 5}, {"S6", 6}};
    for (const auto& [g, deg] : perm_groups) {
      for (unsigned q : {2U, 3U, 5U, 7U, 11U, 13U}) {
        if (deg % q == 0) continue;
        c.push_back({std::string("deleted-") + g + "-gf" + std::to_string(q),
                     std::string("(deleted (perm ") + g + ") :field (gf " + std::to_string(q) + "))"});
      }
    }
    c.push_back({"mersenne-2", "(deleted (perm AGL1_4) :field (gf 3))"});
    c.push_back({"mersenne-3", "(deleted (perm AGL1_8) :field (gf 7))"});
    for (const char* g : {"SL2_5", "SL2_7"}) {
      c.push_back({std::string(g) + "-natural", std::string("(explicit ") + g + ")"});
      for (unsigned s = 2; s <= 4; ++s)
        c.push_back({std::string(g) + "-sym" + std::to_string(s),
                     "(sym " + std::to_string(s) + " (explicit " + g + "))"});
    }
    c.push_back({"SL3_3-natural", "(explicit SL3_3)"});
    c.push_back({"SL3_3-adjoint7",
                 "(section (section (tensor (explicit SL3_3) (dual (explicit SL3_3))) :mode sub :basis cofixed)"
                 " :mode quotient :basis fixed)"});
    c.push_back({"Ex3_7-natural", "(explicit Ex3_7)"});
    return c;
  }();
  return catalog;
}

} // namespace fixspace
