#include "fixspace/chartab.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "fixspace/arith.hpp"
#include "fixspace/error.hpp"
#include "fixspace/ff.hpp"
#include "fixspace/linalg.hpp"

namespace fixspace {

using arith::i128;

// ---------------------------------------------------------------------------
// Class algebra

ClassAlgebra class_algebra(const PermGroup& G) {
  return class_algebra(std::make_shared<const ConjugacyClasses>(conjugacy_classes(G)));
}

ClassAlgebra class_algebra(std::shared_ptr<const ConjugacyClasses> classes) {
  ClassAlgebra out;
  const ConjugacyClasses& cc = *classes;
  const std::size_t r = cc.size();
  out.r = r;
  out.a.assign(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    const Perm& z = cc[k].rep;
    for (std::size_t i = 0; i < r; ++i) {
      for (const Perm& x : cc[i].members) {
        const std::size_t j = cc.class_of(x.inverse() * z);
        ++out.a[(i * r + j) * r + k];
      }
    }
  }
  out.classes = std::move(classes);
  return out;
}

// ---------------------------------------------------------------------------
// Cyclotomic integers

namespace cyclo {

namespace {

// Exact quotient of integer polynomials by a monic divisor.
std::vector<std::int64_t> exact_div(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<std::int64_t> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::int64_t c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t t = 0; t <= db; ++t) a[i - db + t] -= c * b[t];
  }
  return q;
}

void reduce_by(std::vector<std::int64_t>& a, const std::vector<std::int64_t>& m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::int64_t c = a[i];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= dm; ++t) a[i - dm + t] -= c * m[t];
  }
  a.resize(std::min(a.size(), dm));
  a.resize(dm, 0);
}

Cyclo normalize(std::vector<std::pair<std::uint32_t, std::int64_t>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Cyclo out;
  for (const auto& [e, c] : terms) {
    if (!out.empty() && out.back().first == e) {
      out.back().second += c;
    } else {
      out.emplace_back(e, c);
    }
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  return out;
}

} // namespace

std::vector<std::int64_t> cyclotomic_poly(std::uint64_t e) {
  static std::map<std::uint64_t, std::vector<std::int64_t>> memo;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(e); it != memo.end()) return it->second;
  }
  std::vector<std::int64_t> f(e + 1, 0);
  f[0] = -1;
  f[e] = 1;
  for (std::uint64_t d = 1; d < e; ++d) {
    if (e % d == 0) f = exact_div(f, cyclotomic_poly(d));
  }
  std::lock_guard lock(mu);
  memo.emplace(e, f);
  return f;
}

std::vector<std::int64_t> canonical(const Cyclo& a, std::uint64_t e) {
  std::vector<std::int64_t> dense(e, 0);
  for (const auto& [j, c] : a) dense[j % e] += c;
  reduce_by(dense, cyclotomic_poly(e));
  return dense;
}

Cyclo add(const Cyclo& a, const Cyclo& b) {
  std::vector<std::pair<std::uint32_t, std::int64_t>> t(a.begin(), a.end());
  t.insert(t.end(), b.begin(), b.end());
  return normalize(std::move(t));
}

Cyclo mul(const Cyclo& a, const Cyclo& b, std::uint64_t e) {
  std::vector<std::pair<std::uint32_t, std::int64_t>> t;
  t.reserve(a.size() * b.size());
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) t.emplace_back(static_cast<std::uint32_t>((i + j) % e), x * y);
  return normalize(std::move(t));
}

Cyclo scale(const Cyclo& a, std::int64_t s) {
  if (s == 0) return {};
  Cyclo out = a;
  for (auto& term : out) term.second *= s;
  return out;
}

Cyclo conj(const Cyclo& a, std::uint64_t e) {
  std::vector<std::pair<std::uint32_t, std::int64_t>> t;
  for (const auto& [j, c] : a) t.emplace_back(static_cast<std::uint32_t>((e - j) % e), c);
  return normalize(std::move(t));
}

Cyclo integer(std::int64_t v) {
  if (v == 0) return {};
  return {{0U, v}};
}

bool as_integer(const Cyclo& a, std::uint64_t e, std::int64_t& out) {
  const auto c = canonical(a, e);
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  out = c.empty() ? 0 : c[0];
  return true;
}

std::uint64_t reduce_mod(const Cyclo& a, std::uint64_t ell, std::uint64_t root, std::uint64_t e) {
  std::uint64_t acc = 0;
  for (const auto& [j, c] : a) {
    const std::uint64_t z = arith::powmod(root, j % e, ell);
    const std::int64_t cm = c % static_cast<std::int64_t>(ell);
    const std::uint64_t cu = static_cast<std::uint64_t>(cm < 0 ? cm + static_cast<std::int64_t>(ell) : cm);
    acc = (acc + arith::mulmod(cu, z, ell)) % ell;
  }
  return acc;
}

std::string to_string(const Cyclo& a, std::uint64_t e) {
  std::int64_t v = 0;
  if (as_integer(a, e, v)) return std::to_string(v);
  std::string s;
  for (const auto& [j, c] : a) {
    if (!s.empty() && c > 0) s += '+';
    if (c == -1) {
      s += '-';
    } else if (c != 1) {
      s += std::to_string(c) + '*';
    }
    s += j == 0 ? std::string("1") : "z^" + std::to_string(j);
  }
  return s;
}

} // namespace cyclo

// ---------------------------------------------------------------------------
// Dixon

namespace {

std::uint64_t group_exponent(const ConjugacyClasses& cc) {
  std::uint64_t e = 1;
  for (const auto& c : cc.classes()) e = arith::lcm(e, c.element_order);
  return e;
}

// Smallest prime ell = 1 (mod e) with ell > 2 |G|^{3/2}, i.e. ell^2 > 4 |G|^3.
std::uint64_t choose_modulus(std::uint64_t order, std::uint64_t e) {
  const i128 bound = static_cast<i128>(4) * order * order * order;
  const double approx = 2.0 * std::pow(static_cast<double>(order), 1.5);
  std::uint64_t t = static_cast<std::uint64_t>(approx * 0.999 / static_cast<double>(e));
  for (;; ++t) {
    const std::uint64_t ell = e * t + 1;
    if (static_cast<i128>(ell) * ell > bound && arith::is_prime(ell)) return ell;
  }
}

// Decreasing lexicographic comparison of dense coefficient sequences.
int compare_dense(const Cyclo& a, const Cyclo& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const std::uint32_t ea = i < a.size() ? a[i].first : UINT32_MAX;
    const std::uint32_t eb = j < b.size() ? b[j].first : UINT32_MAX;
    const std::uint32_t at = std::min(ea, eb);
    const std::int64_t ca = ea == at ? a[i].second : 0;
    const std::int64_t cb = eb == at ? b[j].second : 0;
    if (ca != cb) return ca < cb ? -1 : 1;
    if (ea == at) ++i;
    if (eb == at) ++j;
  }
  return 0;
}

[[noreturn]] void lift_failure(const std::string& what) { throw Error(Errc::LiftFailure, what); }

} // namespace

CharTable character_table(const PermGroup& G) { return character_table(G, conjugacy_classes(G)); }

CharTable character_table(const PermGroup& G, const ConjugacyClasses& cc) {
  const std::size_t r = cc.size();
  if (r > kMaxTableClasses) {
    throw Error(Errc::GroupTooLarge, std::to_string(r) + " classes exceed the table limit");
  }
  const std::uint64_t order = G.order();

  CharTable T;
  T.group_name = G.name();
  T.group_order = order;
  T.exponent = group_exponent(cc);
  T.ell = choose_modulus(order, T.exponent);
  T.root = arith::powmod(arith::primitive_root(T.ell), (T.ell - 1) / T.exponent, T.ell);
  for (std::size_t k = 0; k < r; ++k) {
    T.class_sizes.push_back(cc[k].size);
    T.class_orders.push_back(cc[k].element_order);
    T.inverse_class.push_back(cc.inverse_class(k));
    T.class_reps.push_back(cc[k].rep.to_cycle_string());
  }

  // Structure constants without the shared_ptr copy of the classes.
  std::vector<std::uint64_t> a(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    const Perm& z = cc[k].rep;
    for (std::size_t i = 0; i < r; ++i)
      for (const Perm& x : cc[i].members) ++a[(i * r + cc.class_of(x.inverse() * z)) * r + k];
  }

  const FieldCtx F = make_field(T.ell);
  const std::uint64_t ell = T.ell;

  // Central characters w satisfy w B_i = w_i w with B_i(k, j) = a_{ijk}.
  std::vector<Subspace> spaces;
  {
    Subspace all(F, r);
    for (std::size_t k = 0; k < r; ++k) {
      Vec v(r);
      v[k] = F.one();
      all.add(std::move(v));
    }
    spaces.push_back(std::move(all));
  }
  for (std::size_t i = 1; i < r && spaces.size() < r; ++i) {
    Matrix B(r, r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) B(k, j) = F.from_int(static_cast<std::int64_t>(a[(i * r + j) * r + k]));
    std::vector<Subspace> next;
    for (auto& S : spaces) {
      const std::size_t d = S.dim();
      if (d == 1) {
        next.push_back(std::move(S));
        continue;
      }
      Matrix R(d, d);
      for (std::size_t s = 0; s < d; ++s) {
        const Vec img = mat::vec_mul(F, S.basis()[s], B);
        if (!S.contains(img)) lift_failure("class matrix does not preserve an eigenspace");
        const Vec c = S.coordinates(img);
        for (std::size_t t = 0; t < d; ++t) R(s, t) = c[t];
      }
      const auto rts = poly::roots(F, mat::char_poly(F, R));
      if (rts.size() == 1) {
        next.push_back(std::move(S));
        continue;
      }
      std::size_t covered = 0;
      for (const FieldElem lam : rts) {
        Matrix Rl = R;
        for (std::size_t s = 0; s < d; ++s) Rl(s, s) = F.sub(Rl(s, s), lam);
        Subspace E(F, r);
        for (const Vec& u : mat::left_nullspace(F, Rl)) {
          Vec v(r);
          for (std::size_t s = 0; s < d; ++s) {
            if (F.is_zero(u[s])) continue;
            for (std::size_t k = 0; k < r; ++k) v[k] = F.add(v[k], F.mul(u[s], S.basis()[s][k]));
          }
          E.add(std::move(v));
        }
        covered += E.dim();
        next.push_back(std::move(E));
      }
      if (covered != d) lift_failure("class matrix not split over GF(" + std::to_string(ell) + ")");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) lift_failure("eigenspaces did not separate");

  // power classes for the lift
  std::vector<std::vector<std::size_t>> pc(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::uint64_t o = cc[k].element_order;
    Perm g = Perm::identity(G.degree());
    for (std::uint64_t t = 0; t < o; ++t) {
      pc[k].push_back(cc.class_of(g));
      g = g * cc[k].rep;
    }
  }

  struct Row {
    std::uint64_t degree;
    std::vector<std::uint64_t> mod;
    std::vector<Cyclo> val;
  };
  std::vector<Row> rows;
  std::uint64_t sum_sq = 0;
  for (const auto& S : spaces) {
    Vec w = S.basis()[0];
    if (F.is_zero(w[0])) lift_failure("central character vanishes at the identity");
    const FieldElem inv0 = F.inv(w[0]);
    for (auto& x : w) x = F.mul(x, inv0);

    FieldElem s = F.zero();
    for (std::size_t k = 0; k < r; ++k) {
      s = F.add(s, F.div(F.mul(w[k], w[cc.inverse_class(k)]), F.from_int(static_cast<std::int64_t>(cc[k].size))));
    }
    if (F.is_zero(s)) lift_failure("degree equation degenerate");
    const FieldElem d2 = F.div(F.from_int(static_cast<std::int64_t>(order % ell)), s);
    std::uint64_t deg = 0;
    for (std::uint64_t d = 1; d * d <= order; ++d) {
      if (order % d == 0 && F.mul(F.from_int(static_cast<std::int64_t>(d)), F.from_int(static_cast<std::int64_t>(d))) == d2) {
        deg = d;
        break;
      }
    }
    if (deg == 0) lift_failure("no admissible degree");

    Row row;
    row.degree = deg;
    for (std::size_t k = 0; k < r; ++k) {
      row.mod.push_back(F.div(F.mul(w[k], F.from_int(static_cast<std::int64_t>(deg))),
                              F.from_int(static_cast<std::int64_t>(cc[k].size))).code);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const std::uint64_t o = cc[k].element_order;
      const std::uint64_t step = T.exponent / o;
      const std::uint64_t zo = arith::powmod(T.root, step, ell);
      const std::uint64_t zo_inv = arith::powmod(zo, o - 1, ell);
      const std::uint64_t o_inv = arith::powmod(o % ell, ell - 2, ell);
      std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
      std::uint64_t total = 0;
      for (std::uint64_t j = 0; j < o; ++j) {
        const std::uint64_t base = arith::powmod(zo_inv, j, ell);
        std::uint64_t acc = 0, zt = 1;
        for (std::uint64_t t = 0; t < o; ++t) {
          acc = (acc + arith::mulmod(row.mod[pc[k][t]], zt, ell)) % ell;
          zt = arith::mulmod(zt, base, ell);
        }
        const std::uint64_t m = arith::mulmod(acc, o_inv, ell);
        if (m > deg) lift_failure("eigenvalue multiplicity out of range");
        total += m;
        if (m != 0) terms.emplace_back(static_cast<std::uint32_t>(j * step), static_cast<std::int64_t>(m));
      }
      if (total != deg) lift_failure("eigenvalue multiplicities do not sum to the degree");
      Cyclo v(terms.begin(), terms.end());
      if (cyclo::reduce_mod(v, ell, T.root, T.exponent) != row.mod[k]) lift_failure("lift does not reduce back");
      row.val.push_back(std::move(v));
    }
    sum_sq += deg * deg;
    rows.push_back(std::move(row));
  }
  if (sum_sq != order) lift_failure("degrees squared do not sum to |G|");

  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    for (std::size_t k = 0; k < x.val.size(); ++k) {
      const int c = compare_dense(x.val[k], y.val[k]);
      if (c != 0) return c > 0;
    }
    return false;
  });
  for (auto& row : rows) {
    T.degrees.push_back(row.degree);
    T.values_mod.push_back(std::move(row.mod));
    T.values.push_back(std::move(row.val));
  }
  return T;
}

std::uint64_t triple_count(const CharTable& T, std::size_t c1, std::size_t c2, std::size_t c3) {
  const std::size_t r = T.num_classes();
  if (c1 >= r || c2 >= r || c3 >= r) throw Error(Errc::InvalidArgument, "class index out of range");
  Cyclo sum;
  for (std::size_t x = 0; x < T.num_characters(); ++x) {
    const Cyclo p = cyclo::mul(cyclo::mul(T.values[x][c1], T.values[x][c2], T.exponent), T.values[x][c3], T.exponent);
    sum = cyclo::add(sum, cyclo::scale(p, static_cast<std::int64_t>(T.group_order / T.degrees[x])));
  }
  std::int64_t t = 0;
  if (!cyclo::as_integer(sum, T.exponent, t)) {
    throw Error(Errc::NonIntegerResult, "character sum is not rational");
  }
  const i128 num = static_cast<i128>(T.class_sizes[c1]) * T.class_sizes[c2] * T.class_sizes[c3] * t;
  const i128 den = static_cast<i128>(T.group_order) * T.group_order;
  if (num < 0 || num % den != 0) throw Error(Errc::NonIntegerResult, "triple count is not a nonnegative integer");
  return static_cast<std::uint64_t>(num / den);
}

std::int64_t column_inner_product(const CharTable& T, std::size_t c, std::size_t c2) {
  Cyclo sum;
  for (std::size_t x = 0; x < T.num_characters(); ++x) {
    sum = cyclo::add(sum, cyclo::mul(T.values[x][c], cyclo::conj(T.values[x][c2], T.exponent), T.exponent));
  }
  std::int64_t v = 0;
  if (!cyclo::as_integer(sum, T.exponent, v)) throw Error(Errc::NonIntegerResult, "column product");
  return v;
}

std::int64_t row_inner_product(const CharTable& T, std::size_t i, std::size_t j) {
  Cyclo sum;
  for (std::size_t k = 0; k < T.num_classes(); ++k) {
    const Cyclo p = cyclo::mul(T.values[i][k], cyclo::conj(T.values[j][k], T.exponent), T.exponent);
    sum = cyclo::add(sum, cyclo::scale(p, static_cast<std::int64_t>(T.class_sizes[k])));
  }
  std::int64_t v = 0;
  if (!cyclo::as_integer(sum, T.exponent, v)) throw Error(Errc::NonIntegerResult, "row product");
  return v;
}

// ---------------------------------------------------------------------------
// Cache

std::string format_table(const CharTable& T) {
  std::ostringstream os;
  os << "chartab 1\n";
  os << "group " << (T.group_name.empty() ? "-" : T.group_name) << "\n";
  os << "order " << T.group_order << "\n";
  os << "exponent " << T.exponent << "\n";
  os << "ell " << T.ell << "\n";
  os << "root " << T.root << "\n";
  os << "classes " << T.num_classes() << "\n";
  for (std::size_t k = 0; k < T.num_classes(); ++k) {
    os << "class " << k << " size " << T.class_sizes[k] << " order " << T.class_orders[k] << " inverse "
       << T.inverse_class[k] << " rep " << T.class_reps[k] << "\n";
  }
  os << "characters " << T.num_characters() << "\n";
  for (std::size_t x = 0; x < T.num_characters(); ++x) {
    os << "char " << x << " degree " << T.degrees[x] << "\n";
    for (std::size_t k = 0; k < T.num_classes(); ++k) {
      os << "v " << k << " " << T.values_mod[x][k];
      for (const auto& [j, c] : T.values[x][k]) os << " " << j << ":" << c;
      os << "\n";
    }
  }
  os << "end\n";
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::Parse, "table cache: " + what); }

void expect_word(std::istream& in, const char* word) {
  std::string w;
  if (!(in >> w) || w != word) parse_fail(std::string("expected '") + word + "'");
}

template <class T>
T read_value(std::istream& in) {
  T v{};
  if (!(in >> v)) parse_fail("bad number");
  return v;
}

} // namespace

CharTable parse_table(std::string_view text) {
  std::istringstream all{std::string(text)};
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(all, line)) parse_fail("truncated");
    return std::istringstream(line);
  };
  CharTable T;
  {
    auto in = next_line();
    expect_word(in, "chartab");
    if (read_value<int>(in) != 1) parse_fail("unknown version");
  }
  {
    auto in = next_line();
    expect_word(in, "group");
    in >> T.group_name;
    if (T.group_name == "-") T.group_name.clear();
  }
  auto keyed = [&](const char* key) {
    auto in = next_line();
    expect_word(in, key);
    return read_value<std::uint64_t>(in);
  };
  T.group_order = keyed("order");
  T.exponent = keyed("exponent");
  T.ell = keyed("ell");
  T.root = keyed("root");
  const std::size_t r = keyed("classes");
  if (r == 0 || r > kMaxTableClasses) parse_fail("class count");
  for (std::size_t k = 0; k < r; ++k) {
    auto in = next_line();
    expect_word(in, "class");
    if (read_value<std::size_t>(in) != k) parse_fail("class index");
    expect_word(in, "size");
    T.class_sizes.push_back(read_value<std::uint64_t>(in));
    expect_word(in, "order");
    T.class_orders.push_back(read_value<std::uint64_t>(in));
    expect_word(in, "inverse");
    T.inverse_class.push_back(read_value<std::size_t>(in));
    expect_word(in, "rep");
    std::string rep;
    in >> rep;
    T.class_reps.push_back(rep);
  }
  const std::size_t nchar = keyed("characters");
  if (nchar != r) parse_fail("character count");
  for (std::size_t x = 0; x < nchar; ++x) {
    {
      auto in = next_line();
      expect_word(in, "char");
      if (read_value<std::size_t>(in) != x) parse_fail("character index");
      expect_word(in, "degree");
      T.degrees.push_back(read_value<std::uint64_t>(in));
    }
    std::vector<std::uint64_t> mod;
    std::vector<Cyclo> val;
    for (std::size_t k = 0; k < r; ++k) {
      auto in = next_line();
      expect_word(in, "v");
      if (read_value<std::size_t>(in) != k) parse_fail("value index");
      mod.push_back(read_value<std::uint64_t>(in));
      Cyclo c;
      std::string term;
      while (in >> term) {
        const auto colon = term.find(':');
        if (colon == std::string::npos) parse_fail("bad term");
        try {
          c.emplace_back(static_cast<std::uint32_t>(std::stoul(term.substr(0, colon))),
                         static_cast<std::int64_t>(std::stoll(term.substr(colon + 1))));
        } catch (const std::exception&) {
          parse_fail("bad term");
        }
      }
      val.push_back(std::move(c));
    }
    T.values_mod.push_back(std::move(mod));
    T.values.push_back(std::move(val));
  }
  {
    auto in = next_line();
    expect_word(in, "end");
  }
  return T;
}

std::uint64_t group_digest(const PermGroup& G) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  feed(static_cast<std::uint32_t>(G.degree()));
  feed(static_cast<std::uint32_t>(G.generators().size()));
  for (const auto& g : G.generators())
    for (auto v : g.images()) feed(v);
  return h;
}

CharTable character_table_cached(const PermGroup& G, const ConjugacyClasses& classes,
                                 const std::filesystem::path& dir) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(group_digest(G)));
  std::string stem = G.name().empty() ? "group" : G.name();
  for (auto& ch : stem)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  const auto path = dir / (stem + "-" + hex + ".tbl");

  if (std::ifstream in{path}) {
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      CharTable T = parse_table(buf.str());
      bool ok = T.group_order == G.order() && T.num_classes() == classes.size();
      for (std::size_t k = 0; ok && k < classes.size(); ++k) {
        ok = T.class_sizes[k] == classes[k].size && T.class_orders[k] == classes[k].element_order &&
             T.class_reps[k] == classes[k].rep.to_cycle_string();
      }
      if (ok) {
        T.group_name = G.name();
        return T;
      }
    } catch (const Error&) {
      // stale or damaged cache: recompute below
    }
  }
  CharTable T = character_table(G, classes);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
    if (!out) return T;
    out << format_table(T);
  }
  std::filesystem::rename(tmp, path, ec);
  return T;
}

} // namespace fixspace
