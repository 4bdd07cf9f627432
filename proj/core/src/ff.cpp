#include "fixspace/ff.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "fixspace/arith.hpp"
#include "fixspace/error.hpp"

namespace fixspace {

namespace {

constexpr unsigned kMaxDegree = 16;
constexpr std::uint64_t kTableLimit = 1U << 16;

using Digits = std::array<std::uint64_t, kMaxDegree>;

} // namespace

// Zech-free log/antilog tables for small extension fields.
struct FieldCtx::Tables {
  std::vector<std::uint32_t> log;  // log[code], log[0] unused
  std::vector<std::uint64_t> exp;  // exp[i] for i in [0, 2(q-1))
};

FieldCtx FieldCtx::make(std::uint64_t p, unsigned k) {
  if (p >= (1ULL << 31) || !arith::is_prime(p)) {
    throw Error(Errc::NotPrime, std::to_string(p) + " is not a prime below 2^31");
  }
  std::uint64_t q = 0;
  if (k < 1 || k > kMaxDegree || !arith::checked_pow(p, k, (1ULL << 62) - 1, q)) {
    throw Error(Errc::DegreeOutOfRange,
                "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
  }
  FieldCtx F;
  F.p_ = p;
  F.k_ = k;
  F.q_ = q;
  if (k == 1) {
    F.modulus_ = {0, 1};
    return F;
  }

  // Canonical modulus: scan monic candidates by their base-p digit value.
  const FieldCtx prime = make(p, 1);
  std::uint64_t candidates = q;  // p^k tail coefficient vectors
  for (std::uint64_t n = 0; n < candidates; ++n) {
    std::vector<FieldElem> c(k + 1);
    std::uint64_t rest = n;
    for (unsigned i = 0; i < k; ++i) {
      c[i] = FieldElem{rest % p};
      rest /= p;
    }
    c[k] = FieldElem{1};
    if (c[0].code == 0) continue;  // divisible by x
    Poly f(c);
    if (is_irreducible_over_prime_field(prime, f)) {
      F.modulus_.resize(k + 1);
      for (unsigned i = 0; i <= k; ++i) F.modulus_[i] = c[i].code;
      break;
    }
  }
  if (F.modulus_.empty()) {
    throw Error(Errc::DegreeOutOfRange, "no irreducible modulus found");
  }

  if (q <= kTableLimit) {
    auto t = std::make_shared<Tables>();
    t->log.assign(q, 0);
    t->exp.assign(2 * (q - 1), 0);
    const FieldElem g = F.primitive_element();
    FieldElem cur = F.one();
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      t->exp[i] = cur.code;
      t->exp[i + q - 1] = cur.code;
      t->log[cur.code] = static_cast<std::uint32_t>(i);
      cur = F.mul_slow(cur, g);
    }
    F.tables_ = std::move(t);
  }
  return F;
}

std::string FieldCtx::name() const {
  if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

FieldElem FieldCtx::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return {static_cast<std::uint64_t>(r)};
}

FieldElem FieldCtx::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > k_) {
    throw Error(Errc::InvalidArgument, "too many coefficients for " + name());
  }
  std::uint64_t code = 0;
  std::uint64_t place = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    code += (coeffs[i] % p_) * place;
    place *= p_;
  }
  return {code};
}

std::vector<std::uint64_t> FieldCtx::coeffs(FieldElem a) const {
  std::vector<std::uint64_t> out(k_);
  std::uint64_t rest = a.code;
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = rest % p_;
    rest /= p_;
  }
  return out;
}

FieldElem FieldCtx::generator_x() const {
  if (k_ == 1) return zero();
  return {p_};
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (k_ == 1) {
    std::uint64_t s = a.code + b.code;
    return {s >= p_ ? s - p_ : s};
  }
  std::uint64_t x = a.code, y = b.code, code = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    code += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return {code};
}

FieldElem FieldCtx::neg(FieldElem a) const {
  if (k_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
  std::uint64_t x = a.code, code = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t d = x % p_;
    code += (d == 0 ? 0 : p_ - d) * place;
    x /= p_;
    place *= p_;
  }
  return {code};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (k_ == 1) return {arith::mulmod(a.code, b.code, p_)};
  if (a.code == 0 || b.code == 0) return zero();
  if (tables_) {
    return {tables_->exp[tables_->log[a.code] + tables_->log[b.code]]};
  }
  return mul_slow(a, b);
}

FieldElem FieldCtx::mul_slow(FieldElem a, FieldElem b) const {
  Digits x{}, y{};
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  std::uint64_t ra = a.code, rb = b.code;
  for (unsigned i = 0; i < k_; ++i) {
    x[i] = ra % p_;
    y[i] = rb % p_;
    ra /= p_;
    rb /= p_;
  }
  for (unsigned i = 0; i < k_; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + arith::mulmod(x[i], y[j], p_)) % p_;
    }
  }
  // Reduce by the monic modulus from the top down.
  for (int d = 2 * static_cast<int>(k_) - 2; d >= static_cast<int>(k_); --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint64_t sub = arith::mulmod(c, modulus_[i], p_);
      auto& slot = prod[d - k_ + i];
      slot = (slot + p_ - sub) % p_;
    }
  }
  std::uint64_t code = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    code += prod[i] * place;
    place *= p_;
  }
  return {code};
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const {
  if (k_ == 1) return {arith::powmod(a.code, e, p_)};
  if (tables_ && a.code != 0) {
    const std::uint64_t l = tables_->log[a.code];
    return {tables_->exp[static_cast<std::uint64_t>(
        (static_cast<arith::u128>(l) * e) % (q_ - 1))]};
  }
  FieldElem result = one();
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.code == 0) throw Error(Errc::DivisorZero, "inverse of zero in " + name());
  if (k_ == 1) {
    // Extended Euclid on residues.
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a.code);
    while (new_r != 0) {
      const std::int64_t quo = r / new_r;
      t = std::exchange(new_t, t - quo * new_t);
      r = std::exchange(new_r, r - quo * new_r);
    }
    return from_int(t);
  }
  if (tables_) {
    const std::uint64_t l = tables_->log[a.code];
    return {tables_->exp[(q_ - 1 - l) % (q_ - 1)]};
  }
  return pow(a, q_ - 2);
}

FieldElem FieldCtx::frobenius(FieldElem a, unsigned i) const {
  for (unsigned j = 0; j < i % k_; ++j) a = pow(a, p_);
  return a;
}

std::uint64_t FieldCtx::element_order(FieldElem a) const {
  if (a.code == 0) throw Error(Errc::DivisorZero, "order of zero");
  std::uint64_t ord = q_ - 1;
  for (auto [r, e] : arith::factorize(q_ - 1)) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow(a, ord / r) == one()) {
        ord /= r;
      } else {
        break;
      }
    }
  }
  return ord;
}

FieldElem FieldCtx::primitive_element() const {
  if (tables_) return {tables_->exp[1]};
  const auto factors = arith::factorize(q_ - 1);
  for (std::uint64_t c = 1; c < q_; ++c) {
    const FieldElem g{c};
    bool ok = true;
    for (auto [r, e] : factors) {
      FieldElem t = one();
      // pow() may consult tables that are not built yet; use mul_slow path.
      FieldElem b = g;
      std::uint64_t ex = (q_ - 1) / r;
      while (ex > 0) {
        if (ex & 1U) t = k_ == 1 ? mul(t, b) : mul_slow(t, b);
        b = k_ == 1 ? mul(b, b) : mul_slow(b, b);
        ex >>= 1U;
      }
      if (t == one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error(Errc::NotPrime, "no primitive element in " + name());
}

// ---------------------------------------------------------------------------
// Polynomials

Poly::Poly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

namespace poly {

Poly constant(const FieldCtx&, FieldElem c) { return Poly({c}); }

Poly x(const FieldCtx& F) { return Poly({F.zero(), F.one()}); }

Poly linear(const FieldCtx& F, FieldElem a) { return Poly({F.neg(a), F.one()}); }

Poly from_ints(const FieldCtx& F, std::initializer_list<std::int64_t> coeffs) {
  std::vector<FieldElem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(F.from_int(v));
  return Poly(std::move(c));
}

Poly add(const FieldCtx& F, const Poly& a, const Poly& b) {
  std::vector<FieldElem> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly sub(const FieldCtx& F, const Poly& a, const Poly& b) {
  std::vector<FieldElem> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly mul(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<FieldElem> c(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].code == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      c[i + j] = F.add(c[i + j], F.mul(x[i], y[j]));
    }
  }
  return Poly(std::move(c));
}

Poly scale(const FieldCtx& F, const Poly& a, FieldElem s) {
  std::vector<FieldElem> c(a.coeffs());
  for (auto& v : c) v = F.mul(v, s);
  return Poly(std::move(c));
}

Poly pow(const FieldCtx& F, const Poly& a, std::uint64_t e) {
  Poly result = constant(F, F.one());
  Poly base = a;
  while (e > 0) {
    if (e & 1U) result = mul(F, result, base);
    e >>= 1U;
    if (e > 0) base = mul(F, base, base);
  }
  return result;
}

std::pair<Poly, Poly> divmod(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivisorZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<FieldElem> r(a.coeffs());
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const FieldElem lead_inv = F.inv(d.back());
  std::vector<FieldElem> q(r.size() - db);
  for (std::size_t i = r.size(); i-- > db;) {
    const FieldElem c = F.mul(r[i], lead_inv);
    q[i - db] = c;
    if (c.code == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      r[i - db + j] = F.sub(r[i - db + j], F.mul(c, d[j]));
    }
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const FieldCtx& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly quot(const FieldCtx& F, const Poly& a, const Poly& b) { return divmod(F, a, b).first; }

Poly monic(const FieldCtx& F, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.lead()));
}

bool is_monic(const FieldCtx& F, const Poly& a) { return !a.is_zero() && a.lead() == F.one(); }

Poly gcd(const FieldCtx& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = rem(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

Poly derivative(const FieldCtx& F, const Poly& a) {
  if (a.degree() < 1) return {};
  std::vector<FieldElem> c(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
    c[i - 1] = F.mul(a.coeff(i), F.from_int(static_cast<std::int64_t>(i % F.p())));
  }
  return Poly(std::move(c));
}

FieldElem eval(const FieldCtx& F, const Poly& a, FieldElem t) {
  FieldElem acc = F.zero();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) acc = F.add(F.mul(acc, t), a.coeff(i));
  return acc;
}

Poly powmod(const FieldCtx& F, const Poly& a, std::uint64_t e, const Poly& m) {
  Poly result = rem(F, constant(F, F.one()), m);
  Poly base = rem(F, a, m);
  while (e > 0) {
    if (e & 1U) result = rem(F, mul(F, result, base), m);
    e >>= 1U;
    if (e > 0) base = rem(F, mul(F, base, base), m);
  }
  return result;
}

namespace {

// x^(q^d) mod m by repeated q-th powering.
Poly frobenius_power_of_x(const FieldCtx& F, unsigned d, const Poly& m) {
  Poly h = rem(F, x(F), m);
  for (unsigned i = 0; i < d; ++i) h = powmod(F, h, F.order(), m);
  return h;
}

void split_roots(const FieldCtx& F, const Poly& g, std::uint64_t salt,
                 std::vector<FieldElem>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F.neg(F.mul(g.coeff(0), F.inv(g.coeff(1)))));
    return;
  }
  // Cantor-Zassenhaus equal-degree split with deterministic shifts x + a.
  for (std::uint64_t s = salt;; ++s) {
    const FieldElem shift = F.element(s % F.order());
    const Poly base = Poly({shift, F.one()});
    Poly h = powmod(F, base, (F.order() - 1) / 2, g);
    h = sub(F, h, constant(F, F.one()));
    Poly d = gcd(F, h, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(F, d, s + 1, out);
      split_roots(F, quot(F, g, d), s + 1, out);
      return;
    }
    if (s - salt > 4 * F.order() + 64) {
      throw Error(Errc::NotFound, "root splitting did not terminate");
    }
  }
}

} // namespace

std::vector<FieldElem> roots(const FieldCtx& F, const Poly& a) {
  if (a.is_zero()) throw Error(Errc::DivisorZero, "roots of the zero polynomial");
  std::vector<FieldElem> out;
  if (a.degree() < 1) return out;
  if (F.order() <= 4096 || F.p() == 2) {
    if (F.order() > (1ULL << 20)) {
      throw Error(Errc::TooLarge, "root search in " + F.name());
    }
    for (std::uint64_t c = 0; c < F.order(); ++c) {
      if (eval(F, a, FieldElem{c}).code == 0) out.push_back(FieldElem{c});
    }
    return out;
  }
  const Poly f = monic(F, a);
  const Poly split = gcd(F, sub(F, frobenius_power_of_x(F, 1, f), x(F)), f);
  split_roots(F, split, 1, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const FieldCtx& F, const Poly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const FieldElem c = a.coeff(i);
    if (c.code == 0) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs;
    if (F.k() == 1) {
      cs = std::to_string(c.code);
    } else {
      auto digits = F.coeffs(c);
      cs = "[";
      for (std::size_t j = 0; j < digits.size(); ++j) {
        cs += (j ? "," : "") + std::to_string(digits[j]);
      }
      cs += "]";
    }
    if (i == 0) {
      os << cs;
    } else {
      if (c != F.one()) os << cs << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

} // namespace poly

bool poly_divides(const FieldCtx& F, const Poly& a, const Poly& b) {
  if (a.is_zero()) throw Error(Errc::DivisorZero, "poly_divides with zero divisor");
  return poly::rem(F, b, a).is_zero();
}

namespace {

// p-th root of a polynomial whose derivative vanishes: f = g(x^p) with the
// coefficients of g replaced by their p-th roots (x -> x^{p^{k-1}}).
Poly pth_root(const FieldCtx& F, const Poly& f) {
  const std::uint64_t p = F.p();
  std::vector<FieldElem> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) {
    c.push_back(F.frobenius(f.coeff(i), F.k() - 1));
  }
  return Poly(std::move(c));
}

void squarefree_rec(const FieldCtx& F, const Poly& f, unsigned scale,
                    std::vector<SquarefreePart>& out) {
  if (f.degree() < 1) return;
  Poly c = poly::gcd(F, f, poly::derivative(F, f));
  Poly w = poly::quot(F, f, c);
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = poly::gcd(F, w, c);
    Poly fac = poly::quot(F, w, y);
    if (fac.degree() > 0) out.push_back({poly::monic(F, fac), i * scale});
    w = std::move(y);
    c = poly::quot(F, c, w);
    ++i;
  }
  if (c.degree() > 0) {
    squarefree_rec(F, pth_root(F, c), scale * static_cast<unsigned>(F.p()), out);
  }
}

} // namespace

std::vector<SquarefreePart> squarefree_decomposition(const FieldCtx& F, const Poly& f) {
  if (!poly::is_monic(F, f)) throw Error(Errc::NotMonic, poly::to_string(F, f));
  std::vector<SquarefreePart> out;
  squarefree_rec(F, f, 1, out);
  std::sort(out.begin(), out.end(), [](const SquarefreePart& a, const SquarefreePart& b) {
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

unsigned root_multiplicity(const FieldCtx& F, const Poly& f, FieldElem a) {
  if (f.is_zero()) throw Error(Errc::DivisorZero, "root multiplicity of zero polynomial");
  unsigned m = 0;
  std::vector<FieldElem> c = f.coeffs();
  while (c.size() > 1) {
    // Synthetic division by (x - a).
    std::vector<FieldElem> q(c.size() - 1);
    FieldElem carry = F.zero();
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = F.add(F.mul(carry, a), c[i]);
      q[i - 1] = carry;
    }
    const FieldElem remainder = F.add(F.mul(carry, a), c[0]);
    if (remainder.code != 0) break;
    ++m;
    c = std::move(q);
  }
  return m;
}

bool is_irreducible_over_prime_field(const FieldCtx& P, const Poly& f) {
  const int k = f.degree();
  if (k < 1) return false;
  if (k == 1) return true;
  const Poly xp = poly::x(P);
  if (poly::sub(P, poly::frobenius_power_of_x(P, static_cast<unsigned>(k), f),
                poly::rem(P, xp, f))
          .degree() >= 0) {
    return false;
  }
  for (int d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    const Poly h = poly::sub(P, poly::frobenius_power_of_x(P, static_cast<unsigned>(d), f), xp);
    if (poly::gcd(P, h, f).degree() != 0) return false;
  }
  return true;
}

} // namespace fixspace
