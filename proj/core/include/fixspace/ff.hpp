#pragma once

// Finite fields GF(p^k) and dense univariate polynomials over them.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fixspace {

// Element of GF(p^k). The coefficient vector (c_0, ..., c_{k-1}) of the
// representative polynomial is packed as the base-p integer sum c_i p^i, so
// an element is a single word and the prime-field case is just the residue.
struct FieldElem {
  std::uint64_t code = 0;

  friend bool operator==(FieldElem, FieldElem) = default;
  friend auto operator<=>(FieldElem, FieldElem) = default;
};

// Immutable field context. Cheap to copy; safe to share between threads.
class FieldCtx {
public:
  // GF(p^k) with the canonical modulus: the monic irreducible of degree k
  // whose coefficient vector, read as base-p digits with the constant term
  // least significant, is smallest. For k = 1 the modulus is x.
  // Throws NotPrime or DegreeOutOfRange (1 <= k <= 16, p^k < 2^62, p < 2^31).
  static FieldCtx make(std::uint64_t p, unsigned k = 1);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t order() const { return q_; }
  // Monic modulus, k + 1 residues low degree first.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  std::string name() const;

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(FieldElem a) const;
  // The class of x in GF(p)[x]/(modulus); equals from_int(0) when k = 1.
  FieldElem generator_x() const;
  // Elements are enumerated by code 0..q-1.
  FieldElem element(std::uint64_t index) const { return {index}; }

  bool is_zero(FieldElem a) const { return a.code == 0; }
  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;  // throws DivisorZero on zero
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;
  // a^(p^i).
  FieldElem frobenius(FieldElem a, unsigned i = 1) const;
  // Multiplicative order of a nonzero element.
  std::uint64_t element_order(FieldElem a) const;
  // A generator of the multiplicative group (smallest code).
  FieldElem primitive_element() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }

private:
  struct Tables;

  FieldCtx() = default;
  FieldElem mul_slow(FieldElem a, FieldElem b) const;

  std::uint64_t p_ = 2;
  unsigned k_ = 1;
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> modulus_;
  std::shared_ptr<const Tables> tables_;
};

// Convenience alias matching the operation name used throughout the tools.
inline FieldCtx make_field(std::uint64_t p, unsigned k = 1) {
  return FieldCtx::make(p, k);
}

// Dense polynomial, coefficients low degree first, no trailing zeros.
// The zero polynomial has no coefficients.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<FieldElem> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElem{}; }
  FieldElem lead() const { return c_.empty() ? FieldElem{} : c_.back(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;

private:
  std::vector<FieldElem> c_;
};

namespace poly {

Poly constant(const FieldCtx& F, FieldElem c);
Poly x(const FieldCtx& F);
// x - a
Poly linear(const FieldCtx& F, FieldElem a);
Poly from_ints(const FieldCtx& F, std::initializer_list<std::int64_t> coeffs);

Poly add(const FieldCtx& F, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& F, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& F, const Poly& a, const Poly& b);
Poly scale(const FieldCtx& F, const Poly& a, FieldElem s);
Poly pow(const FieldCtx& F, const Poly& a, std::uint64_t e);
// (quotient, remainder); throws DivisorZero.
std::pair<Poly, Poly> divmod(const FieldCtx& F, const Poly& a, const Poly& b);
Poly rem(const FieldCtx& F, const Poly& a, const Poly& b);
Poly quot(const FieldCtx& F, const Poly& a, const Poly& b);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const FieldCtx& F, const Poly& a, const Poly& b);
Poly derivative(const FieldCtx& F, const Poly& a);
Poly monic(const FieldCtx& F, const Poly& a);
FieldElem eval(const FieldCtx& F, const Poly& a, FieldElem t);
// a^e mod m.
Poly powmod(const FieldCtx& F, const Poly& a, std::uint64_t e, const Poly& m);
bool is_monic(const FieldCtx& F, const Poly& a);
// Distinct roots in the field of a nonzero polynomial, increasing by code.
std::vector<FieldElem> roots(const FieldCtx& F, const Poly& a);
std::string to_string(const FieldCtx& F, const Poly& a);

} // namespace poly

// True iff b = a * q exactly. Throws DivisorZero when a = 0.
bool poly_divides(const FieldCtx& F, const Poly& a, const Poly& b);

struct SquarefreePart {
  Poly part;
  unsigned multiplicity;

  friend bool operator==(const SquarefreePart&, const SquarefreePart&) = default;
};

// Yun-style decomposition adapted to characteristic p. Parts are squarefree,
// pairwise coprime, listed by strictly increasing multiplicity, and
// prod part^multiplicity = f. Throws NotMonic.
std::vector<SquarefreePart> squarefree_decomposition(const FieldCtx& F,
                                                     const Poly& f);

// Largest m with (x - a)^m dividing f (f nonzero).
unsigned root_multiplicity(const FieldCtx& F, const Poly& f, FieldElem a);

// Irreducibility over GF(p) of a monic polynomial with prime-field
// coefficients: f | x^{p^k} - x and gcd(x^{p^d} - x, f) = 1 for proper d | k.
bool is_irreducible_over_prime_field(const FieldCtx& prime_field, const Poly& f);

} // namespace fixspace
