#pragma once

// Root systems of types A-D (rank <= 4) and G2, Weyl dimensions, Freudenthal
// weight multiplicities, torus characteristic polynomials and the
// divisibility and eigenvalue checks built on them.
//
// Weights are integer vectors in fundamental-weight coordinates. The
// realization is the Cartan matrix C[i][j] = <alpha_i, alpha_j^vee> together
// with half squared root lengths d_i; the symmetric form is kept integral by a
// common scale. For G2, alpha_1 is the short simple root, so omega_1 has
// dimension 7.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixspace/ff.hpp"
#include "fixspace/rng.hpp"

namespace fixspace {

using Weight = std::vector<std::int64_t>;

enum class RootType { A, B, C, D, G };

class RootSystem {
public:
  // A1-A4, B2-B4, C2-C4, D3-D4, G2. Throws InvalidArgument.
  static RootSystem make(RootType type, unsigned rank);
  // "A2", "B3", "G2". Throws Parse, InvalidArgument.
  static RootSystem parse(std::string_view name);

  RootType type() const { return type_; }
  unsigned rank() const { return rank_; }
  std::string name() const;

  const std::vector<std::vector<std::int64_t>>& cartan() const { return cartan_; }
  const std::vector<std::int64_t>& half_lengths() const { return d_; }
  // Positive roots as simple-root coefficient vectors, sorted by height.
  const std::vector<std::vector<std::int64_t>>& positive_roots_simple() const { return pos_simple_; }
  // The same roots in fundamental-weight coordinates.
  const std::vector<Weight>& positive_roots() const { return pos_; }
  Weight rho() const { return Weight(rank_, 1); }

  // Scaled symmetric form: form(a, b) = scale * (a, b), integral.
  std::int64_t form(const Weight& a, const Weight& b) const;
  Weight simple_root(unsigned i) const;
  Weight reflect(const Weight& w, unsigned i) const;
  Weight dominant_conjugate(Weight w) const;
  static bool is_dominant(const Weight& w);
  // Coordinates in the simple roots when w lies in the root lattice.
  std::optional<std::vector<std::int64_t>> root_lattice_coords(const Weight& w) const;

private:
  RootType type_ = RootType::A;
  unsigned rank_ = 0;
  std::vector<std::vector<std::int64_t>> cartan_;
  std::vector<std::int64_t> d_;
  std::vector<std::vector<std::int64_t>> gram_;      // scale * (omega_i, omega_j)
  std::vector<std::vector<std::int64_t>> inv_num_;   // det * C^-1
  std::int64_t det_ = 1;
  std::vector<std::vector<std::int64_t>> pos_simple_;
  std::vector<Weight> pos_;
};

// prod over positive alpha of (lambda + rho, alpha) / (rho, alpha).
// Throws NotDominant, Overflow.
std::uint64_t weyl_dim(const RootSystem& rs, const Weight& lambda);

struct WeightMultiset {
  std::vector<std::pair<Weight, std::uint64_t>> entries;  // sorted by weight, distinct
  std::uint64_t total() const;
  std::uint64_t multiplicity(const Weight& w) const;
  friend bool operator==(const WeightMultiset&, const WeightMultiset&) = default;
};

inline constexpr std::uint64_t kMaxWeightDim = 100'000;

// Freudenthal on the dominant weights, then Weyl orbits. Throws NotDominant,
// TooLarge (weyl_dim above the cap).
WeightMultiset weight_multiset(const RootSystem& rs, const Weight& lambda);
// Multiplicities of the dominant weights only, highest first.
std::vector<std::pair<Weight, std::uint64_t>> dominant_multiplicities(const RootSystem& rs, const Weight& lambda);

// sub is contained in sup with multiplicities.
bool multiset_contains(const WeightMultiset& sup, const WeightMultiset& sub);
// Every weight multiplied by k (Frobenius twist by k = p^i).
WeightMultiset scale_weights(const WeightMultiset& w, std::int64_t k);
// Multiset sum {a + b}.
WeightMultiset tensor_weights(const WeightMultiset& a, const WeightMultiset& b);

// prod (x - t^mu)^m with t^mu = prod t_i^{mu_i}. Throws ZeroTorusValue,
// InvalidArgument when t has the wrong length.
Poly torus_char_poly(const WeightMultiset& w, const std::vector<FieldElem>& t, const FieldCtx& F);

// Uniform points of (F^x)^rank.
std::vector<std::vector<FieldElem>> torus_samples(const FieldCtx& F, unsigned rank, std::size_t count,
                                                  std::uint64_t seed);

enum class CheckVerdict { Holds, Fails, NotApplicable, Unresolved };
std::string_view check_verdict_name(CheckVerdict v) noexcept;

struct DivisibilityReport {
  CheckVerdict verdict = CheckVerdict::NotApplicable;
  bool containment = false;         // structural route
  std::size_t samples = 0;
  std::size_t samples_dividing = 0; // computational route
  std::string note;
};

// V = L(lambda0) (x) L(lambda1)^[p]; the twist factor's torus char poly
// must divide the tensor's whenever 0 is a weight of L(lambda0).
// Weights are those of the Weyl modules; the check runs on torus samples.
DivisibilityReport check_twist_divisibility(const RootSystem& rs, const Weight& lambda0, const Weight& lambda1,
                                            std::uint64_t p, const FieldCtx& F,
                                            const std::vector<std::vector<FieldElem>>& samples);

// SL_n: ch of V((s + n) omega_1) is a multiple of ch of V(s omega_1).
// Throws HypothesisViolated when char F <= s + n, InvalidArgument for n < 2
// or n > 5.
DivisibilityReport check_sym_divisibility(unsigned n, unsigned s, const FieldCtx& F,
                                          const std::vector<std::vector<FieldElem>>& samples);

// ch of V(lambda) against ch of V(lambda + mu) for mu in the root lattice.
// Holds when containment and every sample divide; Unresolved when the
// multisets are not nested (no verdict either way). Throws InvalidArgument
// when mu is outside the root lattice, NotDominant.
DivisibilityReport check_cartan_mult(const RootSystem& rs, const Weight& lambda, const Weight& mu,
                                     const FieldCtx& F, const std::vector<std::vector<FieldElem>>& samples);

struct Sl2EigenReport {
  std::uint64_t q = 0;
  unsigned s = 0;
  bool distinct = false;            // weights s, s-2, ..., -s evaluated at an element of order q + 1
  bool predicted_distinct = false;  // 2 dim - 2 < q + 1
  std::optional<std::pair<std::int64_t, std::int64_t>> collision;  // two weights with equal values
};

// Throws InvalidArgument (q not an odd prime power or q > 10^4),
// NotRestricted (s > p - 1).
Sl2EigenReport sl2_distinct_eigenvalues(std::uint64_t q, unsigned s);

} // namespace fixspace
