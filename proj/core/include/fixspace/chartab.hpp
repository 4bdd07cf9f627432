#pragma once

// Class algebra constants, ordinary character tables (Dixon's modular
// eigenvector method with a cyclotomic lift) and exact triple counts.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixspace/perm.hpp"

namespace fixspace {

struct ClassAlgebra {
  std::shared_ptr<const ConjugacyClasses> classes;
  std::size_t r = 0;
  // a[(i * r + j) * r + k] = #{(x, y) in C_i x C_j : x y = rep_k}.
  std::vector<std::uint64_t> a;

  std::uint64_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a[(i * r + j) * r + k];
  }
};

// Throws GroupTooLarge (via conjugacy_classes).
ClassAlgebra class_algebra(const PermGroup& G);
ClassAlgebra class_algebra(std::shared_ptr<const ConjugacyClasses> classes);

// Element of Z[zeta_e] as sorted (exponent, coefficient) pairs with nonzero
// coefficients; exponents lie in [0, e).
using Cyclo = std::vector<std::pair<std::uint32_t, std::int64_t>>;

namespace cyclo {

// Integer coefficients of the e-th cyclotomic polynomial, low degree first.
std::vector<std::int64_t> cyclotomic_poly(std::uint64_t e);
// Canonical form: the dense coefficient vector reduced modulo Phi_e
// (length phi(e)); equal elements have equal canonical forms.
std::vector<std::int64_t> canonical(const Cyclo& a, std::uint64_t e);
Cyclo add(const Cyclo& a, const Cyclo& b);
Cyclo mul(const Cyclo& a, const Cyclo& b, std::uint64_t e);
Cyclo scale(const Cyclo& a, std::int64_t s);
// Complex conjugate: zeta^j -> zeta^-j.
Cyclo conj(const Cyclo& a, std::uint64_t e);
Cyclo integer(std::int64_t v);
// The rational integer equal to a, if a is one.
bool as_integer(const Cyclo& a, std::uint64_t e, std::int64_t& out);
// Residue under zeta_e -> root in GF(ell).
std::uint64_t reduce_mod(const Cyclo& a, std::uint64_t ell, std::uint64_t root, std::uint64_t e);
// "3", "-1", "z^1+z^4" (z a primitive e-th root of unity).
std::string to_string(const Cyclo& a, std::uint64_t e);

} // namespace cyclo

struct CharTable {
  std::string group_name;
  std::uint64_t group_order = 1;
  std::uint64_t exponent = 1;
  std::uint64_t ell = 0;   // prime, ell = 1 mod exponent
  std::uint64_t root = 1;  // fixed element of order `exponent` in GF(ell)

  std::vector<std::uint64_t> class_sizes;
  std::vector<std::uint64_t> class_orders;
  std::vector<std::size_t> inverse_class;
  std::vector<std::string> class_reps;  // cycle notation, 1-based

  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<std::uint64_t>> values_mod;  // [character][class]
  std::vector<std::vector<Cyclo>> values;              // [character][class]

  std::size_t num_classes() const { return class_sizes.size(); }
  std::size_t num_characters() const { return degrees.size(); }

  friend bool operator==(const CharTable&, const CharTable&) = default;
};

inline constexpr std::size_t kMaxTableClasses = 60;

// Rows sorted by degree, then by value vectors in decreasing lexicographic
// order (so the trivial character is row 0). Throws GroupTooLarge, LiftFailure.
CharTable character_table(const PermGroup& G);
CharTable character_table(const PermGroup& G, const ConjugacyClasses& classes);

// Number of (x, y, z) in C1 x C2 x C3 with x y z = 1. Throws NonIntegerResult.
std::uint64_t triple_count(const CharTable& T, std::size_t c1, std::size_t c2, std::size_t c3);

// Sum over characters of chi(C) * conj(chi(C')), as an integer.
std::int64_t column_inner_product(const CharTable& T, std::size_t c, std::size_t c2);
// Sum over classes of |C| chi_i(C) conj(chi_j(C)), as an integer.
std::int64_t row_inner_product(const CharTable& T, std::size_t i, std::size_t j);

// Text cache format, bit-exact for equal tables.
std::string format_table(const CharTable& T);
// Throws Parse.
CharTable parse_table(std::string_view text);

// FNV-1a digest of the degree and generator images.
std::uint64_t group_digest(const PermGroup& G);

// Loads `<dir>/<name>-<digest>.tbl` when present and consistent with the
// classes, otherwise computes the table and writes the file.
CharTable character_table_cached(const PermGroup& G, const ConjugacyClasses& classes,
                                 const std::filesystem::path& dir);

} // namespace fixspace
