#pragma once

// Fixed-space bounds for irreducible modules: minimum fixed dimension over
// semisimple classes, the clause checks with their thresholds, Scott's
// inequality, and the catalog of modules they are run against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixspace/matrep.hpp"

namespace fixspace {

class GroupLibrary;

// g acts semisimply on V: the p-part of g lies in the kernel.
bool acts_semisimply(const MatRep& R, const Perm& g);

struct ClassFixDim {
  std::size_t cls = 0;
  std::uint64_t order = 0;
  std::size_t fixdim = 0;

  friend bool operator==(const ClassFixDim&, const ClassFixDim&) = default;
};

struct MinFixDim {
  std::size_t dim = 0;            // equals R.dim() when no class qualifies
  std::optional<ClassFixDim> witness;
  std::vector<ClassFixDim> per_class;  // every nontrivial semisimple class, class order
  std::size_t kernel_classes = 0;      // nontrivial classes acting as the identity
};

// Minimum of dim C_V(g) over classes whose image is nontrivial and
// semisimple; ties go to the smaller element order, then the earlier class.
// Throws GroupTooLarge.
MinFixDim min_semisimple_fixdim(const MatRep& R, const ConjugacyClasses& classes, unsigned workers = 1);
MinFixDim min_semisimple_fixdim(const MatRep& R, unsigned workers = 1);

// dim < num/den * n (strict) or dim <= num/den * n, compared exactly.
struct Threshold {
  std::uint64_t num = 1;
  std::uint64_t den = 2;
  bool strict = true;
  bool admits(std::size_t value, std::size_t n) const;
  std::string text() const;  // "< 1/2 n", "<= 3/8 n"
};

struct ClauseResult {
  // half: always, dim < n/2. coprime: p does not divide |G|, <= n/3.
  // large_p: p > n + 2, <= n/3. p_nmid_n: <= 3n/8. two_primitive: n an odd
  // prime with 2 primitive mod n, <= n/3. eigenspace: n an odd prime and
  // p > 2n - 3, some p'-class has every eigenspace of dimension <= 1.
  std::string id;
  bool applicable = false;
  Threshold bound;
  bool satisfied = false;
  std::optional<ClassFixDim> witness;  // for eigenspace, fixdim holds the largest eigenspace dim
};

struct BoundReport {
  std::string module;
  std::size_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t group_order = 0;
  MinFixDim min;
  std::vector<ClauseResult> clauses;
  bool all_satisfied() const;
};

// Refuses reducible modules (NotIrreducible); Inconclusive propagates.
BoundReport check_bound_theorems(const MatRep& R, const ConjugacyClasses& classes, unsigned workers = 1);
BoundReport check_bound_theorems(const MatRep& R, unsigned workers = 1);

struct ScottRecord {
  std::size_t dx = 0, dy = 0, dz = 0;  // z = (xy)^-1
  std::size_t lhs = 0;
  std::size_t fix_h = 0, fix_h_dual = 0;  // H = <x, y>
  std::size_t rhs = 0;
  bool holds = false;
};

// Throws NotInGroup.
ScottRecord scott_check(const MatRep& R, const Perm& x, const Perm& y);

// Composition factors by repeated MeatAxe splitting, in submodule-first order.
std::vector<MatRep> composition_factors(const MatRep& R, std::uint64_t seed = 1);

struct AdjointRow {
  std::size_t cls = 0;
  std::uint64_t order = 0;
  std::size_t fix_w = 0;  // on End(natural)
  std::size_t fix_v = 0;  // on the irreducible section
};

struct AdjointReport {
  std::uint64_t p = 0;
  std::size_t dim_w = 0;
  std::size_t dim_v = 0;
  std::vector<std::size_t> factor_dims;  // composition factors of W
  bool section_irreducible = false;
  std::vector<AdjointRow> rows;           // nontrivial semisimple classes
  std::size_t min_fix_v = 0;
  std::size_t min_fix_w = 0;
  bool holds = false;  // every row: fix_w >= p and fix_v >= p - 2
};

// SL_p(p) acting on End of its natural module; only p = 3 is in the library.
// Throws InvalidArgument for other p.
AdjointReport sl_p_adjoint_check(std::uint64_t p, GroupLibrary& lib);

struct MersenneReport {
  unsigned a = 0;
  std::uint64_t p = 0;  // 2^a - 1
  std::size_t n = 0;
  bool irreducible = false;
  std::vector<ClassFixDim> per_class;
  bool sharp = false;  // every nontrivial semisimple class fixes exactly (p - 1) / 2
};

// The affine group of GF(2^a) on its deleted permutation module over
// GF(2^a - 1). Throws InvalidArgument unless 2^a - 1 is prime and a <= 5.
MersenneReport mersenne_check(unsigned a, GroupLibrary& lib);

// A class of elements of prime order r whose image has r distinct
// eigenvalues, so V is free over the cyclic subgroup (needs dim V = r).
std::optional<std::size_t> free_cyclic_class(const MatRep& R, const ConjugacyClasses& classes, std::uint64_t r);

struct CatalogEntry {
  std::string id;
  std::string spec;  // module recipe text
};

// Irreducible modules exercised by the bound and Scott suites.
const std::vector<CatalogEntry>& bound_catalog();

} // namespace fixspace
