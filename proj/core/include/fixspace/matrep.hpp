#pragma once

// Matrix representations of permutation groups over finite fields: recipes,
// characteristic polynomials, fixed spaces, MeatAxe irreducibility and the
// permutation embedding of matrix groups.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixspace/ff.hpp"
#include "fixspace/linalg.hpp"
#include "fixspace/perm.hpp"
#include "fixspace/rng.hpp"

namespace fixspace {

class GroupLibrary;

// Recipe AST. `field` may be left empty on inner nodes; it is inherited.
struct ModuleSpec {
  enum class Kind { Perm, Deleted, Tensor, Dual, Twist, Sym, Explicit, Section };
  enum class Mode { Sub, Quotient };
  enum class Basis { Ones, SumZero, Fixed, Cofixed, MeatAxe, Given };

  Kind kind = Kind::Perm;
  std::string name;                      // Perm: group; Explicit: matrix group
  std::vector<ModuleSpec> children;
  unsigned param = 0;                    // Twist: i; Sym: s
  bool sumzero_marked = false;           // Deleted with p | |Omega| allowed
  Mode mode = Mode::Sub;
  Basis basis = Basis::Ones;
  std::vector<std::vector<std::int64_t>> given_basis;
  std::optional<std::pair<std::uint64_t, unsigned>> field;  // (p, k)

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

// `(deleted (perm A5) :field (gf 7))`, `(tensor M1 M2)`, `(dual M)`,
// `(twist 1 M)`, `(sym 2 (explicit SL2_5))`, `(explicit NAME)`,
// `(section M :mode quotient :basis fixed)`. Throws Parse.
ModuleSpec parse_module_spec(std::string_view text);
std::string format_module_spec(const ModuleSpec& spec);

class MatRep {
public:
  MatRep() = default;
  // Checks invertibility of the images and the homomorphism property on
  // `hom_words` random words. Throws NotInvertible, DegreeMismatch, IllTyped.
  MatRep(std::shared_ptr<const PermGroup> group, FieldCtx field, std::vector<Matrix> gen_images,
         std::string label = {}, std::size_t hom_words = 200, std::uint64_t hom_seed = 0x5eed);

  const PermGroup& group() const { return *group_; }
  const std::shared_ptr<const PermGroup>& group_ptr() const { return group_; }
  const FieldCtx& field() const { return F_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& gen_images() const { return gens_; }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  // rho(g). Throws NotInGroup.
  Matrix image(const Perm& g) const;

private:
  std::shared_ptr<const PermGroup> group_;
  FieldCtx F_ = FieldCtx::make(2);
  std::size_t dim_ = 0;
  std::vector<Matrix> gens_;
  std::vector<std::vector<Matrix>> level_images_;  // per chain level, per rep
  std::string label_;
};

// Builds the recipe, resolving group names through `lib`.
// Throws IllTyped, FieldMismatch, NotFound.
MatRep build_rep(const ModuleSpec& spec, GroupLibrary& lib);

// Throws NotInGroup.
Poly char_poly(const MatRep& R, const Perm& g);
std::size_t fixed_space_dim(const MatRep& R, const Perm& g);

struct EigenProfile {
  std::size_t max_eigenspace_dim = 0;
  std::size_t fixed_multiplicity = 0;  // multiplicity of x - 1
  std::vector<std::pair<unsigned, unsigned>> parts;  // (squarefree part degree, multiplicity)
};

// Throws NotSemisimple when the characteristic divides the order of g.
EigenProfile eigenspace_profile(const MatRep& R, const Perm& g);

// dim of the common fixed space of elems on V, or on V* when `dual`.
std::size_t module_fixed_dim(const MatRep& R, const std::vector<Perm>& elems, bool dual = false);

struct IrreducibilityResult {
  bool irreducible = false;
  std::vector<Vec> submodule;  // proper nonzero invariant subspace when reducible
  Matrix theta;                // Norton witness
  Poly factor;                 // irreducible factor used with theta
  std::size_t attempts = 0;
};

inline constexpr std::size_t kMeatAxeBudget = 200;

// MeatAxe with Norton's criterion. Throws Inconclusive after `budget` draws.
IrreducibilityResult is_irreducible(const MatRep& R, std::uint64_t seed = 1,
                                    std::size_t budget = kMeatAxeBudget);
IrreducibilityResult meataxe(const FieldCtx& F, const std::vector<Matrix>& gens, std::uint64_t seed = 1,
                             std::size_t budget = kMeatAxeBudget);

// True when span(basis) is a proper nonzero subspace mapped into itself.
bool is_invariant_subspace(const FieldCtx& F, const std::vector<Matrix>& gens, const std::vector<Vec>& basis);

// Restriction to an invariant subspace (basis rows kept as given) and the
// action on the quotient by it (basis: free columns of its echelon form).
// Throws IllTyped when the subspace is not invariant.
MatRep submodule_rep(const MatRep& R, const std::vector<Vec>& basis);
MatRep quotient_rep(const MatRep& R, const std::vector<Vec>& basis);

struct EmbeddedGroup {
  std::shared_ptr<const PermGroup> group;
  MatRep rep;
  std::vector<Vec> points;  // orbit; permutation point i is points[i]
};

inline constexpr std::size_t kOrbitCap = 1'000'000;

// Action on the orbit of the standard basis vectors. Throws OrbitTooLarge,
// NotInvertible.
EmbeddedGroup embed_matrix_group(const FieldCtx& F, std::size_t dim, const std::vector<Matrix>& gens,
                                 std::string name = {}, std::size_t cap = kOrbitCap);

struct MatGroupSpec {
  std::string name;
  std::uint64_t p = 2;
  unsigned k = 1;
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<std::int64_t>>> gens;  // element codes

  friend bool operator==(const MatGroupSpec&, const MatGroupSpec&) = default;
};

// `matgroup <name> field <p> [ext <k>] dim <n>` then `gen [[..],[..]]` lines.
// For k > 1 entries are element codes (base-p digits). Throws Parse.
MatGroupSpec parse_matgroup(std::string_view text);
std::string format_matgroup(const MatGroupSpec& spec);
std::vector<Matrix> matgroup_matrices(const FieldCtx& F, const MatGroupSpec& spec);

// Exhaustive test oracle: reducible iff some nonzero vector spins to a
// proper subspace. Only for q^dim up to about 10^5.
bool irreducible_by_enumeration(const FieldCtx& F, const std::vector<Matrix>& gens);

} // namespace fixspace
