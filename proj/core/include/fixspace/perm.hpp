#pragma once

// Permutations, permutation groups with a base and strong generating set,
// and conjugacy classes.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fixspace/rng.hpp"

namespace fixspace {

// Bijection of {0, ..., n-1}. Products compose left to right:
// i^(g*h) = (i^g)^h.
class Perm {
public:
  Perm() = default;
  // Throws NotBijection.
  explicit Perm(std::vector<std::uint32_t> images);

  static Perm identity(std::size_t degree);
  // Throws NotBijection on repeated or out-of-range points.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<std::uint32_t>>& cycles);

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator[](std::size_t i) const { return img_[i]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  Perm pow(std::int64_t e) const;
  // h^-1 * this * h
  Perm conjugate_by(const Perm& h) const;
  bool is_identity() const;
  std::vector<std::size_t> cycle_type() const;  // sorted, includes 1-cycles
  std::size_t fixed_points() const;
  // "(1,2,3)(4,5)" with one_based labels, "()" for the identity.
  std::string to_cycle_string(bool one_based = true) const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

private:
  std::vector<std::uint32_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

// lcm of cycle lengths.
std::uint64_t element_order(const Perm& g);
// p does not divide the order of g.
bool is_p_prime_element(const Perm& g, std::uint64_t p);

// Parses cycle notation such as "(1,2,3)(4,5)" or "()" (1-based by default).
Perm parse_cycles(std::string_view text, std::size_t degree, bool one_based = true);

// Straight-line program over the group generators. Every element stored in a
// stabilizer chain carries a node, so any homomorphism given on generators
// can be evaluated on it.
class StraightLineProgram {
public:
  enum class Op : std::uint8_t { Identity, Gen, Mul, Inv };
  struct Node {
    Op op;
    std::uint32_t a;
    std::uint32_t b;
  };

  std::uint32_t identity();
  std::uint32_t gen(std::uint32_t i);
  std::uint32_t mul(std::uint32_t a, std::uint32_t b);
  std::uint32_t inv(std::uint32_t a);

  const std::vector<Node>& nodes() const { return nodes_; }

  // Evaluates the requested nodes. `mul(x, y)` must compose left to right.
  template <class T, class Mul, class Inv>
  std::vector<T> evaluate(std::span<const std::uint32_t> targets,
                          std::span<const T> gens, const T& one, Mul&& mulf,
                          Inv&& invf) const {
    std::vector<std::optional<T>> memo(nodes_.size());
    std::vector<std::uint32_t> stack;
    auto ready = [&](std::uint32_t id) { return memo[id].has_value(); };
    for (auto target : targets) {
      stack.push_back(target);
      while (!stack.empty()) {
        const std::uint32_t id = stack.back();
        if (ready(id)) {
          stack.pop_back();
          continue;
        }
        const Node& nd = nodes_[id];
        switch (nd.op) {
          case Op::Identity:
            memo[id] = one;
            stack.pop_back();
            break;
          case Op::Gen:
            memo[id] = gens[nd.a];
            stack.pop_back();
            break;
          case Op::Inv:
            if (!ready(nd.a)) {
              stack.push_back(nd.a);
            } else {
              memo[id] = invf(*memo[nd.a]);
              stack.pop_back();
            }
            break;
          case Op::Mul:
            if (!ready(nd.a)) {
              stack.push_back(nd.a);
            } else if (!ready(nd.b)) {
              stack.push_back(nd.b);
            } else {
              memo[id] = mulf(*memo[nd.a], *memo[nd.b]);
              stack.pop_back();
            }
            break;
        }
      }
    }
    std::vector<T> out;
    out.reserve(targets.size());
    for (auto target : targets) out.push_back(*memo[target]);
    return out;
  }

private:
  std::vector<Node> nodes_;
  std::optional<std::uint32_t> identity_;
  std::unordered_map<std::uint32_t, std::uint32_t> inverse_of_;
};

// A permutation group with a stabilizer chain built by deterministic
// Schreier-Sims (base points in increasing order). Immutable once built.
class PermGroup {
public:
  struct Level {
    std::uint32_t base_point;
    std::vector<std::uint32_t> orbit;             // in discovery order
    std::vector<std::int32_t> slot;               // point -> index into reps, or -1
    std::vector<Perm> reps;                       // base_point^reps[i] = orbit[i]
    std::vector<Perm> rep_inverses;
    std::vector<std::uint32_t> rep_nodes;         // straight-line program ids
    std::vector<std::uint32_t> strong_generators; // indices into strong_
  };

  PermGroup() = default;

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  std::uint64_t order() const { return order_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Base points of the nontrivial levels, in chain order.
  std::vector<std::uint32_t> base() const;
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Perm>& strong_generators() const { return strong_; }
  const StraightLineProgram& slp() const { return slp_; }

  // Membership by sifting. Throws DegreeMismatch.
  bool contains(const Perm& g) const;
  // Writes g = reps[k_m] * ... * reps[k_0] (deepest level first) and returns
  // the straight-line program node of each factor in that product order.
  // Throws NotInGroup.
  std::vector<std::uint32_t> factor(const Perm& g) const;
  // Uniform element: product of uniformly chosen transversal representatives.
  Perm random_element(SeedStream& rng) const;
  // Order of the subgroup generated by elems. Throws NotInGroup.
  std::uint64_t subgroup_order(std::span<const Perm> elems) const;
  bool is_transitive() const;
  // Orbit of a point under the generators, sorted.
  std::vector<std::uint32_t> orbit(std::uint32_t point) const;
  // All elements, in chain order (only for small groups).
  std::vector<Perm> elements() const;

  friend PermGroup group_from_generators(std::size_t degree, std::vector<Perm> gens);

private:
  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::uint64_t order_ = 1;
  std::string name_;
  std::vector<Level> levels_;  // nontrivial levels only
  std::vector<Perm> strong_;
  StraightLineProgram slp_;
};

// Builds the stabilizer chain. Deterministic in the generator order.
// Throws NotBijection / DegreeMismatch on bad generators.
PermGroup group_from_generators(std::size_t degree, std::vector<Perm> gens);

// Order by exhaustive closure under right multiplication (test oracle).
std::uint64_t closure_order(std::size_t degree, const std::vector<Perm>& gens,
                            std::uint64_t cap = 5'000'000);

struct ConjClass {
  Perm rep;  // lexicographically smallest member
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
  std::vector<Perm> members;
};

// Complete list of conjugacy classes sorted by (element order, size,
// representative), with member lookup, inverse classes and power maps.
class ConjugacyClasses {
public:
  const std::vector<ConjClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  const ConjClass& operator[](std::size_t i) const { return classes_[i]; }
  std::uint64_t group_order() const { return group_order_; }
  // Throws NotInGroup.
  std::size_t class_of(const Perm& g) const;
  std::size_t inverse_class(std::size_t i) const { return inverse_[i]; }
  // Class of rep(i)^k.
  std::size_t power_class(std::size_t i, std::int64_t k) const;
  std::size_t identity_class() const { return 0; }

  friend ConjugacyClasses conjugacy_classes(const PermGroup& G, std::uint64_t cap);

private:
  std::vector<ConjClass> classes_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::uint64_t group_order_ = 1;
};

inline constexpr std::uint64_t kClassStorageCap = 1'000'000;

// Throws GroupTooLarge when |G| exceeds the cap.
ConjugacyClasses conjugacy_classes(const PermGroup& G,
                                   std::uint64_t cap = kClassStorageCap);

// Group spec text: `group <name>`, `degree <n>`, `gen <cycles>` lines,
// 1-based points; '#' starts a comment.
struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> generators;
};

GroupSpec parse_group_spec(std::string_view text);
std::string format_group_spec(const GroupSpec& spec);
PermGroup build_group(const GroupSpec& spec);

} // namespace fixspace
