#pragma once

// Searches for generating p'-triples with product 1, generating pairs of
// conjugate p'-elements, fixed-point-free prime-power elements, and the
// primitive part of q^n - 1.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixspace/perm.hpp"

namespace fixspace {

enum class Verdict { Generates, NotFoundBudget, NotFoundExhausted };
std::string_view verdict_name(Verdict v) noexcept;

struct SearchOptions {
  std::uint64_t budget = 100'000;  // attempts over all workers
  std::uint64_t seed = 1;
  unsigned workers = 1;
  // When set, only elements of exactly this order are drawn (all three
  // triple members, or the pair element).
  std::optional<std::uint64_t> element_order;
  // Triple search only: exact orders of (x, y, z); overrides element_order.
  std::optional<std::array<std::uint64_t, 3>> triple_orders;
};

struct TripleCertificate {
  Perm x, y, z;  // x * y * z = 1
  std::array<std::uint64_t, 3> orders{};
  std::uint64_t p = 0;
  std::uint64_t subgroup_order = 0;  // |<x, y>|
  Verdict verdict = Verdict::NotFoundBudget;
  std::uint64_t attempts = 0;
  bool abelian_group = false;
};

struct PairCertificate {
  Perm x, h, y;  // y = h^-1 x h
  std::uint64_t order = 0;
  std::uint64_t p = 0;
  std::uint64_t subgroup_order = 0;
  Verdict verdict = Verdict::NotFoundBudget;
  std::uint64_t attempts = 0;
};

// Workers draw from SeedStream::fork(seed, worker) in sweeps of fixed size;
// the lowest-index worker that succeeds in a sweep wins, so the result depends
// on (seed, workers) only. Throws InvalidArgument on budget 0 or non-prime p.
TripleCertificate find_triple(const PermGroup& G, std::uint64_t p, const SearchOptions& opt = {});
PairCertificate find_conjugate_pair(const PermGroup& G, std::uint64_t p, const SearchOptions& opt = {});

// Rechecks a certificate from scratch: product, p'-orders, stored orders and
// the generated subgroup order (rebuilt from the two elements).
bool verify_certificate(const PermGroup& G, const TripleCertificate& c);
bool verify_certificate(const PermGroup& G, const PairCertificate& c);

enum class Completeness { ExistsWithWitness, ProvedNone };
std::string_view completeness_name(Completeness c) noexcept;

struct ExhaustiveResult {
  Completeness verdict = Completeness::ProvedNone;
  std::optional<TripleCertificate> witness;
  std::size_t class_triples = 0;         // p'-class triples considered
  std::size_t pruned_by_count = 0;       // skipped because the structure constant is 0
  std::uint64_t pairs_tested = 0;        // (x, y) products examined
};

inline constexpr std::uint64_t kExhaustiveCap = 10'000;

// x runs over one representative per class (conjugation invariance), y over
// the members of the second class. Throws GroupTooLarge above the cap.
ExhaustiveResult exhaustive_triple_search(const PermGroup& G, std::uint64_t p,
                                          std::uint64_t cap = kExhaustiveCap);

// Prime-power order element without fixed points. Throws NotTransitive,
// NotFound after `budget` random draws.
Perm find_fpf_prime_power_element(const PermGroup& G, std::uint64_t budget = 10'000,
                                  std::uint64_t seed = 1);

// Largest divisor of q^n - 1 coprime to every q^m - 1 with m < n.
// Throws InvalidArgument (n < 2, n > 40, q not a prime power), Overflow
// (q^n >= 2^62).
std::uint64_t phi_star(unsigned n, std::uint64_t q);

} // namespace fixspace
