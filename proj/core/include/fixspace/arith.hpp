#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fixspace::arith {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Trial division; fine for the word-sized inputs used here.
bool is_prime(std::uint64_t n);

// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// If n = r^a with r prime and a >= 1, returns (r, a); otherwise (0, 0).
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t n);

// base^exp, or false on overflow past `limit`.
bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit,
                 std::uint64_t& out);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

// Multiplicative order of a modulo n (gcd(a, n) must be 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// Smallest primitive root modulo the prime p.
std::uint64_t primitive_root(std::uint64_t p);

} // namespace fixspace::arith
