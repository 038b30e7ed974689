#pragma once

// Integer arithmetic substrate: modular helpers, deterministic primality,
// factorization, primitive roots, prime intervals.
//
// Everything here is 64-bit with explicit overflow checks on products.
// Intervals are half-open (lo, hi] throughout the library.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace totlab {

// Thrown when an input exceeds a configured memory/size budget.
// Argument errors use std::invalid_argument.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

uint64_t gcd_u64(uint64_t a, uint64_t b);

// Inverse of a mod m, gcd(a, m) must be 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

// Reduces a possibly negative value into [0, m).
inline uint64_t mod_floor(int64_t v, uint64_t m) {
  int64_t r = v % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return static_cast<uint64_t>(r);
}

// a * b, or nullopt on 64-bit overflow.
inline std::optional<uint64_t> checked_mul(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

// Product of a factor list, range-checked before each multiplication.
std::optional<uint64_t> checked_product(std::span<const uint64_t> factors);

// Deterministic Miller-Rabin over the fixed witness set
// {2,3,5,7,11,13,17,19,23,29,31,37}, valid for all n < 3.3e24 and hence
// for the whole uint64 range.
bool is_prime(uint64_t n);

// Prime factorization as (prime, exponent) pairs, increasing primes.
// factorize(1) == {}.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

// phi(n) recomputed from a factorization.
uint64_t totient_from_factorization(std::span<const std::pair<uint64_t, int>> f);

// Smallest primitive root of an odd prime q (g = q-1 ... never needed;
// search starts at 2). Throws std::invalid_argument if q is not prime.
uint64_t primitive_root(uint64_t q);

// Sorted primes of the half-open interval (lo, hi].
struct PrimeInterval {
  uint64_t lo = 0;  // exclusive
  uint64_t hi = 0;  // inclusive
  std::vector<uint64_t> primes;

  uint64_t size() const { return primes.size(); }
  bool empty() const { return primes.empty(); }
  // Window length in the large-values sense: a sum over (N, 2N] has window N.
  uint64_t window() const { return hi > lo ? hi - lo : 0; }
};

struct PrimesOptions {
  uint64_t hi_cap = 10'000'000'000ull;  // resource guard for sieving
};

PrimeInterval primes_in(uint64_t lo, uint64_t hi, const PrimesOptions& opt = {});

// A prime modulus together with its smallest primitive root.
struct Modulus {
  uint64_t q = 0;
  uint64_t g = 0;

  // Validates primality (q odd prime) and computes g.
  static Modulus create(uint64_t q);
};

}  // namespace totlab
