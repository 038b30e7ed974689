#include "totlab/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace totlab {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // extended Euclid on signed 128-bit intermediates
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
  while (new_r != 0) {
    int64_t qt = r / new_r;
    t -= qt * new_t;
    std::swap(t, new_t);
    r -= qt * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("inv_mod: argument not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

std::optional<uint64_t> checked_product(std::span<const uint64_t> factors) {
  uint64_t acc = 1;
  for (uint64_t f : factors) {
    auto r = checked_mul(acc, f);
    if (!r) return std::nullopt;
    acc = *r;
  }
  return acc;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  if (n <= 1) return out;
  auto strip = [&](uint64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  // wheel over 6k+-1; inputs here are witness-scale (<= ~2^63), trial
  // division to sqrt is fine
  for (uint64_t p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t totient_from_factorization(std::span<const std::pair<uint64_t, int>> f) {
  uint64_t phi = 1;
  for (auto [p, e] : f) {
    for (int i = 1; i < e; ++i) phi *= p;
    phi *= p - 1;
  }
  return phi;
}

uint64_t primitive_root(uint64_t q) {
  if (!is_prime(q)) throw std::invalid_argument("primitive_root: q must be prime");
  if (q == 2) return 1;
  uint64_t order = q - 1;
  auto fac = factorize(order);
  for (uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (auto [r, e] : fac) {
      (void)e;
      if (pow_mod(g, order / r, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: no generator found");  // unreachable for prime q
}

PrimeInterval primes_in(uint64_t lo, uint64_t hi, const PrimesOptions& opt) {
  if (lo > hi) throw std::invalid_argument("primes_in: requires lo <= hi");
  if (hi > opt.hi_cap)
    throw resource_error("primes_in: hi exceeds sieving cap " + std::to_string(opt.hi_cap));
  PrimeInterval out;
  out.lo = lo;
  out.hi = hi;
  if (hi < 2) return out;

  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;

  std::vector<uint8_t> base(root + 1, 1);
  for (uint64_t i = 2; i * i <= root; ++i)
    if (base[i])
      for (uint64_t j = i * i; j <= root; j += i) base[j] = 0;

  uint64_t first = lo + 1;  // half-open (lo, hi]
  if (first < 2) first = 2;
  uint64_t count = hi - first + 1;
  std::vector<uint8_t> seg(count, 1);
  for (uint64_t p = 2; p <= root; ++p) {
    if (!base[p]) continue;
    uint64_t start = std::max(p * p, ((first + p - 1) / p) * p);
    for (uint64_t m = start; m <= hi; m += p) seg[m - first] = 0;
  }
  for (uint64_t i = 0; i < count; ++i)
    if (seg[i]) out.primes.push_back(first + i);
  return out;
}

Modulus Modulus::create(uint64_t q) {
  if (q < 3 || !is_prime(q))
    throw std::invalid_argument("Modulus: q must be an odd prime");
  Modulus m;
  m.q = q;
  m.g = primitive_root(q);
  return m;
}

}  // namespace totlab
