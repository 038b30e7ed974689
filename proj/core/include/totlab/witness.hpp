#pragma once

// Least totients of residue classes and constructive witnesses: the exact
// minimum N(q,a) by sieve scan, the direct constructions (n = q, n = q^2,
// a prime from the progression a+1 mod q), and squarefree product-form
// solutions of prod (p_j - 1) ≡ a (mod q) found exhaustively or by
// meet-in-the-middle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "totlab/arith.hpp"
#include "totlab/totient.hpp"

namespace totlab {

enum class WitnessKind { exact_minimum, prime_progression, q_itself, q_squared, product_form };

const char* to_string(WitnessKind k);

struct Witness {
  uint64_t n = 0;
  std::vector<std::pair<uint64_t, int>> factorization;
  uint64_t residue = 0;  // phi(n) mod q
  WitnessKind kind = WitnessKind::exact_minimum;

  // Recomputes phi from the factorization and checks it against residue.
  bool verify(uint64_t q, uint64_t a) const;
};

Witness make_witness(uint64_t n, uint64_t q, WitnessKind kind);

struct ScanOptions {
  StreamOptions stream;
};

// Minimal n <= limit with phi(n) ≡ a (mod q); nullopt when none exists
// below the limit (never fabricated).
std::optional<Witness> least_totient_exact(uint64_t q, uint64_t a, uint64_t limit,
                                           const ScanOptions& opt = {});

struct LeastTotientTable {
  struct Entry {
    bool resolved = false;
    uint64_t n = 0;
    uint64_t phi_n = 0;
  };
  uint64_t q = 0;
  uint64_t limit = 0;
  std::vector<Entry> entries;  // indexed by a in [0, q)

  uint64_t unresolved_count() const;
  // max_a n over resolved entries, 0 when none
  uint64_t max_n() const;
  // log(max_n) / log(q)
  double exponent() const;
};

// One sieve pass fills every residue class with its minimal n; classes not
// hit below the limit stay unresolved. Stops early once all classes resolve.
LeastTotientTable least_totient_table(uint64_t q, uint64_t limit, const ScanOptions& opt = {});

// The existence constructions: a ≡ q-1 -> n = q; a ≡ 0 -> n = q^2; otherwise
// the smallest prime ≡ a+1 (mod q) below the search limit.
std::optional<Witness> trivial_witness(uint64_t q, uint64_t a, uint64_t prime_search_limit);

enum class SearchMode { exhaustive, meet_in_middle };

struct ProductSearchOptions {
  SearchMode mode = SearchMode::meet_in_middle;
};

// Tuple (p_1..p_m), p_j from pairwise disjoint intervals, with
// prod (p_j - 1) ≡ a (mod q), minimizing n = prod p_j; nullopt when no
// solution exists. Disjoint intervals make the primes distinct, so
// phi(prod p_j) = prod (p_j - 1).
std::optional<Witness> product_search(uint64_t q, uint64_t a,
                                      const std::vector<PrimeInterval>& intervals,
                                      const ProductSearchOptions& opt = {});

// The interval family N = q^{1/(4k-1)}, N1 = q^{1/2+0.1*eps}, k = [1/eps]:
// I_1 = primes in (N1/2, N1], I_j = primes in (2^{-j} N, 2^{-j+1} N] for
// 2 <= j <= 6k+1.
struct SearchParameters {
  double epsilon = 0;
  int k = 0;
  double n_scale = 0;   // N
  double n1_scale = 0;  // N1
  std::vector<PrimeInterval> intervals;  // intervals[0] = I_1, intervals[j-1] = I_j
  uint64_t empty_interval_count = 0;

  int interval_count() const { return static_cast<int>(intervals.size()); }
};

SearchParameters construction_parameters(uint64_t q, double epsilon);

}  // namespace totlab
