#pragma once

// Dirichlet characters mod an odd prime q, realized through the index
// (discrete log) table of the smallest primitive root g:
//
//   chi_j(n) = e(2*pi*i * j * ind(n) / (q-1)),   j in [0, q-2],
//
// so all q-1 character sums of a coefficient vector come out of one
// length-(q-1) DFT of the index-class foldings instead of (q-1)^2 work.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "totlab/arith.hpp"
#include "totlab/dft.hpp"

namespace totlab {

struct BasisOptions {
  uint64_t q_cap = 1'000'000ull;  // full index tables above this are refused
};

struct CharacterBasis {
  Modulus modulus;
  std::vector<uint32_t> index;  // index[n] = ind(n) for n in [1, q-1]; index[0] unused
  std::vector<cplx> roots;      // roots[t] = e(2*pi*i*t/(q-1))

  uint64_t q() const { return modulus.q; }
  uint64_t char_count() const { return modulus.q - 1; }

  // chi_j(n) for n not divisible by q.
  cplx chi(uint64_t j, uint64_t n) const {
    uint64_t r = n % modulus.q;
    return roots[(j * index[r]) % (modulus.q - 1)];
  }
};

CharacterBasis build_basis(uint64_t q, const BasisOptions& opt = {});

// Coefficients a_n on an explicit support; support elements divisible by q
// are rejected (chi(0) is undefined).
struct CoefficientVector {
  uint64_t q = 0;
  std::vector<uint64_t> support;
  std::vector<cplx> coeffs;
  double cap = 1.0;  // declared bound on |a_n|

  static CoefficientVector make(uint64_t q, std::vector<uint64_t> support,
                                std::vector<cplx> coeffs, double cap = 1.0);
  // Indicator vector of {p + shift : p in interval}, skipping p+shift ≡ 0
  // (mod q); the skip count is reported alongside.
  static CoefficientVector indicator(uint64_t q, const PrimeInterval& interval,
                                     int64_t shift, uint64_t* skipped = nullptr);

  double l1_norm() const;
};

// sums[j] = sum_n a_n chi_j(n); entry 0 is the principal character.
struct SumProfile {
  uint64_t q = 0;
  std::vector<cplx> sums;
  std::vector<double> magnitudes;
  double coeff_cap = 1.0;
  double coeff_l1 = 0.0;
  uint64_t support_lo = 0, support_hi = 0;  // min/max support element (0,0 when empty)

  uint64_t char_count() const { return q - 1; }
};

SumProfile all_character_sums(const CharacterBasis& basis, const CoefficientVector& coeffs);

// Quadratic-time evaluation straight from chi_j(n); the oracle the DFT
// path is checked against.
std::vector<cplx> character_sums_naive(const CharacterBasis& basis,
                                       const CoefficientVector& coeffs);

struct ShiftedPrimeSum {
  cplx value{};
  uint64_t skipped = 0;  // primes with p + shift ≡ 0 (mod q)
  uint64_t used = 0;
};

// sum over p in interval of chi_j(p + shift); requires gcd(shift, q) = 1.
ShiftedPrimeSum shifted_prime_sum(const CharacterBasis& basis, uint64_t j,
                                  const PrimeInterval& interval, int64_t shift);

// R(V) = #{ j != 0 : |sums[j]| >= V }.
uint64_t large_value_count(const SumProfile& profile, double v);

struct LevelSetCensus {
  struct Level {
    double v = 0;       // dyadic level, v = 2^m
    uint64_t count = 0; // characters with v <= |sum| < 2v
  };
  std::vector<Level> levels;  // ascending v
  uint64_t zero_count = 0;    // nonprincipal characters with |sum| <= zero_tol
  double zero_tol = 0;

  // cumulative #{ j != 0 : |sums[j]| >= v }, nonincreasing in v
  uint64_t at_least(double v) const;
};

LevelSetCensus census(const SumProfile& profile);

// sum over ALL characters (principal included) of |sums[j]|^order;
// order must be even.
double moment(const SumProfile& profile, int order);

struct HuxleyReport {
  uint64_t r = 0;
  double term_mean = 0;    // N^{2l} / V^{2l}
  double term_large = 0;   // q N^{4l} / V^{6l}
  double bound = 0;
  double ratio = 0;        // R / bound
  bool nontrivial_regime = false;  // V > N^{3/4} and N < q
  bool window_exceeds_modulus = false;  // N >= q
};

struct HuxleyOptions {
  int ell = 1;             // moment order of the underlying sum
  double cap_slack = 1e-9; // tolerated excess of coeff cap over 1
};

// Empirical constant R / (N^{2l}/V^{2l} + q N^{4l}/V^{6l}); reported, never
// asserted as a bound.
HuxleyReport huxley_ratio(const SumProfile& profile, double v, double n_window,
                          const HuxleyOptions& opt = {});

struct CongruenceCount {
  uint64_t count = 0;              // the exact tuple count
  double character_value = 0;      // (1/(q-1)) Re sum_j conj(chi_j(a)) prod_i S_i(chi_j)
  double residual = 0;             // |character_value - round(character_value)|
  bool brute_available = false;
  uint64_t brute_count = 0;
  bool consistent = true;          // brute == rounded character count (when both ran)
};

struct CongruenceOptions {
  uint64_t brute_cap = 10'000'000ull;  // enumerate tuples when prod |I_i| <= cap
  double residual_tol = 1e-6;
};

// #{ (p_1..p_m) in I_1 x..x I_m : prod (p_i - 1) ≡ a (mod q) }, computed via
// the character identity and cross-checked by enumeration when affordable.
// Primes with p ≡ 1 (mod q) cannot contribute (gcd(a,q)=1) and are excluded.
CongruenceCount congruence_count(const CharacterBasis& basis,
                                 const std::vector<PrimeInterval>& intervals, uint64_t a,
                                 const CongruenceOptions& opt = {});

}  // namespace totlab
