#pragma once

// Desk-scale audit of the character-sum chain behind the product-form
// construction: exact solution counts both by enumeration and by the
// orthogonality identity, joint (V, V1) level-set censuses of the two
// shifted-prime sums, Chebyshev-type moment inequalities (exact, asserted)
// and the asymptotic-flavored comparisons (reported, never asserted).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "totlab/characters.hpp"

namespace totlab {

struct AuditIntervalStats {
  uint64_t lo = 0, hi = 0;
  uint64_t size = 0;          // primes in the interval
  uint64_t reduced_size = 0;  // excluding p ≡ 1 (mod q)
  uint64_t excluded = 0;      // p ≡ 1 (mod q)
  uint64_t window = 0;        // hi - lo
};

struct AuditInequality {
  std::string name;
  double lhs = 0, rhs = 0;
  double ratio = 0;      // lhs / rhs, 0 when rhs = 0
  bool asserted = false; // exact by construction; must hold
  bool holds = true;
};

// counts of 2t-tuples from an interval with equal t-fold products of p-1,
// both mod q (congruent) and over the integers (equal)
struct EqualProductsReport {
  int tuple_len = 0;  // t
  bool available = false;
  uint64_t congruent = 0;
  uint64_t equal = 0;
  uint64_t diagonal = 0;  // reduced_size^t
  bool products_below_q = false;      // max (p-1)^t < q forces congruent == equal
  bool congruence_forces_equality_ok = true;
  double moment_value = 0;     // Sum_chi |S|^{2t}
  double moment_residual = 0;  // vs (q-1) * congruent
  bool identity_checked = false;
};

struct JointLevel {
  double v = 0, v1 = 0;
  uint64_t count = 0;
};

struct AuditOptions {
  uint64_t brute_cap = 10'000'000ull;  // tuple budget for exact enumeration
  double residual_tol = 1e-6;
  double rel_slack = 1e-9;  // rounding slack on exact floating comparisons
};

struct AuditReport {
  uint64_t q = 0, a = 0;
  int m = 0;
  AuditIntervalStats interval_i, interval_i1;

  bool brute_available = false;
  uint64_t count_brute = 0;
  double count_character = 0;
  double count_residual = 0;
  uint64_t count = 0;      // rounded character count (== brute when available)
  bool identity_ok = true;

  double principal_term = 0;        // |I_red|^m * |I1_red|
  double nonprincipal_abs_sum = 0;  // sum_{chi != chi0} |S_I|^m |S_I1|

  std::vector<JointLevel> joint_census;
  uint64_t joint_zero_count = 0;
  JointLevel max_level;
  double max_level_contribution = 0;  // R* V*^m V1*

  std::map<int, double> moments_i;  // order -> Sum_chi |S_I|^order
  double moment_i1_4 = 0;

  std::vector<AuditInequality> inequalities;
  EqualProductsReport equal_products_i;   // t = m
  EqualProductsReport equal_products_i1;  // t = 2

  bool all_exact_checks_pass = true;
};

// Congruence audited: (p_1-1)...(p_m-1)(p'-1) ≡ a (mod q), p_i in I (the
// same interval m times; repetition allowed), p' in I1.
AuditReport proof_audit(const CharacterBasis& basis, const PrimeInterval& interval_i, int m,
                        const PrimeInterval& interval_i1, uint64_t a,
                        const AuditOptions& opt = {});

// When several candidate intervals are offered, picks the index maximizing
// sum_{chi != chi0} |S_I|^m |S_I1| (the level-decomposition target).
size_t choose_audit_interval(const CharacterBasis& basis,
                             const std::vector<PrimeInterval>& candidates, int m,
                             const PrimeInterval& interval_i1);

}  // namespace totlab
