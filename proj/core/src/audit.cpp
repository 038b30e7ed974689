#include "totlab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace totlab {

namespace {

AuditIntervalStats interval_stats(const PrimeInterval& iv, uint64_t q) {
  AuditIntervalStats s;
  s.lo = iv.lo;
  s.hi = iv.hi;
  s.size = iv.size();
  s.window = iv.window();
  for (uint64_t p : iv.primes)
    if ((p - 1) % q == 0)
      ++s.excluded;
  s.reduced_size = s.size - s.excluded;
  return s;
}

std::vector<uint64_t> reduced_residues(const PrimeInterval& iv, uint64_t q) {
  std::vector<uint64_t> rs;
  rs.reserve(iv.size());
  for (uint64_t p : iv.primes) {
    uint64_t r = (p - 1) % q;
    if (r != 0) rs.push_back(r);
  }
  return rs;
}

double int_pow(double base, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// moment orders scale with the tuple multiplicity m standing in for 6k:
// 2, 2m, the tripled scale 3m, and the paired scale 4m/3 - 2, rounded to
// the nearest even order >= 2
std::vector<int> audit_orders(int m) {
  auto to_even = [](double x) {
    int e = static_cast<int>(std::lround(x / 2.0)) * 2;
    return std::max(2, e);
  };
  std::vector<int> orders = {2, to_even(2.0 * m), to_even(3.0 * m), to_even(4.0 * m / 3.0 - 2.0)};
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  return orders;
}

// exact count of 2t-tuples with equal t-fold products of p-1, via a
// histogram of t-fold products (sum of squared multiplicities)
EqualProductsReport equal_products(const PrimeInterval& iv, uint64_t q, int t,
                                   const SumProfile& profile, const AuditOptions& opt) {
  EqualProductsReport rep;
  rep.tuple_len = t;
  auto rs = reduced_residues(iv, q);
  rep.diagonal = 1;
  for (int i = 0; i < t; ++i) {
    auto d = checked_mul(rep.diagonal, rs.size());
    rep.diagonal = d ? *d : UINT64_MAX;
  }

  double tuples = std::pow(static_cast<double>(rs.size()), t);
  if (tuples <= static_cast<double>(opt.brute_cap) && !rs.empty()) {
    rep.available = true;
    // shifted values p-1 as integers for the equality count
    std::vector<uint64_t> vals;
    for (uint64_t p : iv.primes)
      if ((p - 1) % q != 0) vals.push_back(p - 1);

    unsigned __int128 max_prod = 1;
    uint64_t max_val = *std::max_element(vals.begin(), vals.end());
    bool overflow = false;
    for (int i = 0; i < t; ++i) {
      max_prod *= max_val;
      if (max_prod > UINT64_MAX) {
        overflow = true;
        break;
      }
    }
    rep.products_below_q = !overflow && max_prod < q;

    std::unordered_map<uint64_t, uint64_t> by_residue;
    std::unordered_map<uint64_t, uint64_t> by_value;
    std::vector<size_t> pick(static_cast<size_t>(t), 0);
    while (true) {
      uint64_t res = 1 % q;
      unsigned __int128 val = 1;
      for (int i = 0; i < t; ++i) {
        res = mul_mod(res, vals[pick[static_cast<size_t>(i)]] % q, q);
        val *= vals[pick[static_cast<size_t>(i)]];
      }
      ++by_residue[res];
      if (!overflow) ++by_value[static_cast<uint64_t>(val)];
      int i = t - 1;
      for (; i >= 0; --i) {
        if (++pick[static_cast<size_t>(i)] < vals.size()) break;
        pick[static_cast<size_t>(i)] = 0;
      }
      if (i < 0) break;
    }
    for (auto& [r, c] : by_residue) rep.congruent += c * c;
    if (!overflow)
      for (auto& [v, c] : by_value) rep.equal += c * c;
    if (rep.products_below_q)
      rep.congruence_forces_equality_ok = (rep.congruent == rep.equal);
  }

  rep.moment_value = moment(profile, 2 * t);
  double expected = static_cast<double>(profile.q - 1) * static_cast<double>(rep.congruent);
  if (rep.available && expected < 9.0e15) {  // exactly representable in double
    rep.moment_residual = std::abs(rep.moment_value - expected);
    rep.identity_checked = true;
  }
  return rep;
}

}  // namespace

size_t choose_audit_interval(const CharacterBasis& basis,
                             const std::vector<PrimeInterval>& candidates, int m,
                             const PrimeInterval& interval_i1) {
  if (candidates.empty())
    throw std::invalid_argument("choose_audit_interval: no candidates");
  auto p1 = all_character_sums(basis, CoefficientVector::indicator(basis.q(), interval_i1, -1));
  size_t best = 0;
  double best_sum = -1;
  for (size_t c = 0; c < candidates.size(); ++c) {
    auto pi = all_character_sums(basis, CoefficientVector::indicator(basis.q(), candidates[c], -1));
    double s = 0;
    for (uint64_t j = 1; j < basis.char_count(); ++j)
      s += int_pow(pi.magnitudes[j], m) * p1.magnitudes[j];
    if (s > best_sum) {
      best_sum = s;
      best = c;
    }
  }
  return best;
}

AuditReport proof_audit(const CharacterBasis& basis, const PrimeInterval& interval_i, int m,
                        const PrimeInterval& interval_i1, uint64_t a, const AuditOptions& opt) {
  const uint64_t q = basis.q();
  a %= q;
  if (a == 0) throw std::invalid_argument("proof_audit: a must be coprime to q");
  if (m < 1) throw std::invalid_argument("proof_audit: m must be >= 1");

  double tuple_budget = std::pow(static_cast<double>(std::max<uint64_t>(interval_i.size(), 1)), m) *
                        static_cast<double>(std::max<uint64_t>(interval_i1.size(), 1));
  if (tuple_budget > 1e14)
    throw resource_error("proof_audit: interval tuple space too large for exact evaluation");

  AuditReport rep;
  rep.q = q;
  rep.a = a;
  rep.m = m;
  rep.interval_i = interval_stats(interval_i, q);
  rep.interval_i1 = interval_stats(interval_i1, q);

  auto prof_i = all_character_sums(basis, CoefficientVector::indicator(q, interval_i, -1));
  auto prof_i1 = all_character_sums(basis, CoefficientVector::indicator(q, interval_i1, -1));

  // exact solution count, both routes
  {
    std::vector<PrimeInterval> ivs(static_cast<size_t>(m), interval_i);
    ivs.push_back(interval_i1);
    CongruenceOptions copt;
    copt.brute_cap = opt.brute_cap;
    copt.residual_tol = opt.residual_tol;
    auto cc = congruence_count(basis, ivs, a, copt);
    rep.brute_available = cc.brute_available;
    rep.count_brute = cc.brute_count;
    rep.count_character = cc.character_value;
    rep.count_residual = cc.residual;
    rep.count = cc.count;
    rep.identity_ok = cc.consistent && cc.residual < opt.residual_tol;
  }

  rep.principal_term = int_pow(static_cast<double>(rep.interval_i.reduced_size), m) *
                       static_cast<double>(rep.interval_i1.reduced_size);
  for (uint64_t j = 1; j < q - 1; ++j)
    rep.nonprincipal_abs_sum += int_pow(prof_i.magnitudes[j], m) * prof_i1.magnitudes[j];

  // joint dyadic census over (|S_I|, |S_I1|)
  double tol_i = 1e-12 * std::max(1.0, prof_i.coeff_l1);
  double tol_i1 = 1e-12 * std::max(1.0, prof_i1.coeff_l1);
  {
    std::map<std::pair<int, int>, uint64_t> buckets;
    for (uint64_t j = 1; j < q - 1; ++j) {
      double mi = prof_i.magnitudes[j], mi1 = prof_i1.magnitudes[j];
      if (mi <= tol_i || mi1 <= tol_i1) {
        ++rep.joint_zero_count;
        continue;
      }
      ++buckets[{std::ilogb(mi), std::ilogb(mi1)}];
    }
    for (auto& [key, cnt] : buckets)
      rep.joint_census.push_back({std::ldexp(1.0, key.first), std::ldexp(1.0, key.second), cnt});
    for (const JointLevel& l : rep.joint_census) {
      double contribution = static_cast<double>(l.count) * int_pow(l.v, m) * l.v1;
      if (contribution > rep.max_level_contribution) {
        rep.max_level_contribution = contribution;
        rep.max_level = l;
      }
    }
  }

  for (int order : audit_orders(m)) rep.moments_i[order] = moment(prof_i, order);
  rep.moment_i1_4 = moment(prof_i1, 4);

  auto push = [&](std::string name, double lhs, double rhs, bool asserted) {
    AuditInequality iq;
    iq.name = std::move(name);
    iq.lhs = lhs;
    iq.rhs = rhs;
    iq.ratio = rhs != 0 ? lhs / rhs : 0.0;
    iq.asserted = asserted;
    if (asserted) {
      iq.holds = lhs <= rhs * (1.0 + opt.rel_slack) + opt.rel_slack;
      if (!iq.holds) rep.all_exact_checks_pass = false;
    }
    rep.inequalities.push_back(std::move(iq));
  };

  // |(q-1)count - principal| <= sum_{chi!=chi0} |S_I|^m |S_I1|, exact
  push("count_minus_main_vs_offdiagonal",
       std::abs(static_cast<double>(q - 1) * static_cast<double>(rep.count) - rep.principal_term),
       rep.nonprincipal_abs_sum, true);
  // the separation step as reported sides
  push("principal_vs_offdiagonal", rep.principal_term, rep.nonprincipal_abs_sum, false);
  // level with the largest contribution is dominated by the full sum, exact
  push("max_level_vs_offdiagonal", rep.max_level_contribution, rep.nonprincipal_abs_sum, true);
  // the sum is dominated by #levels times the doubled max level, exact up
  // to the below-tolerance characters the census drops
  double census_slack = static_cast<double>(q) *
                        (tol_i * std::max(1.0, prof_i1.coeff_l1) +
                         tol_i1 * std::max(1.0, int_pow(prof_i.coeff_l1, m)));
  push("offdiagonal_vs_level_bound", rep.nonprincipal_abs_sum,
       static_cast<double>(rep.joint_census.size()) * rep.max_level_contribution *
               std::ldexp(1.0, m + 1) +
           census_slack,
       true);

  // Chebyshev at every census level of |S_I|, all audited orders: exact
  {
    auto c_i = census(prof_i);
    for (int order : audit_orders(m)) {
      double worst_lhs = 0, at_rhs = rep.moments_i[order];
      for (const auto& level : c_i.levels)
        worst_lhs = std::max(worst_lhs,
                             static_cast<double>(level.count) * int_pow(level.v, order));
      push("chebyshev_i_order" + std::to_string(order), worst_lhs, at_rhs, true);
    }
    auto c_i1 = census(prof_i1);
    double worst = 0;
    for (const auto& level : c_i1.levels)
      worst = std::max(worst, static_cast<double>(level.count) * int_pow(level.v, 4));
    push("chebyshev_i1_order4", worst, rep.moment_i1_4, true);
  }

  // asymptotic-flavored comparisons: reported only
  {
    double w = static_cast<double>(rep.interval_i.window);
    double w1 = static_cast<double>(rep.interval_i1.window);
    push("triple_scale_vs_q_window",
         static_cast<double>(rep.max_level.count) * int_pow(rep.max_level.v, 3 * m),
         static_cast<double>(q) * int_pow(w, 2 * m), false);
    push("i1_fourth_power_vs_window",
         static_cast<double>(rep.max_level.count) * int_pow(rep.max_level.v1, 4),
         int_pow(w1, 4), false);
    push("main_term_vs_max_level", int_pow(w, m) * w1, rep.max_level_contribution, false);
  }

  rep.equal_products_i = equal_products(interval_i, q, m, prof_i, opt);
  rep.equal_products_i1 = equal_products(interval_i1, q, 2, prof_i1, opt);

  auto check_products = [&](const EqualProductsReport& ep) {
    if (ep.available && ep.products_below_q && !ep.congruence_forces_equality_ok)
      rep.all_exact_checks_pass = false;
    if (ep.identity_checked && ep.moment_residual >= opt.residual_tol * (1.0 + ep.moment_value))
      rep.all_exact_checks_pass = false;
  };
  check_products(rep.equal_products_i);
  check_products(rep.equal_products_i1);
  if (!rep.identity_ok) rep.all_exact_checks_pass = false;

  return rep;
}

}  // namespace totlab
