#include "totlab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace totlab {

CharacterBasis build_basis(uint64_t q, const BasisOptions& opt) {
  if (q > opt.q_cap)
    throw resource_error("build_basis: q exceeds index-table cap " + std::to_string(opt.q_cap));
  CharacterBasis b;
  b.modulus = Modulus::create(q);  // rejects composites and q = 2
  b.index.assign(q, 0);
  uint64_t acc = 1;
  for (uint64_t t = 0; t < q - 1; ++t) {
    b.index[acc] = static_cast<uint32_t>(t);
    acc = mul_mod(acc, b.modulus.g, q);
  }
  b.roots.resize(q - 1);
  for (uint64_t t = 0; t < q - 1; ++t)
    b.roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) /
                                     static_cast<double>(q - 1));
  return b;
}

CoefficientVector CoefficientVector::make(uint64_t q, std::vector<uint64_t> support,
                                          std::vector<cplx> coeffs, double cap) {
  if (support.size() != coeffs.size())
    throw std::invalid_argument("CoefficientVector: support/coeff length mismatch");
  double max_abs = 0;
  for (size_t i = 0; i < support.size(); ++i) {
    if (support[i] % q == 0)
      throw std::invalid_argument("CoefficientVector: support element ≡ 0 (mod q)");
    max_abs = std::max(max_abs, std::abs(coeffs[i]));
  }
  if (cap < max_abs) cap = max_abs;
  CoefficientVector v;
  v.q = q;
  v.support = std::move(support);
  v.coeffs = std::move(coeffs);
  v.cap = cap;
  return v;
}

CoefficientVector CoefficientVector::indicator(uint64_t q, const PrimeInterval& interval,
                                               int64_t shift, uint64_t* skipped) {
  std::vector<uint64_t> support;
  uint64_t skip = 0;
  for (uint64_t p : interval.primes) {
    int64_t n = static_cast<int64_t>(p) + shift;
    if (mod_floor(n, q) == 0) {
      ++skip;
      continue;
    }
    support.push_back(static_cast<uint64_t>(n >= 0 ? n : static_cast<int64_t>(mod_floor(n, q))));
  }
  if (skipped) *skipped = skip;
  std::vector<cplx> ones(support.size(), cplx{1.0, 0.0});
  return make(q, std::move(support), std::move(ones), 1.0);
}

double CoefficientVector::l1_norm() const {
  double s = 0;
  for (const cplx& c : coeffs) s += std::abs(c);
  return s;
}

SumProfile all_character_sums(const CharacterBasis& basis, const CoefficientVector& coeffs) {
  const uint64_t q = basis.q();
  if (coeffs.q != q)
    throw std::invalid_argument("all_character_sums: modulus mismatch");
  const uint64_t n_chars = q - 1;

  // fold coefficients onto index classes, then one transform gives every sum
  std::vector<cplx> folded(n_chars, cplx{});
  for (size_t i = 0; i < coeffs.support.size(); ++i) {
    uint64_t r = coeffs.support[i] % q;
    folded[basis.index[r]] += coeffs.coeffs[i];
  }
  dft(folded, +1);

  SumProfile p;
  p.q = q;
  p.sums = std::move(folded);
  p.magnitudes.resize(n_chars);
  for (uint64_t j = 0; j < n_chars; ++j) p.magnitudes[j] = std::abs(p.sums[j]);
  p.coeff_cap = coeffs.cap;
  p.coeff_l1 = coeffs.l1_norm();
  if (!coeffs.support.empty()) {
    auto [mn, mx] = std::minmax_element(coeffs.support.begin(), coeffs.support.end());
    p.support_lo = *mn;
    p.support_hi = *mx;
  }
  return p;
}

std::vector<cplx> character_sums_naive(const CharacterBasis& basis,
                                       const CoefficientVector& coeffs) {
  const uint64_t q = basis.q();
  if (coeffs.q != q)
    throw std::invalid_argument("character_sums_naive: modulus mismatch");
  std::vector<cplx> sums(q - 1, cplx{});
  for (uint64_t j = 0; j < q - 1; ++j) {
    cplx acc{};
    for (size_t i = 0; i < coeffs.support.size(); ++i)
      acc += coeffs.coeffs[i] * basis.chi(j, coeffs.support[i]);
    sums[j] = acc;
  }
  return sums;
}

ShiftedPrimeSum shifted_prime_sum(const CharacterBasis& basis, uint64_t j,
                                  const PrimeInterval& interval, int64_t shift) {
  const uint64_t q = basis.q();
  if (j >= q - 1)
    throw std::invalid_argument("shifted_prime_sum: character index out of range");
  if (gcd_u64(mod_floor(shift, q), q) != 1)
    throw std::invalid_argument("shifted_prime_sum: shift must be coprime to q");
  ShiftedPrimeSum out;
  for (uint64_t p : interval.primes) {
    uint64_t r = mod_floor(static_cast<int64_t>(p) + shift, q);
    if (r == 0) {
      ++out.skipped;
      continue;
    }
    out.value += basis.roots[(j * basis.index[r]) % (q - 1)];
    ++out.used;
  }
  return out;
}

uint64_t large_value_count(const SumProfile& profile, double v) {
  if (!(v > 0)) throw std::invalid_argument("large_value_count: V must be positive");
  uint64_t r = 0;
  for (uint64_t j = 1; j < profile.char_count(); ++j)
    if (profile.magnitudes[j] >= v) ++r;
  return r;
}

uint64_t LevelSetCensus::at_least(double v) const {
  // exact at level boundaries: levels partition by [2^m, 2^{m+1})
  uint64_t r = 0;
  for (const Level& l : levels)
    if (l.v >= v) r += l.count;
  return r;
}

LevelSetCensus census(const SumProfile& profile) {
  LevelSetCensus c;
  c.zero_tol = 1e-12 * std::max(1.0, profile.coeff_l1);
  std::vector<std::pair<int, uint64_t>> buckets;  // exponent -> count
  for (uint64_t j = 1; j < profile.char_count(); ++j) {
    double m = profile.magnitudes[j];
    if (m <= c.zero_tol) {
      ++c.zero_count;
      continue;
    }
    int e = std::ilogb(m);  // 2^e <= m < 2^{e+1}
    auto it = std::find_if(buckets.begin(), buckets.end(),
                           [e](const auto& b) { return b.first == e; });
    if (it == buckets.end())
      buckets.emplace_back(e, 1);
    else
      ++it->second;
  }
  std::sort(buckets.begin(), buckets.end());
  for (auto [e, n] : buckets) c.levels.push_back({std::ldexp(1.0, e), n});
  return c;
}

double moment(const SumProfile& profile, int order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("moment: order must be even and >= 2");
  double acc = 0;
  for (uint64_t j = 0; j < profile.char_count(); ++j) {
    double m2 = profile.magnitudes[j] * profile.magnitudes[j];
    double term = m2;
    for (int i = 2; i < order; i += 2) term *= m2;
    acc += term;
  }
  return acc;
}

HuxleyReport huxley_ratio(const SumProfile& profile, double v, double n_window,
                          const HuxleyOptions& opt) {
  if (!(v > 0)) throw std::invalid_argument("huxley_ratio: V must be positive");
  if (v > n_window) throw std::invalid_argument("huxley_ratio: requires V <= N");
  if (opt.ell < 1) throw std::invalid_argument("huxley_ratio: ell must be >= 1");
  if (profile.coeff_cap > 1.0 + opt.cap_slack)
    throw std::invalid_argument("huxley_ratio: coefficient cap exceeds 1 beyond slack");

  HuxleyReport rep;
  rep.r = large_value_count(profile, v);
  const double l = static_cast<double>(opt.ell);
  const double q = static_cast<double>(profile.q);
  rep.term_mean = std::pow(n_window / v, 2.0 * l);
  rep.term_large = q * std::pow(n_window, 4.0 * l) / std::pow(v, 6.0 * l);
  rep.bound = rep.term_mean + rep.term_large;
  rep.ratio = rep.bound > 0 ? static_cast<double>(rep.r) / rep.bound : 0.0;
  rep.nontrivial_regime = v > std::pow(n_window, 0.75) && n_window < q;
  rep.window_exceeds_modulus = n_window >= q;
  return rep;
}

namespace {

// recursive enumeration of prod (p_i - 1) ≡ a, distinct-interval tuples
void brute_count_rec(const std::vector<std::vector<uint64_t>>& residues, size_t depth,
                     uint64_t acc, uint64_t q, uint64_t a, uint64_t& count) {
  if (depth == residues.size()) {
    if (acc == a) ++count;
    return;
  }
  for (uint64_t r : residues[depth]) brute_count_rec(residues, depth + 1, mul_mod(acc, r, q), q, a, count);
}

}  // namespace

CongruenceCount congruence_count(const CharacterBasis& basis,
                                 const std::vector<PrimeInterval>& intervals, uint64_t a,
                                 const CongruenceOptions& opt) {
  const uint64_t q = basis.q();
  a %= q;
  if (a == 0 || gcd_u64(a, q) != 1)
    throw std::invalid_argument("congruence_count: a must be coprime to q");
  if (intervals.empty())
    throw std::invalid_argument("congruence_count: need at least one interval");

  CongruenceCount out;

  // character route: one DFT per interval on the shifted-prime indicator
  std::vector<SumProfile> profiles;
  profiles.reserve(intervals.size());
  for (const auto& iv : intervals)
    profiles.push_back(all_character_sums(basis, CoefficientVector::indicator(q, iv, -1)));

  const uint64_t n_chars = q - 1;
  const uint64_t ind_a = basis.index[a];
  cplx acc{};
  for (uint64_t j = 0; j < n_chars; ++j) {
    cplx prod = std::conj(basis.roots[(j * ind_a) % n_chars]);
    for (const auto& pr : profiles) prod *= pr.sums[j];
    acc += prod;
  }
  out.character_value = acc.real() / static_cast<double>(n_chars);
  double rounded = std::round(out.character_value);
  out.residual = std::abs(out.character_value - rounded);
  if (rounded < 0) rounded = 0;
  out.count = static_cast<uint64_t>(rounded);

  // brute route when affordable
  unsigned __int128 tuples = 1;
  for (const auto& iv : intervals) tuples *= iv.size();
  if (tuples <= opt.brute_cap) {
    std::vector<std::vector<uint64_t>> residues;
    for (const auto& iv : intervals) {
      std::vector<uint64_t> rs;
      for (uint64_t p : iv.primes) {
        uint64_t r = (p - 1) % q;
        if (r != 0) rs.push_back(r);
      }
      residues.push_back(std::move(rs));
    }
    uint64_t cnt = 0;
    brute_count_rec(residues, 0, 1 % q, q, a, cnt);
    out.brute_available = true;
    out.brute_count = cnt;
    out.consistent = (cnt == out.count) && (out.residual < opt.residual_tol);
  }
  return out;
}

}  // namespace totlab
