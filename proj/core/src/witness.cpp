#include "totlab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace totlab {

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::exact_minimum: return "exact-minimum";
    case WitnessKind::prime_progression: return "prime-progression";
    case WitnessKind::q_itself: return "q-itself";
    case WitnessKind::q_squared: return "q-squared";
    case WitnessKind::product_form: return "product-form";
  }
  return "?";
}

bool Witness::verify(uint64_t q, uint64_t a) const {
  uint64_t from_fact = totient_from_factorization(factorization);
  return from_fact % q == residue && residue == a % q;
}

Witness make_witness(uint64_t n, uint64_t q, WitnessKind kind) {
  Witness w;
  w.n = n;
  w.factorization = factorize(n);
  w.residue = totient_from_factorization(w.factorization) % q;
  w.kind = kind;
  return w;
}

std::optional<Witness> least_totient_exact(uint64_t q, uint64_t a, uint64_t limit,
                                           const ScanOptions& opt) {
  if (!is_prime(q)) throw std::invalid_argument("least_totient_exact: q must be prime");
  if (a >= q) throw std::invalid_argument("least_totient_exact: requires a < q");
  if (limit < 1) throw std::invalid_argument("least_totient_exact: limit must be >= 1");

  StreamOptions sopt = opt.stream;
  if (sopt.cache_limit_key == 0) sopt.cache_limit_key = limit;
  std::optional<uint64_t> hit;
  stream_totients(1, limit, sopt, [&](uint64_t first, std::span<const uint64_t> phis) {
    for (uint64_t i = 0; i < phis.size(); ++i) {
      if (phis[i] % q == a) {
        hit = first + i;
        return false;
      }
    }
    return true;
  });
  if (!hit) return std::nullopt;
  return make_witness(*hit, q, WitnessKind::exact_minimum);
}

uint64_t LeastTotientTable::unresolved_count() const {
  uint64_t c = 0;
  for (const Entry& e : entries)
    if (!e.resolved) ++c;
  return c;
}

uint64_t LeastTotientTable::max_n() const {
  uint64_t m = 0;
  for (const Entry& e : entries)
    if (e.resolved) m = std::max(m, e.n);
  return m;
}

double LeastTotientTable::exponent() const {
  uint64_t m = max_n();
  if (m == 0 || q < 2) return 0;
  return std::log(static_cast<double>(m)) / std::log(static_cast<double>(q));
}

LeastTotientTable least_totient_table(uint64_t q, uint64_t limit, const ScanOptions& opt) {
  if (!is_prime(q)) throw std::invalid_argument("least_totient_table: q must be prime");
  if (limit < 1) throw std::invalid_argument("least_totient_table: limit must be >= 1");

  LeastTotientTable t;
  t.q = q;
  t.limit = limit;
  t.entries.assign(q, {});
  uint64_t open = q;

  StreamOptions sopt = opt.stream;
  if (sopt.cache_limit_key == 0) sopt.cache_limit_key = limit;
  stream_totients(1, limit, sopt, [&](uint64_t first, std::span<const uint64_t> phis) {
    for (uint64_t i = 0; i < phis.size(); ++i) {
      uint64_t r = phis[i] % q;
      auto& e = t.entries[r];
      if (!e.resolved) {
        e.resolved = true;
        e.n = first + i;
        e.phi_n = phis[i];
        if (--open == 0) return false;
      }
    }
    return true;
  });
  return t;
}

std::optional<Witness> trivial_witness(uint64_t q, uint64_t a, uint64_t prime_search_limit) {
  if (!is_prime(q)) throw std::invalid_argument("trivial_witness: q must be prime");
  a %= q;
  if (a == q - 1) return make_witness(q, q, WitnessKind::q_itself);
  if (a == 0) {
    auto n = checked_mul(q, q);
    if (!n) throw resource_error("trivial_witness: q^2 overflows 64 bits");
    return make_witness(*n, q, WitnessKind::q_squared);
  }
  for (uint64_t c = a + 1; c <= prime_search_limit; c += q) {
    if (is_prime(c)) return make_witness(c, q, WitnessKind::prime_progression);
  }
  return std::nullopt;
}

namespace {

struct TupleBest {
  uint64_t n = UINT64_MAX;
  std::vector<uint64_t> primes;
};

void enumerate_tuples(const std::vector<PrimeInterval>& intervals, size_t depth, uint64_t q,
                      uint64_t residue_acc, uint64_t n_acc, std::vector<uint64_t>& picked,
                      uint64_t target, TupleBest& best) {
  if (depth == intervals.size()) {
    if (residue_acc == target && n_acc < best.n) {
      best.n = n_acc;
      best.primes = picked;
    }
    return;
  }
  for (uint64_t p : intervals[depth].primes) {
    uint64_t n_next = n_acc * p;  // range-checked against the interval maxima up front
    picked.push_back(p);
    enumerate_tuples(intervals, depth + 1, q, mul_mod(residue_acc, (p - 1) % q, q), n_next,
                     picked, target, best);
    picked.pop_back();
  }
}

void check_disjoint(const std::vector<PrimeInterval>& intervals) {
  for (size_t i = 0; i < intervals.size(); ++i)
    for (size_t j = i + 1; j < intervals.size(); ++j) {
      const auto& a = intervals[i];
      const auto& b = intervals[j];
      bool apart = a.hi <= b.lo || b.hi <= a.lo;
      if (!apart)
        throw std::invalid_argument("product_search: intervals must be pairwise disjoint");
    }
}

void check_product_range(const std::vector<PrimeInterval>& intervals) {
  unsigned __int128 max_prod = 1;
  for (const auto& iv : intervals) {
    uint64_t biggest = iv.primes.empty() ? 1 : iv.primes.back();
    max_prod *= biggest;
    if (max_prod > UINT64_MAX)
      throw std::invalid_argument(
          "product_search: interval maxima overflow a 64-bit product; shrink the intervals");
  }
}

Witness product_witness(const TupleBest& best, uint64_t q) {
  Witness w;
  w.n = best.n;
  std::vector<uint64_t> sorted = best.primes;
  std::sort(sorted.begin(), sorted.end());
  uint64_t residue = 1;
  for (uint64_t p : sorted) {
    w.factorization.emplace_back(p, 1);
    residue = mul_mod(residue, (p - 1) % q, q);
  }
  w.residue = residue;
  w.kind = WitnessKind::product_form;
  return w;
}

}  // namespace

std::optional<Witness> product_search(uint64_t q, uint64_t a,
                                      const std::vector<PrimeInterval>& intervals,
                                      const ProductSearchOptions& opt) {
  if (!is_prime(q)) throw std::invalid_argument("product_search: q must be prime");
  a %= q;
  if (a == 0 || gcd_u64(a, q) != 1)
    throw std::invalid_argument("product_search: a must be coprime to q");
  if (intervals.size() < 2)
    throw std::invalid_argument("product_search: need at least two intervals");
  check_disjoint(intervals);
  for (const auto& iv : intervals)
    if (iv.empty()) return std::nullopt;
  check_product_range(intervals);

  if (opt.mode == SearchMode::exhaustive) {
    TupleBest best;
    std::vector<uint64_t> picked;
    enumerate_tuples(intervals, 0, q, 1 % q, 1, picked, a, best);
    if (best.n == UINT64_MAX) return std::nullopt;
    return product_witness(best, q);
  }

  // meet in the middle: split by balancing the tuple counts of the halves,
  // index one half's partial residues, probe with a * inverse(other half)
  const size_t m = intervals.size();
  size_t split = 1;
  {
    long double best_gap = -1;
    std::vector<long double> prefix(m + 1, 1.0L);
    for (size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * static_cast<long double>(intervals[i].size());
    long double total = prefix[m];
    for (size_t s = 1; s < m; ++s) {
      long double left = prefix[s];
      long double right = total / left;
      long double gap = std::abs(left - right);
      if (best_gap < 0 || gap < best_gap) {
        best_gap = gap;
        split = s;
      }
    }
  }
  std::vector<PrimeInterval> left(intervals.begin(), intervals.begin() + static_cast<long>(split));
  std::vector<PrimeInterval> right(intervals.begin() + static_cast<long>(split), intervals.end());

  std::unordered_map<uint64_t, TupleBest> index;
  {
    std::vector<uint64_t> picked;
    // record every residue's minimal partial product
    struct Collector {
      uint64_t q;
      std::unordered_map<uint64_t, TupleBest>& map;
      void walk(const std::vector<PrimeInterval>& ivs, size_t depth, uint64_t res, uint64_t n,
                std::vector<uint64_t>& picked) {
        if (depth == ivs.size()) {
          auto& slot = map[res];
          if (n < slot.n) {
            slot.n = n;
            slot.primes = picked;
          }
          return;
        }
        for (uint64_t p : ivs[depth].primes) {
          picked.push_back(p);
          walk(ivs, depth + 1, mul_mod(res, (p - 1) % q, q), n * p, picked);
          picked.pop_back();
        }
      }
    } collector{q, index};
    collector.walk(left, 0, 1 % q, 1, picked);
  }

  TupleBest best;
  {
    struct Prober {
      uint64_t q, a;
      const std::unordered_map<uint64_t, TupleBest>& map;
      TupleBest& best;
      void walk(const std::vector<PrimeInterval>& ivs, size_t depth, uint64_t res, uint64_t n,
                std::vector<uint64_t>& picked) {
        if (depth == ivs.size()) {
          if (res == 0) return;  // a right half hitting 0 can never complete
          uint64_t need = mul_mod(a, inv_mod(res, q), q);
          auto it = map.find(need);
          if (it == map.end()) return;
          auto total = checked_mul(it->second.n, n);
          if (!total) return;  // guarded by check_product_range; belt and braces
          if (*total < best.n) {
            best.n = *total;
            best.primes = it->second.primes;
            best.primes.insert(best.primes.end(), picked.begin(), picked.end());
          }
        } else {
          for (uint64_t p : ivs[depth].primes) {
            picked.push_back(p);
            walk(ivs, depth + 1, mul_mod(res, (p - 1) % q, q), n * p, picked);
            picked.pop_back();
          }
        }
      }
    } prober{q, a, index, best};
    std::vector<uint64_t> picked;
    prober.walk(right, 0, 1 % q, 1, picked);
  }
  if (best.n == UINT64_MAX) return std::nullopt;
  return product_witness(best, q);
}

SearchParameters construction_parameters(uint64_t q, double epsilon) {
  if (!(epsilon > 0) || epsilon > 0.1)
    throw std::invalid_argument("construction_parameters: epsilon must lie in (0, 0.1]");
  if (!is_prime(q)) throw std::invalid_argument("construction_parameters: q must be prime");

  SearchParameters sp;
  sp.epsilon = epsilon;
  sp.k = static_cast<int>(std::floor(1.0 / epsilon));
  if (sp.k > 100'000)
    throw resource_error("construction_parameters: 6k+1 intervals exceed the 100000-k cap");
  const double qd = static_cast<double>(q);
  sp.n_scale = std::pow(qd, 1.0 / (4.0 * sp.k - 1.0));
  sp.n1_scale = std::pow(qd, 0.5 + 0.1 * epsilon);

  auto clip = [](double x) -> uint64_t {
    if (x <= 0) return 0;
    return static_cast<uint64_t>(std::floor(x));
  };
  sp.intervals.push_back(primes_in(clip(sp.n1_scale / 2.0), clip(sp.n1_scale)));
  for (int j = 2; j <= 6 * sp.k + 1; ++j) {
    double hi = std::ldexp(sp.n_scale, -j + 1);
    double lo = std::ldexp(sp.n_scale, -j);
    sp.intervals.push_back(primes_in(clip(lo), clip(hi)));
  }
  for (const auto& iv : sp.intervals)
    if (iv.empty()) ++sp.empty_interval_count;
  return sp;
}

}  // namespace totlab
