#pragma once

// Euler-phi tables: a materialized linear sieve for moderate limits and a
// segmented streaming pass for limits past the memory budget, with an
// optional on-disk segment cache.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "totlab/arith.hpp"

namespace totlab {

// phi(n) for 1 <= n <= limit; values[0] is unused and holds 0.
struct TotientTable {
  uint64_t limit = 0;
  std::vector<uint64_t> values;

  uint64_t phi(uint64_t n) const { return values[n]; }
};

struct SieveOptions {
  // Materialized tables above this limit are refused (resource error);
  // use stream_totients instead. 1e8 keeps the table under ~800 MB.
  uint64_t limit_cap = 100'000'000ull;
};

TotientTable sieve_totients(uint64_t limit, const SieveOptions& opt = {});

struct StreamOptions {
  uint64_t segment_size = 1u << 20;
  // When non-empty, segments are cached here; misses recompute silently.
  std::string cache_dir;
  // Cache files are keyed by (limit, segment index); pass the nominal scan
  // limit so repeated runs share files. 0 = derive from hi.
  uint64_t cache_limit_key = 0;
};

// Calls visit(first_n, phis) per segment, phis[i] = phi(first_n + i),
// covering [lo, hi] in order. Stop early by returning false from visit.
void stream_totients(uint64_t lo, uint64_t hi, const StreamOptions& opt,
                     const std::function<bool(uint64_t, std::span<const uint64_t>)>& visit);

// One segment of phi values, [lo, lo+count), given base primes covering
// sqrt(lo+count-1). Exposed for the segment cache and tests.
void totient_segment(uint64_t lo, uint64_t count, std::span<const uint64_t> base_primes,
                     std::span<uint64_t> out);

// On-disk segment cache, little-endian u64 layout:
//   magic u64, version u32, reserved u32, limit u64, segment_index u64,
//   lo u64, count u64, then count phi values (u64 each).
// Loads fail soft (return false) on any mismatch; stores fail soft too.
struct SegmentCache {
  std::string dir;
  uint64_t limit_key = 0;

  bool load(uint64_t segment_index, uint64_t lo, uint64_t count,
            std::span<uint64_t> out) const;
  void store(uint64_t segment_index, uint64_t lo, uint64_t count,
             std::span<const uint64_t> values) const;
  std::string path_for(uint64_t segment_index) const;
};

}  // namespace totlab
