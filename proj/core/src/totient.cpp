#include "totlab/totient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace totlab {

namespace {

constexpr uint64_t kCacheMagic = 0x54474553544f54ull;  // "TOTSEGT" LE
constexpr uint32_t kCacheVersion = 1;

void put_u64(std::string& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint64_t get_u64(const char* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

uint32_t get_u32(const char* p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

std::vector<uint64_t> base_primes_to(uint64_t n) {
  std::vector<uint8_t> is(n + 1, 1);
  std::vector<uint64_t> primes;
  for (uint64_t i = 2; i <= n; ++i) {
    if (!is[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) is[j] = 0;
  }
  return primes;
}

}  // namespace

TotientTable sieve_totients(uint64_t limit, const SieveOptions& opt) {
  if (limit < 1) throw std::invalid_argument("sieve_totients: limit must be >= 1");
  if (limit > opt.limit_cap)
    throw resource_error("sieve_totients: limit exceeds table cap " +
                         std::to_string(opt.limit_cap) + "; use stream_totients");
  TotientTable t;
  t.limit = limit;
  t.values.assign(limit + 1, 0);
  t.values[1] = 1;

  // linear sieve over smallest prime factors
  std::vector<uint64_t> primes;
  std::vector<uint8_t> composite(limit + 1, 0);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      t.values[i] = i - 1;
    }
    for (uint64_t p : primes) {
      if (p > limit / i) break;
      composite[i * p] = 1;
      if (i % p == 0) {
        t.values[i * p] = t.values[i] * p;
        break;
      }
      t.values[i * p] = t.values[i] * (p - 1);
    }
  }
  return t;
}

void totient_segment(uint64_t lo, uint64_t count, std::span<const uint64_t> base_primes,
                     std::span<uint64_t> out) {
  std::vector<uint64_t> rem(count);
  for (uint64_t i = 0; i < count; ++i) {
    rem[i] = lo + i;
    out[i] = 1;
  }
  if (lo == 0) {
    out[0] = 0;  // phi(0) is not defined; keep slot zeroed
    rem[0] = 1;
  }
  uint64_t hi = lo + count - 1;
  for (uint64_t p : base_primes) {
    if (p > hi / p) break;  // p*p > hi
    uint64_t start = std::max(p, ((lo + p - 1) / p) * p);
    for (uint64_t m = start; m <= hi; m += p) {
      uint64_t i = m - lo;
      if (rem[i] % p != 0) continue;
      uint64_t pk = 1;
      rem[i] /= p;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        pk *= p;
      }
      out[i] *= pk * (p - 1);
    }
  }
  for (uint64_t i = 0; i < count; ++i) {
    if (rem[i] > 1) out[i] *= rem[i] - 1;
  }
}

void stream_totients(uint64_t lo, uint64_t hi, const StreamOptions& opt,
                     const std::function<bool(uint64_t, std::span<const uint64_t>)>& visit) {
  if (lo > hi) throw std::invalid_argument("stream_totients: requires lo <= hi");
  if (lo < 1) lo = 1;

  uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  auto base = base_primes_to(std::max<uint64_t>(root, 2));

  SegmentCache cache;
  bool use_cache = !opt.cache_dir.empty();
  if (use_cache) {
    cache.dir = opt.cache_dir;
    cache.limit_key = opt.cache_limit_key ? opt.cache_limit_key : hi;
  }

  uint64_t seg = std::max<uint64_t>(opt.segment_size, 1024);
  std::vector<uint64_t> phis(seg);
  // segment indices are absolute (from n=1) so cached files are position-stable
  for (uint64_t index = (lo - 1) / seg;; ++index) {
    uint64_t s = 1 + index * seg;
    if (s > hi) break;
    uint64_t e = std::min(hi, s + seg - 1);
    uint64_t count = e - s + 1;
    bool hit = use_cache && count == seg && cache.load(index, s, count, {phis.data(), count});
    if (!hit) {
      totient_segment(s, count, base, {phis.data(), count});
      if (use_cache && count == seg) cache.store(index, s, count, {phis.data(), count});
    }
    uint64_t off = lo > s ? lo - s : 0;
    if (!visit(s + off, {phis.data() + off, count - off})) return;
  }
}

std::string SegmentCache::path_for(uint64_t segment_index) const {
  return dir + "/totseg_" + std::to_string(limit_key) + "_" + std::to_string(segment_index) + ".bin";
}

bool SegmentCache::load(uint64_t segment_index, uint64_t lo, uint64_t count,
                        std::span<uint64_t> out) const {
  std::ifstream f(path_for(segment_index), std::ios::binary);
  if (!f) return false;
  char header[48];
  if (!f.read(header, sizeof header)) return false;
  if (get_u64(header) != kCacheMagic) return false;
  if (get_u32(header + 8) != kCacheVersion) return false;
  if (get_u64(header + 16) != limit_key) return false;
  if (get_u64(header + 24) != segment_index) return false;
  if (get_u64(header + 32) != lo) return false;
  if (get_u64(header + 40) != count) return false;
  std::vector<char> raw(count * 8);
  if (!f.read(raw.data(), static_cast<std::streamsize>(raw.size()))) return false;
  for (uint64_t i = 0; i < count; ++i) out[i] = get_u64(raw.data() + 8 * i);
  return true;
}

void SegmentCache::store(uint64_t segment_index, uint64_t lo, uint64_t count,
                         std::span<const uint64_t> values) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  std::string buf;
  buf.reserve(48 + count * 8);
  put_u64(buf, kCacheMagic);
  put_u32(buf, kCacheVersion);
  put_u32(buf, 0);
  put_u64(buf, limit_key);
  put_u64(buf, segment_index);
  put_u64(buf, lo);
  put_u64(buf, count);
  for (uint64_t i = 0; i < count; ++i) put_u64(buf, values[i]);
  std::string tmp = path_for(segment_index) + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) return;
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) {
      f.close();
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, path_for(segment_index), ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace totlab
