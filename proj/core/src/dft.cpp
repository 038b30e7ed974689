#include "totlab/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace totlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t ceil_pow2(size_t n) {
  size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// In-place radix-2, n a power of two. Twiddles from polar per index so
// rounding does not accumulate across stages.
void fft_pow2(std::vector<cplx>& a, int sign) {
  size_t n = a.size();
  if (n <= 1) return;
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * kTwoPi / static_cast<double>(len);
    size_t half = len >> 1;
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < half; ++k) {
        cplx w = std::polar(1.0, ang * static_cast<double>(k));
        cplx u = a[i + k];
        cplx v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void fft_pow2_cached(std::vector<cplx>& a, int sign, const std::vector<cplx>& tw) {
  // tw holds exp(+2pi i k / n) for k < n/2; sign selects conjugation
  size_t n = a.size();
  if (n <= 1) return;
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    size_t half = len >> 1;
    size_t stride = n / len;
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < half; ++k) {
        cplx w = tw[k * stride];
        if (sign < 0) w = std::conj(w);
        cplx u = a[i + k];
        cplx v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void bluestein(std::vector<cplx>& x, int sign) {
  const size_t n = x.size();
  const size_t m = ceil_pow2(2 * n - 1);

  // chirp phases via i*i mod 2n: e(pi*i^2/n) is periodic in i^2 mod 2n,
  // so the angle argument stays small and exact
  std::vector<cplx> chirp(n);
  const uint64_t two_n = 2 * static_cast<uint64_t>(n);
  for (size_t i = 0; i < n; ++i) {
    uint64_t t = (static_cast<uint64_t>(i) * i) % two_n;
    chirp[i] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(t) /
                                   static_cast<double>(n));
  }

  std::vector<cplx> tw(m / 2);
  for (size_t k = 0; k < m / 2; ++k)
    tw[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));

  std::vector<cplx> u(m, cplx{});
  std::vector<cplx> v(m, cplx{});
  for (size_t i = 0; i < n; ++i) u[i] = x[i] * chirp[i];
  v[0] = std::conj(chirp[0]);
  for (size_t i = 1; i < n; ++i) v[i] = v[m - i] = std::conj(chirp[i]);

  fft_pow2_cached(u, +1, tw);
  fft_pow2_cached(v, +1, tw);
  for (size_t i = 0; i < m; ++i) u[i] *= v[i];
  fft_pow2_cached(u, -1, tw);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (size_t k = 0; k < n; ++k) x[k] = u[k] * inv_m * chirp[k];
}

}  // namespace

void dft(std::vector<cplx>& x, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +1 or -1");
  if (x.size() <= 1) return;
  if (is_pow2(x.size()))
    fft_pow2(x, sign);
  else
    bluestein(x, sign);
}

std::vector<cplx> dft_naive(const std::vector<cplx>& x, int sign) {
  size_t n = x.size();
  std::vector<cplx> out(n, cplx{});
  for (size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (size_t t = 0; t < n; ++t) {
      double ang = sign * kTwoPi * static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t] * std::polar(1.0, ang);
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace totlab
