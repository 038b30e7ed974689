#pragma once

// Complex DFT of arbitrary length: iterative radix-2 for powers of two,
// Bluestein's chirp transform otherwise. Character sums need exact odd
// lengths (q-1 is almost never a power of two).

#include <complex>
#include <cstdint>
#include <vector>

namespace totlab {

using cplx = std::complex<double>;

// X[k] = sum_n x[n] * exp(sign * 2*pi*i * n*k / N), unnormalized.
// sign = +1 matches the character convention chi_j(n) = e(+2pi i j ind(n)/(q-1)).
void dft(std::vector<cplx>& x, int sign);

// Reference quadratic-time evaluation, used as the independent oracle.
std::vector<cplx> dft_naive(const std::vector<cplx>& x, int sign);

}  // namespace totlab
