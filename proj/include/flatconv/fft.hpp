#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace flatconv::fft {

/// In-place radix-2 transform; a.size() must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

/// DFT of arbitrary length via Bluestein's chirp-z reduction to a
/// power-of-two transform.  Forward: X_k = sum_j x_j e^{-2 pi i jk/n}.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, bool inverse);

/// Cyclic self-convolution of an integer sequence, computed through the
/// transform: out_k = sum_{i+j == k mod n} c_i c_j, returned as doubles
/// before any rounding.
std::vector<double> cyclic_self_convolution(const std::vector<std::int64_t>& c);

}  // namespace flatconv::fft
