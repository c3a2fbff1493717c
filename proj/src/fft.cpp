#include "flatconv/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace flatconv::fft {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x, bool inverse) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        auto a = x;
        fft_pow2(a, inverse);
        if (inverse) {
            // fft_pow2 already applied the 1/n factor
        }
        return a;
    }

    // Bluestein: X_k = c_k * sum_j (x_j c_j) conj(c_{k-j}),  c_t = e^{-i pi t^2 / n}.
    // The chirp has period 2n in t^2, so reduce t^2 mod 2n to keep the trig
    // arguments small and reproducible.
    const std::size_t m = next_pow2(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::uint64_t t2 = (static_cast<std::uint64_t>(t) * t) % (2 * n);
        const double ang = sign * kTwoPi * 0.5 * static_cast<double>(t2) / static_cast<double>(n);
        chirp[t] = {std::cos(ang), std::sin(ang)};
    }

    std::vector<std::complex<double>> a(m, {0.0, 0.0});
    std::vector<std::complex<double>> b(m, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    if (inverse) {
        const double invn = 1.0 / static_cast<double>(n);
        for (auto& z : out) z *= invn;
    }
    return out;
}

std::vector<double> cyclic_self_convolution(const std::vector<std::int64_t>& c) {
    const std::size_t n = c.size();
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = {static_cast<double>(c[i]), 0.0};
    auto spectrum = dft(x, false);
    for (auto& z : spectrum) z *= z;
    auto conv = dft(spectrum, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = conv[i].real();
    return out;
}

}  // namespace flatconv::fft
