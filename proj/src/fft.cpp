#include "epikit/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace epikit {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(static_cast<int>(n)))
        throw std::invalid_argument("fft size must be a power of two");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

std::vector<std::complex<double>> fft_forward(const std::vector<double>& field) {
    std::vector<std::complex<double>> a(field.begin(), field.end());
    fft_inplace(a, false);
    return a;
}

std::vector<double> fft_inverse_real(std::vector<std::complex<double>> spectrum) {
    fft_inplace(spectrum, true);
    std::vector<double> out(spectrum.size());
    for (std::size_t j = 0; j < spectrum.size(); ++j) out[j] = spectrum[j].real();
    return out;
}

} // namespace epikit
