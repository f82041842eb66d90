#pragma once

#include <complex>
#include <vector>

namespace epikit {

/// In-place radix-2 FFT; size must be a power of two. Forward uses the
/// e^{-i 2 pi j k / n} kernel and is unnormalized; the inverse divides by n.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

std::vector<std::complex<double>> fft_forward(const std::vector<double>& field);

/// Inverse transform returning the real part (realness enforced).
std::vector<double> fft_inverse_real(std::vector<std::complex<double>> spectrum);

bool is_power_of_two(int n);

} // namespace epikit
