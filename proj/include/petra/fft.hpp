#pragma once

#include <complex>
#include <span>
#include <vector>

namespace petra::fft {

/// Forward real-to-complex DFT, unnormalized. Returns the n/2 + 1 non-negative bins.
std::vector<std::complex<double>> forward(std::span<const double> x);

/// Inverse of forward() for a record of length n, normalized by 1/n.
/// Only the real part of the DC bin (and of the Nyquist bin for even n) is used.
std::vector<double> inverse(std::span<const std::complex<double>> bins, std::size_t n);

}  // namespace petra::fft
