#pragma once

#include "sense/common.hpp"

namespace sense {

/// Unnormalized forward DFT: X[j] = sum_t x[t] e^{-2*pi*i*j*t/L}.
VecC fft(const VecC& x);

/// Inverse DFT with 1/L scaling, so ifft(fft(x)) == x.
VecC ifft(const VecC& X);

/// Physical frequency of unshifted DFT bin j for an L-point transform at
/// sample rate fs, in [-fs/2, fs/2).
inline double bin_frequency(Eigen::Index j, Eigen::Index L, double fs) {
  const auto half = L / 2;
  const double k = (j < L - half) ? double(j) : double(j) - double(L);
  return k * fs / double(L);
}

}  // namespace sense
