#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sense/common.hpp"
#include "sense/signal.hpp"

namespace sense {

// Slice convention used project-wide: the Nyquist band is split into an even
// number N of slices of width f_s, slice k (0-based) centered at
// (k - N/2) * f_s. The in-slice frequency ftilde runs over [0, f_s), so the
// physical frequency of (slice k, offset ftilde) is
//   (k - N/2) * f_s + ftilde - f_s/2.
// On an L-point Nyquist grid with L = N * Ls this makes (slice k, bin g)
// correspond to the unshifted DFT bin ((k - N/2) * Ls + g - Ls/2) mod L.

/// Unshifted Nyquist-grid DFT bin holding (slice k, in-slice bin g).
inline Eigen::Index slice_bin(int slice, Eigen::Index g, int n_slices, Eigen::Index bins_per_slice) {
  const Eigen::Index L = Eigen::Index(n_slices) * bins_per_slice;
  Eigen::Index b = (Eigen::Index(slice) - n_slices / 2) * bins_per_slice + g - bins_per_slice / 2;
  b %= L;
  return b < 0 ? b + L : b;
}

struct SamplingMatrix {
  enum class Provenance {
    kMulticosetFourier,
    kMwcCoefficients,
    kSmrs,
    kRandomDemod,
    kSteering,
    kCalibrated,
  };

  MatC entries;                    // M x N map from slices to channels
  Provenance provenance = Provenance::kMulticosetFourier;
  std::vector<double> row_rates_hz;  // per-row sampling rate

  Eigen::Index channels() const { return entries.rows(); }
  Eigen::Index slices() const { return entries.cols(); }
  double total_rate_hz() const {
    double acc = 0.0;
    for (double r : row_rates_hz) acc += r;
    return acc;
  }
};

std::string to_string(SamplingMatrix::Provenance p);

/// Low-rate sample streams, one row per (physical or virtual) channel.
struct ChannelStreams {
  MatC z;
  double f_s_hz = 0.0;
  int n_slices = 0;               // N of the slice model these streams obey
  std::vector<int> offsets_nyq;   // per-channel time offset in Nyquist periods
                                  // (multicoset cosets); empty means aligned
  Eigen::Index channels() const { return z.rows(); }
  Eigen::Index length() const { return z.cols(); }
};

/// Corrected frequency-domain snapshots: column (frame, g) holds the vector
/// zhat(ftilde = g*fs/Ns) satisfying zhat = A * xhat exactly for the
/// producing sampler's matrix. The per-channel timing-phase compensation for
/// offset sampling (and the slice-model normalization) are applied here, not
/// in the raw streams.
struct SnapshotFrames {
  MatC snapshots;  // M x (n_frames * frame_len), frame-major columns
  int frame_len = 0;
  int n_frames = 0;
};

SnapshotFrames slice_snapshots(const ChannelStreams& streams, int n_frames);

/// Ground-truth slice states from the Nyquist-grid signal, same layout as
/// slice_snapshots: xhat_k(frame, g) = frame-local DFT at slice_bin(k, g).
SnapshotFrames nyquist_slices(const MultibandSignal& x, int n_slices, int n_frames);

/// Inverse of nyquist_slices for one frame: scatter slice spectra back to the
/// Nyquist grid and return the time-domain signal.
VecC reconstruct_from_slices(const MatC& slices, int n_slices);

/// Slice indices (0-based, centered convention) intersecting any declared
/// band of the signal.
std::vector<int> true_support_slices(const MultibandSignal& x, int n_slices);

/// Probabilistic full-spark check: draws `trials` random column subsets of
/// size min(M, N) and verifies they have full numerical rank.
bool probably_full_spark(const MatC& A, int trials, std::uint64_t seed, double tol = 1e-9);

}  // namespace sense
