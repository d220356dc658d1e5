#pragma once

#include <vector>

#include "sense/sampling.hpp"

namespace sense {

/// Coset selection for interleaved sampling: within every block of N Nyquist
/// periods, samples are kept at offsets 0 <= c_1 < ... < c_M < N.
struct CosetPattern {
  int block_len = 0;       // N
  std::vector<int> cosets;  // strictly increasing, in [0, N)

  int channels() const { return int(cosets.size()); }
  void validate() const;
};

/// Keeps x(n N T_nyq + c_i T_nyq) in row i; per-channel rate f_nyq / N.
ChannelStreams multicoset_sample(const MultibandSignal& x, const CosetPattern& p);

/// Partial Fourier sampling matrix with entry (i, k) = e^{j 2 pi c_i k / N}.
/// The slice-model normalization (factor N and the per-channel timing phase)
/// is applied by slice_snapshots, not folded into the matrix.
SamplingMatrix build_multicoset_matrix(const CosetPattern& p, double f_nyq_hz = 0.0);

}  // namespace sense
