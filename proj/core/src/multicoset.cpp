#include "sense/multicoset.hpp"

#include <cmath>

namespace sense {

void CosetPattern::validate() const {
  require(block_len >= 1, "coset-out-of-range", "block length must be positive");
  require(!cosets.empty() && int(cosets.size()) <= block_len, "coset-out-of-range",
          "need 1..N cosets");
  for (size_t i = 0; i < cosets.size(); ++i) {
    require(cosets[i] >= 0 && cosets[i] < block_len, "coset-out-of-range",
            "coset outside [0, N)");
    if (i > 0)
      require(cosets[i] > cosets[i - 1], "coset-out-of-range", "cosets must be strictly increasing");
  }
}

ChannelStreams multicoset_sample(const MultibandSignal& x, const CosetPattern& p) {
  p.validate();
  require(x.length() % p.block_len == 0, "bad-grid", "grid length must be divisible by N");
  const Eigen::Index Ls = x.length() / p.block_len;

  ChannelStreams out;
  out.f_s_hz = x.f_nyq_hz / p.block_len;
  out.n_slices = p.block_len;
  out.offsets_nyq = p.cosets;
  out.z.resize(p.channels(), Ls);
  for (int i = 0; i < p.channels(); ++i)
    for (Eigen::Index m = 0; m < Ls; ++m)
      out.z(i, m) = x.samples[m * p.block_len + p.cosets[size_t(i)]];
  return out;
}

SamplingMatrix build_multicoset_matrix(const CosetPattern& p, double f_nyq_hz) {
  p.validate();
  SamplingMatrix A;
  A.provenance = SamplingMatrix::Provenance::kMulticosetFourier;
  A.entries.resize(p.channels(), p.block_len);
  for (int i = 0; i < p.channels(); ++i)
    for (int k = 0; k < p.block_len; ++k)
      A.entries(i, k) = std::exp(kJ * (2.0 * kPi * double(p.cosets[size_t(i)]) * double(k) /
                                       double(p.block_len)));
  const double fs = f_nyq_hz > 0.0 ? f_nyq_hz / p.block_len : 0.0;
  A.row_rates_hz.assign(size_t(p.channels()), fs);
  return A;
}

}  // namespace sense
