#include "sense/sampling.hpp"

#include <cmath>

#include <Eigen/QR>

#include "sense/fft.hpp"
#include "sense/rng.hpp"

namespace sense {

std::string to_string(SamplingMatrix::Provenance p) {
  using P = SamplingMatrix::Provenance;
  switch (p) {
    case P::kMulticosetFourier: return "multicoset-fourier";
    case P::kMwcCoefficients: return "mwc-coefficients";
    case P::kSmrs: return "smrs";
    case P::kRandomDemod: return "random-demod";
    case P::kSteering: return "steering";
    case P::kCalibrated: return "calibrated";
  }
  return "?";
}

SnapshotFrames slice_snapshots(const ChannelStreams& streams, int n_frames) {
  require(n_frames >= 1, "bad-frames", "need at least one frame");
  require(streams.n_slices > 0 && streams.n_slices % 2 == 0, "bad-slices",
          "streams carry no even slice count");
  const Eigen::Index M = streams.channels();
  require(streams.length() % n_frames == 0, "bad-frames",
          "stream length not divisible by frame count");
  const Eigen::Index Ns = streams.length() / n_frames;
  require(Ns % 2 == 0, "bad-frames", "frame length must be even");
  const int N = streams.n_slices;

  SnapshotFrames out;
  out.frame_len = int(Ns);
  out.n_frames = n_frames;
  out.snapshots.resize(M, streams.length());

  const bool offset_sampling = !streams.offsets_nyq.empty();
  for (Eigen::Index i = 0; i < M; ++i) {
    const int c = offset_sampling ? streams.offsets_nyq[size_t(i)] : 0;
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    for (int fr = 0; fr < n_frames; ++fr) {
      VecC frame = streams.z.row(i).segment(Eigen::Index(fr) * Ns, Ns).transpose();
      VecC F = fft(frame);
      for (Eigen::Index g = 0; g < Ns; ++g) {
        const Eigen::Index src = (g - Ns / 2 + Ns) % Ns;
        cd v = F[src];
        if (offset_sampling) {
          // zhat_i(g) = N * (-1)^{c_i} * e^{-j2pi c_i (g - Ns/2)/(Ns N)} Z_i
          const double ph = -2.0 * kPi * double(c) * double(g - Ns / 2) / (double(Ns) * N);
          v *= double(N) * sign * std::exp(kJ * ph);
        }
        out.snapshots(i, Eigen::Index(fr) * Ns + g) = v;
      }
    }
  }
  return out;
}

SnapshotFrames nyquist_slices(const MultibandSignal& x, int n_slices, int n_frames) {
  require(n_slices > 0 && n_slices % 2 == 0, "bad-slices", "slice count must be even");
  const Eigen::Index L = x.length();
  require(L % (Eigen::Index(n_slices) * n_frames) == 0, "bad-frames",
          "signal length not divisible by n_slices * n_frames");
  const Eigen::Index frame_nyq = L / n_frames;
  const Eigen::Index Ns = frame_nyq / n_slices;
  require(Ns % 2 == 0, "bad-frames", "bins per slice must be even");

  SnapshotFrames out;
  out.frame_len = int(Ns);
  out.n_frames = n_frames;
  out.snapshots.resize(n_slices, Eigen::Index(n_frames) * Ns);
  for (int fr = 0; fr < n_frames; ++fr) {
    VecC X = fft(x.samples.segment(Eigen::Index(fr) * frame_nyq, frame_nyq));
    for (int k = 0; k < n_slices; ++k)
      for (Eigen::Index g = 0; g < Ns; ++g)
        out.snapshots(k, Eigen::Index(fr) * Ns + g) = X[slice_bin(k, g, n_slices, Ns)];
  }
  return out;
}

VecC reconstruct_from_slices(const MatC& slices, int n_slices) {
  const Eigen::Index Ns = slices.cols();
  const Eigen::Index L = Eigen::Index(n_slices) * Ns;
  VecC X = VecC::Zero(L);
  for (int k = 0; k < n_slices; ++k)
    for (Eigen::Index g = 0; g < Ns; ++g) X[slice_bin(k, g, n_slices, Ns)] = slices(k, g);
  return ifft(X);
}

std::vector<int> true_support_slices(const MultibandSignal& x, int n_slices) {
  std::vector<int> support;
  const double fs = x.f_nyq_hz / n_slices;
  auto add_band = [&](double lo, double hi) {
    for (int k = 0; k < n_slices; ++k) {
      const double center = (double(k) - n_slices / 2) * fs;
      const double slo = center - fs / 2.0, shi = center + fs / 2.0;
      if (hi > slo && lo < shi) support.push_back(k);
    }
  };
  for (const auto& t : x.truth) {
    add_band(t.carrier_hz - t.bandwidth_hz / 2.0, t.carrier_hz + t.bandwidth_hz / 2.0);
    if (!x.complex_mode)
      add_band(-t.carrier_hz - t.bandwidth_hz / 2.0, -t.carrier_hz + t.bandwidth_hz / 2.0);
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

bool probably_full_spark(const MatC& A, int trials, std::uint64_t seed, double tol) {
  const Eigen::Index M = A.rows(), N = A.cols();
  const Eigen::Index k = std::min(M, N);
  auto rng = make_rng(seed);
  std::vector<Eigen::Index> idx(size_t(N));
  for (Eigen::Index j = 0; j < N; ++j) idx[size_t(j)] = j;
  for (int t = 0; t < trials; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    MatC sub(M, k);
    for (Eigen::Index j = 0; j < k; ++j) sub.col(j) = A.col(idx[size_t(j)]);
    Eigen::ColPivHouseholderQR<MatC> qr(sub);
    qr.setThreshold(tol);
    if (qr.rank() < k) return false;
  }
  return true;
}

}  // namespace sense
