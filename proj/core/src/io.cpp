#include "sense/io.hpp"

#include <cstdint>
#include <fstream>

namespace sense {

void write_iq(const std::string& path, const VecC& samples) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "io-error", "cannot open " + path + " for writing");
  const std::uint64_t n = static_cast<std::uint64_t>(samples.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    const double iq[2] = {samples[i].real(), samples[i].imag()};
    out.write(reinterpret_cast<const char*>(iq), sizeof(iq));
  }
  require(out.good(), "io-error", "short write to " + path);
}

VecC read_iq(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "io-error", "cannot open " + path);
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  VecC samples(static_cast<Eigen::Index>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    double iq[2];
    in.read(reinterpret_cast<char*>(iq), sizeof(iq));
    samples[static_cast<Eigen::Index>(i)] = cd(iq[0], iq[1]);
  }
  require(in.good(), "io-error", "truncated I/Q file " + path);
  return samples;
}

}  // namespace sense
