#pragma once

#include <string>

#include "sense/common.hpp"

namespace sense {

/// Binary sample dump: little-endian uint64 item count, then interleaved
/// 64-bit float I/Q pairs.
void write_iq(const std::string& path, const VecC& samples);
VecC read_iq(const std::string& path);

}  // namespace sense
