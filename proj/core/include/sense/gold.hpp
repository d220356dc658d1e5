#pragma once

#include <cstdint>
#include <vector>

#include "sense/common.hpp"

namespace sense {

/// Fibonacci LFSR over GF(2). Taps are exponent lists, e.g. {5, 2} for
/// x^5 + x^2 + 1; a primitive polynomial gives period 2^r - 1.
class Lfsr {
 public:
  Lfsr(int degree, std::vector<int> taps, std::uint32_t init_state = 0);
  int step();  // returns the output bit
  int degree() const { return degree_; }

 private:
  int degree_;
  std::vector<int> taps_;
  std::uint32_t state_;
};

std::vector<int> lfsr_sequence(int degree, const std::vector<int>& taps, int length,
                               std::uint32_t init_state = 0);

/// Preferred-pair polynomial exponents for the Gold construction.
struct GoldPolynomials {
  int degree = 6;
  std::vector<int> taps_a{6, 1};
  std::vector<int> taps_b{6, 5, 2, 1};
};

/// Rows are +-1 Gold sequences of length `chips` (truncated when chips is
/// below 2^r - 1). Code index 0 is the first preferred sequence, 1 the
/// second, and 2 + k the XOR of the pair with the second shifted by k.
MatD gold_codes(const GoldPolynomials& polys, int n_codes, int chips);

/// Largest normalized cross-correlation magnitude between distinct rows.
double max_cross_correlation(const MatD& codes);

}  // namespace sense
