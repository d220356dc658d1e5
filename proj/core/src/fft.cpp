#include "sense/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace sense {

namespace {
// FFTW plan creation is not thread safe; execution of independent plans is.
std::mutex g_plan_mutex;

VecC run_transform(const VecC& in, int sign) {
  VecC out(in.size());
  const int n = static_cast<int>(in.size());
  if (n == 0) return out;
  // FFTW_ESTIMATE does not touch the input buffers, so planning on the
  // caller's data (via const_cast) is safe.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}
}  // namespace

VecC fft(const VecC& x) { return run_transform(x, FFTW_FORWARD); }

VecC ifft(const VecC& X) {
  VecC x = run_transform(X, FFTW_BACKWARD);
  if (X.size() > 0) x /= double(X.size());
  return x;
}

}  // namespace sense
