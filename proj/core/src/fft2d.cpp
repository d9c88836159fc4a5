#include "fft2d.hpp"

#include <cstring>
#include <mutex>

#include <fftw3.h>

namespace specest::detail {

namespace {

// Serializes plan creation and destruction.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void fft2d(std::vector<std::complex<double>>& data, int n1, int n2, FftSign sign) {
  fftw_complex* buf = nullptr;
  fftw_plan plan = nullptr;
  const std::size_t bytes = data.size() * sizeof(fftw_complex);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = static_cast<fftw_complex*>(fftw_malloc(bytes));
    plan = fftw_plan_dft_2d(n1, n2, buf, buf,
                            sign == FftSign::kForward ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  std::memcpy(buf, data.data(), bytes);
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data.data()), buf, bytes);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }
}

}  // namespace specest::detail
