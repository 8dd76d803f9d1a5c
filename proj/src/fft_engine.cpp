#include "fft_engine.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace thermogas::detail {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftEngine::FftEngine(int dim, int n) {
  size_ = 1;
  std::vector<int> dims(static_cast<std::size_t>(dim), n);
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);
  auto* scratch = fftw_alloc_complex(size_);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft(dim, dims.data(), scratch, scratch, FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft(dim, dims.data(), scratch, scratch, FFTW_BACKWARD, flags);
  fftw_free(scratch);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    throw std::runtime_error("FFTW failed to build a plan");
  }
}

FftEngine::~FftEngine() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

const FftEngine& FftEngine::for_grid(const Grid& grid) {
  // Touch the mutex first so it outlives the cache during static destruction.
  auto& mutex = planner_mutex();
  static std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot = std::make_unique<FftEngine>(grid.dim(), grid.n());
  return *slot;
}

void FftEngine::forward(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw std::invalid_argument("FFT buffer size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), p, p);
}

void FftEngine::backward(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw std::invalid_argument("FFT buffer size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), p, p);
}

}  // namespace thermogas::detail
