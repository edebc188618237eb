#include "gaugeprop/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "gaugeprop/error.hpp"

namespace gaugeprop::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Plan::Impl {
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buffer) fftw_free(buffer);
  }
};

Plan::Plan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "transform length must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!impl_->buffer) throw std::bad_alloc();
  const int len = static_cast<int>(n);
  impl_->fwd = fftw_plan_dft_1d(len, impl_->buffer, impl_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_1d(len, impl_->buffer, impl_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw Error(ErrorCode::InvalidArgument, "FFTW planning failed");
}

Plan::~Plan() = default;
Plan::Plan(Plan&&) noexcept = default;
Plan& Plan::operator=(Plan&&) noexcept = default;

std::span<Complex> Plan::data() noexcept {
  return {reinterpret_cast<Complex*>(impl_->buffer), n_};
}

void Plan::forward() { fftw_execute(impl_->fwd); }
void Plan::backward() { fftw_execute(impl_->bwd); }

}  // namespace gaugeprop::fft
