// SPDX-License-Identifier: Apache-2.0
#include "fks/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "fks/error.hpp"

namespace fks {
namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft2d::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  mutable std::mutex exec;
};

Fft2d::Fft2d(int m) : m_(m), impl_(std::make_unique<Impl>()) {
  if (m < 4 || m % 2 != 0) throw DomainError("FFT grid size must be even and >= 4");
  const std::size_t n = static_cast<std::size_t>(m) * m;
  std::lock_guard lock(planner_mutex());
  impl_->real = fftw_alloc_real(n);
  impl_->spec = fftw_alloc_complex(complex_size());
  impl_->fwd = fftw_plan_dft_r2c_2d(m, m, impl_->real, impl_->spec, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_2d(m, m, impl_->spec, impl_->real, FFTW_ESTIMATE);
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->inv);
  fftw_free(impl_->real);
  fftw_free(impl_->spec);
}

void Fft2d::forward(const double* in, std::complex<double>* out) const {
  std::lock_guard lock(impl_->exec);
  const std::size_t n = static_cast<std::size_t>(m_) * m_;
  std::copy(in, in + n, impl_->real);
  fftw_execute(impl_->fwd);
  std::memcpy(static_cast<void*>(out), impl_->spec, complex_size() * sizeof(fftw_complex));
}

void Fft2d::inverse(const std::complex<double>* in, double* out) const {
  std::lock_guard lock(impl_->exec);
  const std::size_t n = static_cast<std::size_t>(m_) * m_;
  std::memcpy(impl_->spec, static_cast<const void*>(in), complex_size() * sizeof(fftw_complex));
  fftw_execute(impl_->inv);
  const double s = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = impl_->real[i] * s;
}

}  // namespace fks
