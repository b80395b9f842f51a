// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>

namespace fks {

// Real-to-complex 2-D transform on an M x M row-major grid. The complex side
// has M x (M/2 + 1) entries. inverse() includes the 1/M^2 normalisation.
// Plans are built with FFTW_ESTIMATE so results do not depend on timing.
class Fft2d {
 public:
  explicit Fft2d(int m);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  int size() const { return m_; }
  int complex_cols() const { return m_ / 2 + 1; }
  std::size_t complex_size() const { return static_cast<std::size_t>(m_) * complex_cols(); }

  void forward(const double* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  struct Impl;
  int m_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fks
