#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace slepian {

/// Forward discrete Fourier transform of a fixed length,
///   X[k] = sum_j x[j] exp(-2 pi i j k / n).
/// Power-of-two lengths use an iterative radix-2 kernel; every other length
/// goes through Bluestein's chirp-z reduction to a padded radix-2 transform.
/// A plan is immutable after construction and can be shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// In-place forward transform; `data.size()` must equal size().
  void forward(std::span<std::complex<double>> data) const;

  /// In-place inverse transform, scaled by 1/n.
  void inverse(std::span<std::complex<double>> data) const;

 private:
  struct Radix2 {
    std::size_t n = 0;
    std::vector<std::size_t> bitrev;
    std::vector<std::complex<double>> twiddle;  // exp(-2 pi i k / n), k < n/2
    void run(std::span<std::complex<double>> data, bool inverse) const;
  };

  void bluestein(std::span<std::complex<double>> data) const;

  std::size_t n_;
  Radix2 radix2_;
  std::vector<std::complex<double>> chirp_;       // exp(-i pi k^2 / n)
  std::vector<std::complex<double>> chirp_fft_;   // FFT of the padded conj chirp
};

}  // namespace slepian
