#include "slepian/fft.hpp"

#include <cmath>
#include <numbers>

#include "slepian/error.hpp"

namespace slepian {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw ParameterError("FFT length must be positive");

  const std::size_t inner = is_power_of_two(n) ? n : next_power_of_two(2 * n - 1);
  radix2_.n = inner;
  radix2_.bitrev.resize(inner);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < inner) ++bits;
  for (std::size_t i = 0; i < inner; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    radix2_.bitrev[i] = r;
  }
  radix2_.twiddle.resize(inner / 2);
  for (std::size_t k = 0; k < inner / 2; ++k) {
    const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(inner);
    radix2_.twiddle[k] = {std::cos(phase), std::sin(phase)};
  }

  if (inner == n) return;

  // k^2 is reduced mod 2n before scaling so the phase stays accurate for large k.
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t k2 = (k * k) % (2 * n);
    const double phase = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp_[k] = {std::cos(phase), std::sin(phase)};
  }
  chirp_fft_.assign(inner, {0.0, 0.0});
  chirp_fft_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    chirp_fft_[k] = std::conj(chirp_[k]);
    chirp_fft_[inner - k] = std::conj(chirp_[k]);
  }
  radix2_.run(chirp_fft_, false);
}

void FftPlan::Radix2::run(std::span<std::complex<double>> data, bool inverse) const {
  for (std::size_t i = 0; i < n; ++i)
    if (i < bitrev[i]) std::swap(data[i], data[bitrev[i]]);

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddle[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> a = data[start + j];
        const std::complex<double> b = data[start + j + half] * w;
        data[start + j] = a + b;
        data[start + j + half] = a - b;
      }
    }
  }
}

void FftPlan::bluestein(std::span<std::complex<double>> data) const {
  std::vector<std::complex<double>> work(radix2_.n, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) work[k] = data[k] * chirp_[k];
  radix2_.run(work, false);
  for (std::size_t k = 0; k < radix2_.n; ++k) work[k] *= chirp_fft_[k];
  radix2_.run(work, true);
  const double scale = 1.0 / static_cast<double>(radix2_.n);
  for (std::size_t k = 0; k < n_; ++k) data[k] = work[k] * chirp_[k] * scale;
}

void FftPlan::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw ParameterError("FFT input length does not match plan");
  if (chirp_.empty())
    radix2_.run(data, false);
  else
    bluestein(data);
}

void FftPlan::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw ParameterError("FFT input length does not match plan");
  const double scale = 1.0 / static_cast<double>(n_);
  if (chirp_.empty()) {
    radix2_.run(data, true);
    for (auto& x : data) x *= scale;
    return;
  }
  for (auto& x : data) x = std::conj(x);
  bluestein(data);
  for (auto& x : data) x = std::conj(x) * scale;
}

}  // namespace slepian
