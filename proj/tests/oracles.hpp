#pragma once

// Reference implementations used only by tests. They trade speed for
// directness and share no code paths with the library routines they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "slepian/dpss.hpp"
#include "slepian/imaging.hpp"
#include "slepian/matrix.hpp"
#include "slepian/random.hpp"

namespace oracle {

using cplx = std::complex<double>;
using std::numbers::pi;

// X[k] = sum_j x[j] exp(-2 pi i j k / n), evaluated term by term.
inline std::vector<cplx> dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = -2.0 * pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += x[j] * cplx(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

// S[m][n] by the O(R T M L) double sum, column n + L holding order n.
inline slepian::ComplexMatrix brute_force_moments(const slepian::PolarImage& img, const slepian::RealMatrix& psi,
                                                  std::size_t M, std::size_t L) {
  const std::size_t R = img.n_radial(), T = img.n_angular();
  const double dr = 1.0 / static_cast<double>(R);
  const double dtheta = 2.0 * pi / static_cast<double>(T);
  slepian::ComplexMatrix S(M, 2 * L + 1);
  for (std::size_t m = 0; m < M; ++m)
    for (int n = -static_cast<int>(L); n <= static_cast<int>(L); ++n) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < R; ++i) {
        const double r = (static_cast<double>(i) + 0.5) / static_cast<double>(R);
        for (std::size_t j = 0; j < T; ++j) {
          const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(T);
          acc += psi(m, i) * r * dr * std::exp(cplx(0.0, -n * theta)) * std::conj(img(i, j)) * dtheta;
        }
      }
      S(m, static_cast<std::size_t>(n + static_cast<int>(L))) = acc;
    }
  return S;
}

// Rotation by direct inverse mapping with an explicit 2x2 matrix and
// explicit four-neighbour weights.
inline slepian::RasterImage rotate(const slepian::RasterImage& img, double angle_deg) {
  const double a = angle_deg * pi / 180.0;
  const Eigen::Matrix2d inv{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
  const Eigen::Vector2d c{(img.width() - 1) / 2.0, (img.height() - 1) / 2.0};
  auto pixel = [&](long x, long y) -> double {
    if (x < 0 || y < 0 || x >= static_cast<long>(img.width()) || y >= static_cast<long>(img.height())) return 0.0;
    return img.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  };
  std::vector<double> out(img.width() * img.height());
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Eigen::Vector2d d{static_cast<double>(x) - c.x(), static_cast<double>(y) - c.y()};
      const Eigen::Vector2d s = c + inv * d;
      const double fx = std::floor(s.x()), fy = std::floor(s.y());
      const double tx = s.x() - fx, ty = s.y() - fy;
      const long x0 = static_cast<long>(fx), y0 = static_cast<long>(fy);
      const double v = (1 - tx) * (1 - ty) * pixel(x0, y0) + tx * (1 - ty) * pixel(x0 + 1, y0) +
                       (1 - tx) * ty * pixel(x0, y0 + 1) + tx * ty * pixel(x0 + 1, y0 + 1);
      out[y * img.width() + x] = std::clamp(v, 0.0, 1.0);
    }
  return slepian::RasterImage(img.width(), img.height(), std::move(out));
}

inline Eigen::MatrixXd to_eigen(const slepian::RealMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline slepian::RasterImage random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  slepian::RandomStream rng(seed);
  std::vector<double> px(w * h);
  for (auto& p : px) p = rng.uniform();
  return slepian::RasterImage(w, h, std::move(px));
}

inline slepian::PolarImage random_polar(std::size_t R, std::size_t T, std::uint64_t seed, bool complex_valued) {
  slepian::RandomStream rng(seed);
  std::vector<cplx> s(R * T);
  for (auto& v : s) v = cplx(rng.uniform(-1.0, 1.0), complex_valued ? rng.uniform(-1.0, 1.0) : 0.0);
  return slepian::PolarImage(R, T, std::move(s));
}

}  // namespace oracle
