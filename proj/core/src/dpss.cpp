#include "slepian/dpss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "slepian/error.hpp"
#include "slepian/tridiagonal.hpp"

namespace slepian {
namespace {

using std::numbers::pi;

void check_bandwidth(double w) {
  if (!(w > 0.0 && w < 0.5))
    throw ParameterError("half bandwidth W must lie in (0, 0.5), got " + std::to_string(w));
}

void check_index(const DpssBasis& basis, std::size_t k) {
  if (k >= basis.count())
    throw IndexError("sequence index " + std::to_string(k) + " out of range for " +
                     std::to_string(basis.count()) + " sequences");
}

// Toeplitz generator of the sinc kernel: value at lag |n-m|.
std::vector<double> kernel_lags(std::size_t length, double w) {
  std::vector<double> lag(length);
  lag[0] = 2.0 * w;
  for (std::size_t d = 1; d < length; ++d) {
    const double x = static_cast<double>(d);
    lag[d] = std::sin(2.0 * pi * w * x) / (pi * x);
  }
  return lag;
}

double rayleigh_quotient(std::span<const double> lag, std::span<const double> v) {
  const std::size_t n = v.size();
  double quotient = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += lag[i > j ? i - j : j - i] * v[j];
    quotient += v[i] * row;
  }
  return quotient;
}

// sum_m v_m exp(-i pi (N-1-2m) u), evaluated by Horner in z = exp(2 pi i u).
std::complex<double> dtft(std::span<const double> v, double u) {
  const std::size_t n = v.size();
  const std::complex<double> z = std::polar(1.0, 2.0 * pi * u);
  std::complex<double> acc = v[n - 1];
  for (std::size_t m = n - 1; m-- > 0;) acc = acc * z + v[m];
  return acc * std::polar(1.0, -pi * static_cast<double>(n - 1) * u);
}

}  // namespace

void DpssParams::validate() const {
  if (length == 0) throw ParameterError("sequence length N must be positive");
  check_bandwidth(half_bandwidth);
  if (count == 0) throw ParameterError("number of sequences K must be positive");
  if (count > length)
    throw ParameterError("number of sequences K=" + std::to_string(count) +
                         " exceeds sequence length N=" + std::to_string(length));
}

DpssBasis::DpssBasis(DpssParams params, RealMatrix sequences, std::vector<double> eigenvalues)
    : params_(params), sequences_(std::move(sequences)), eigenvalues_(std::move(eigenvalues)) {
  params_.validate();
  if (sequences_.rows() != params_.count || sequences_.cols() != params_.length)
    throw ParameterError("DPSS sequence matrix must be K x N");
  if (eigenvalues_.size() != params_.count)
    throw ParameterError("DPSS eigenvalue count must equal K");
}

std::span<const double> DpssBasis::sequence(std::size_t k) const {
  check_index(*this, k);
  return sequences_.row(k);
}

double DpssBasis::eigenvalue(std::size_t k) const {
  check_index(*this, k);
  return eigenvalues_[k];
}

std::string DpssBasis::id() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "dpss(n=%zu,w=%.17g,k=%zu)", params_.length,
                params_.half_bandwidth, params_.count);
  return buf;
}

RealMatrix sinc_kernel(std::size_t length, double half_bandwidth) {
  check_bandwidth(half_bandwidth);
  if (length == 0) throw ParameterError("kernel size must be positive");
  const auto lag = kernel_lags(length, half_bandwidth);
  RealMatrix a(length, length);
  for (std::size_t i = 0; i < length; ++i)
    for (std::size_t j = 0; j < length; ++j) a(i, j) = lag[i > j ? i - j : j - i];
  return a;
}

DpssBasis compute_dpss(const DpssParams& params) {
  params.validate();
  const std::size_t n = params.length;
  const double w = params.half_bandwidth;

  // Tridiagonal matrix commuting with the sinc kernel; its largest
  // eigenvalues belong to the most concentrated sequences.
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  const double c = std::cos(2.0 * pi * w);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 0.5 * (static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(i));
    t.diag[i] = x * x * c;
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    t.off[i] = 0.5 * static_cast<double>(i + 1) * static_cast<double>(n - 1 - i);

  const auto theta = largest_eigenvalues(t, params.count);
  const auto lag = kernel_lags(n, w);

  RealMatrix sequences(params.count, n);
  std::vector<double> eigenvalues(params.count);
  for (std::size_t k = 0; k < params.count; ++k) {
    auto v = inverse_iteration(t, theta[k]);

    // One Gram-Schmidt sweep against earlier sequences, then renormalize.
    for (std::size_t j = 0; j < k; ++j) {
      const auto prev = sequences.row(j);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += prev[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev[i];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;

    for (double x : v) {
      if (x == 0.0) continue;
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }

    std::copy(v.begin(), v.end(), sequences.row(k).begin());
    eigenvalues[k] = rayleigh_quotient(lag, v);
  }

  // Concentrations within rounding of 1 (or 0) are not separable in double
  // precision. The order is known from the commuting matrix, whose spectrum
  // is well separated, so each value is moved to the nearest double that
  // keeps the sequence strictly decreasing inside (0,1). The shift is a few
  // ulps, below the rounding error of the Rayleigh quotient itself.
  double ceiling = 1.0;
  for (double& lambda : eigenvalues) {
    lambda = std::min(lambda, std::nextafter(ceiling, 0.0));
    ceiling = lambda;
  }
  double floor = 0.0;
  for (std::size_t k = params.count; k-- > 0;) {
    eigenvalues[k] = std::max(eigenvalues[k], std::nextafter(floor, 1.0));
    floor = eigenvalues[k];
  }
  return DpssBasis(params, std::move(sequences), std::move(eigenvalues));
}

std::complex<double> spectrum_phase(std::size_t k) noexcept {
  return k % 2 == 0 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 1.0};
}

std::vector<SpectrumSample> dpss_spectrum(const DpssBasis& basis, std::size_t k,
                                          std::span<const double> u_grid) {
  check_index(basis, k);
  const auto v = basis.sequence(k);
  const auto eps = spectrum_phase(k);
  std::vector<SpectrumSample> out;
  out.reserve(u_grid.size());
  for (double u : u_grid) {
    if (!(u >= -0.5 && u <= 0.5)) throw DomainError("spectrum frequency must lie in [-0.5, 0.5]");
    out.push_back({u, eps * dtft(v, u)});
  }
  return out;
}

double concentration_ratio(const DpssBasis& basis, std::size_t k, std::size_t quad_points) {
  check_index(basis, k);
  if (quad_points < 2) throw ParameterError("concentration_ratio needs at least 2 quadrature points");
  const auto v = basis.sequence(k);
  const double w = basis.half_bandwidth();

  const std::size_t panels = quad_points + (quad_points % 2);
  const double h = 2.0 * w / static_cast<double>(panels);
  double inband = 0.0;
  for (std::size_t i = 0; i <= panels; ++i) {
    const double u = -w + h * static_cast<double>(i);
    const double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    inband += weight * std::norm(dtft(v, u));
  }
  inband *= h / 3.0;

  // |f_k|^2 is a trigonometric polynomial of period 1 and degree N-1, so the
  // periodic trapezoid rule is exact once it has more than N-1 nodes.
  const std::size_t nodes = std::max(quad_points, 2 * basis.length());
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double u = -0.5 + static_cast<double>(i) / static_cast<double>(nodes);
    total += std::norm(dtft(v, u));
  }
  total /= static_cast<double>(nodes);
  return inband / total;
}

RealMatrix radial_basis(const DpssBasis& basis, std::span<const double> r_grid) {
  const std::size_t n = basis.length();
  RealMatrix out(basis.count(), r_grid.size());
  for (double r : r_grid)
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius " + std::to_string(r) + " outside [0,1]");

  for (std::size_t k = 0; k < basis.count(); ++k) {
    const auto v = basis.sequence(k);
    auto row = out.row(k);
    if (n == 1) {
      std::fill(row.begin(), row.end(), v[0]);
      continue;
    }
    // Linear extrapolation supplies the ghost nodes at both ends.
    auto node = [&](std::ptrdiff_t i) -> double {
      const auto last = static_cast<std::ptrdiff_t>(n) - 1;
      if (i < 0) return 2.0 * v[0] - v[1];
      if (i > last) return 2.0 * v[n - 1] - v[n - 2];
      return v[static_cast<std::size_t>(i)];
    };
    for (std::size_t j = 0; j < r_grid.size(); ++j) {
      const double t = (1.0 - r_grid[j]) * static_cast<double>(n - 1);
      auto i = static_cast<std::ptrdiff_t>(std::floor(t));
      i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
      const double s = t - static_cast<double>(i);
      const double p0 = node(i - 1), p1 = node(i), p2 = node(i + 1), p3 = node(i + 2);
      row[j] = 0.5 * (2.0 * p1 + (p2 - p0) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                      (3.0 * p1 - p0 - 3.0 * p2 + p3) * s * s * s);
    }
  }
  return out;
}

}  // namespace slepian
