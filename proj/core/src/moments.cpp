#include "slepian/moments.hpp"

#include <cmath>
#include <numbers>

#include "slepian/error.hpp"
#include "slepian/fft.hpp"

namespace slepian {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_orders(const DpssBasis& basis, std::size_t max_radial) {
  if (max_radial == 0) throw ParameterError("radial order count M must be positive");
  if (max_radial > basis.count())
    throw ParameterError("radial order count M=" + std::to_string(max_radial) + " exceeds the " +
                         std::to_string(basis.count()) + " sequences of " + basis.id());
}

// Solves G x = b in place for symmetric positive definite G (Cholesky).
void cholesky_solve(RealMatrix g, std::span<std::complex<double>> b) {
  const std::size_t n = g.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double diag = g(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= g(j, k) * g(j, k);
    if (!(diag > 0.0)) throw DomainError("radial Gram matrix is not positive definite");
    g(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = g(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= g(i, k) * g(j, k);
      g(i, j) = v / g(j, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= g(i, k) * b[k];
    b[i] /= g(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= g(k, i) * b[k];
    b[i] /= g(i, i);
  }
}

}  // namespace

MomentSet::MomentSet(std::size_t max_radial, std::size_t max_angular, ComplexMatrix values,
                     PolarGrid grid, std::string basis_id)
    : max_radial_(max_radial),
      max_angular_(max_angular),
      values_(std::move(values)),
      grid_(grid),
      basis_id_(std::move(basis_id)) {
  if (values_.rows() != max_radial_ || values_.cols() != 2 * max_angular_ + 1)
    throw ParameterError("moment matrix must be M x (2L+1)");
  for (const auto& s : values_.data())
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw DomainError("moment values must be finite");
}

std::complex<double> MomentSet::at(std::size_t m, int n) const {
  const auto l = static_cast<int>(max_angular_);
  if (m >= max_radial_ || n < -l || n > l)
    throw IndexError("moment (" + std::to_string(m) + "," + std::to_string(n) + ") out of range");
  return values_(m, static_cast<std::size_t>(n + l));
}

std::vector<double> radial_nodes(std::size_t n_radial) {
  std::vector<double> r(n_radial);
  for (std::size_t i = 0; i < n_radial; ++i)
    r[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n_radial);
  return r;
}

MomentSet compute_moments(const PolarImage& image, const DpssBasis& basis, std::size_t max_radial,
                          std::size_t max_angular) {
  check_orders(basis, max_radial);
  const std::size_t n_r = image.n_radial();
  const std::size_t n_t = image.n_angular();
  if (2 * max_angular + 1 > n_t)
    throw AliasingError("angular orders -L..L need 2L+1=" + std::to_string(2 * max_angular + 1) +
                        " <= T=" + std::to_string(n_t) + " angular samples");

  const auto r = radial_nodes(n_r);
  const RealMatrix psi = radial_basis(basis, r);
  const double dr = 1.0 / static_cast<double>(n_r);
  const double dtheta = kTwoPi / static_cast<double>(n_t);
  const std::size_t width = 2 * max_angular + 1;
  const auto l = static_cast<std::ptrdiff_t>(max_angular);

  const FftPlan plan(n_t);
  std::vector<std::complex<double>> ring(n_t);
  ComplexMatrix s(max_radial, width);
  for (std::size_t i = 0; i < n_r; ++i) {
    const auto samples = image.ring(i);
    for (std::size_t j = 0; j < n_t; ++j) ring[j] = std::conj(samples[j]);
    plan.forward(ring);
    for (std::size_t m = 0; m < max_radial; ++m) {
      const double weight = psi(m, i) * r[i] * dr * dtheta;
      for (std::ptrdiff_t n = -l; n <= l; ++n) {
        const auto bin = static_cast<std::size_t>((n + static_cast<std::ptrdiff_t>(n_t)) %
                                                  static_cast<std::ptrdiff_t>(n_t));
        s(m, static_cast<std::size_t>(n + l)) += weight * ring[bin];
      }
    }
  }
  return MomentSet(max_radial, max_angular, std::move(s), {n_r, n_t}, basis.id());
}

InvariantVector invariants(const MomentSet& moments) {
  InvariantVector out{moments.max_radial(), moments.max_angular(), {}};
  out.entries.reserve(moments.max_radial() * (moments.max_angular() + 1));
  for (std::size_t m = 0; m < moments.max_radial(); ++m)
    for (std::size_t n = 0; n <= moments.max_angular(); ++n)
      out.entries.push_back(std::abs(moments.values()(m, n + moments.max_angular())));
  return out;
}

PolarImage slepian_series(const ComplexMatrix& coefficients, const DpssBasis& basis, PolarGrid grid) {
  const std::size_t max_radial = coefficients.rows();
  check_orders(basis, max_radial);
  if (coefficients.cols() % 2 == 0) throw ParameterError("coefficient matrix must have 2L+1 columns");
  const auto l = static_cast<std::ptrdiff_t>(coefficients.cols() / 2);

  PolarImage out(grid.radial, grid.angular);
  const RealMatrix psi = radial_basis(basis, radial_nodes(grid.radial));

  // Angular factors exp(-i n theta_j), shared by every ring.
  ComplexMatrix phase(coefficients.cols(), grid.angular);
  for (std::ptrdiff_t n = -l; n <= l; ++n)
    for (std::size_t j = 0; j < grid.angular; ++j)
      phase(static_cast<std::size_t>(n + l), j) =
          std::polar(1.0, -static_cast<double>(n) * out.angle(j));

  std::vector<std::complex<double>> radial_coeff(coefficients.cols());
  for (std::size_t i = 0; i < grid.radial; ++i) {
    for (std::size_t c = 0; c < coefficients.cols(); ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t m = 0; m < max_radial; ++m) acc += coefficients(m, c) * psi(m, i);
      radial_coeff[c] = acc;
    }
    for (std::size_t j = 0; j < grid.angular; ++j) {
      std::complex<double> acc = 0.0;
      for (std::size_t c = 0; c < coefficients.cols(); ++c) acc += radial_coeff[c] * phase(c, j);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix series_coefficients(const MomentSet& moments, const DpssBasis& basis) {
  if (moments.basis_id() != basis.id())
    throw ParameterError("moment set was computed with " + moments.basis_id() + ", not " + basis.id());
  const std::size_t max_radial = moments.max_radial();
  check_orders(basis, max_radial);

  const std::size_t n_r = moments.grid().radial;
  const auto r = radial_nodes(n_r);
  const RealMatrix psi = radial_basis(basis, r);
  const double dr = 1.0 / static_cast<double>(n_r);
  RealMatrix gram(max_radial, max_radial);
  for (std::size_t a = 0; a < max_radial; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n_r; ++i) acc += psi(a, i) * psi(b, i) * r[i];
      gram(a, b) = gram(b, a) = acc * dr;
    }

  const std::size_t width = moments.values().cols();
  ComplexMatrix coeff(max_radial, width);
  std::vector<std::complex<double>> column(max_radial);
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t m = 0; m < max_radial; ++m) column[m] = moments.values()(m, c);
    cholesky_solve(gram, column);
    for (std::size_t m = 0; m < max_radial; ++m) coeff(m, c) = std::conj(column[m]) / kTwoPi;
  }
  return coeff;
}

Reconstruction reconstruct(const MomentSet& moments, const DpssBasis& basis, PolarGrid grid) {
  const PolarImage series = slepian_series(series_coefficients(moments, basis), basis, grid);
  std::vector<std::complex<double>> real_part(series.samples().size());
  double residual = 0.0;
  for (std::size_t k = 0; k < real_part.size(); ++k) {
    real_part[k] = series.samples()[k].real();
    residual = std::max(residual, std::abs(series.samples()[k].imag()));
  }
  return {PolarImage(grid.radial, grid.angular, std::move(real_part)), residual};
}

InvariantVector feature_vector(const RasterImage& image, const DpssBasis& basis, PolarGrid grid,
                               std::size_t max_radial, std::size_t max_angular) {
  check_orders(basis, max_radial);
  if (2 * max_angular + 1 > grid.angular)
    throw AliasingError("feature grid has too few angular samples for L=" + std::to_string(max_angular));
  return invariants(compute_moments(to_polar(image, grid.radial, grid.angular), basis, max_radial, max_angular));
}

}  // namespace slepian
