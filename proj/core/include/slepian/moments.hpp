#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "slepian/dpss.hpp"
#include "slepian/imaging.hpp"
#include "slepian/matrix.hpp"

namespace slepian {

struct PolarGrid {
  std::size_t radial = 128;
  std::size_t angular = 256;

  friend bool operator==(const PolarGrid&, const PolarGrid&) = default;
};

/// Slepian moments S[m][n] for radial orders m in [0, M) and angular orders
/// n in [-L, L]. Column n + L of `values()` holds angular order n.
class MomentSet {
 public:
  MomentSet() = default;
  MomentSet(std::size_t max_radial, std::size_t max_angular, ComplexMatrix values, PolarGrid grid,
            std::string basis_id);

  std::size_t max_radial() const noexcept { return max_radial_; }
  std::size_t max_angular() const noexcept { return max_angular_; }
  const PolarGrid& grid() const noexcept { return grid_; }
  const std::string& basis_id() const noexcept { return basis_id_; }
  const ComplexMatrix& values() const noexcept { return values_; }

  /// S[m][n]; n may be negative.
  std::complex<double> at(std::size_t m, int n) const;

 private:
  std::size_t max_radial_ = 0;
  std::size_t max_angular_ = 0;
  ComplexMatrix values_;
  PolarGrid grid_{};
  std::string basis_id_;
};

/// Rotation invariants Phi[m][n] = |S[m][n]| for n >= 0, flattened m-major:
/// index m * (L+1) + n.
struct InvariantVector {
  std::size_t max_radial = 0;
  std::size_t max_angular = 0;
  std::vector<double> entries;

  double at(std::size_t m, std::size_t n) const { return entries.at(m * (max_angular + 1) + n); }
};

/// Midpoint radii r_i = (i + 0.5)/R.
std::vector<double> radial_nodes(std::size_t n_radial);

/// S[m][n] = sum_i psi_m(r_i) r_i dr * sum_j exp(-i n theta_j) conj(f(r_i, theta_j)) dtheta,
/// with the angular sums of each ring taken from one length-T FFT.
/// Throws ParameterError if M exceeds the basis size and AliasingError if 2L+1 > T.
MomentSet compute_moments(const PolarImage& image, const DpssBasis& basis, std::size_t max_radial,
                          std::size_t max_angular);

InvariantVector invariants(const MomentSet& moments);

/// Evaluates a finite Slepian series
///   f(r_i, theta_j) = sum_m sum_{n=-L..L} c[m][n] psi_m(r_i) exp(-i n theta_j)
/// where `coefficients` is M x (2L+1) with column n + L holding order n.
PolarImage slepian_series(const ComplexMatrix& coefficients, const DpssBasis& basis, PolarGrid grid);

struct Reconstruction {
  PolarImage image;             // real part of the series
  double imag_residual = 0.0;   // max |imaginary part| discarded
};

/// Series coefficients whose moments (on the moment set's own grid) equal
/// the given moments: c[:, n] = conj(G^{-1} S[:, n]) / (2 pi), with G the
/// radially weighted Gram matrix of psi_0..psi_{M-1} on that grid.
ComplexMatrix series_coefficients(const MomentSet& moments, const DpssBasis& basis);

/// Truncated reconstruction from a moment set on `grid`. Equivalent to the
/// least-squares projection (in the disk-area norm of the moment grid) onto
/// span{psi_m(r) exp(-i n theta)}, m < M, |n| <= L.
Reconstruction reconstruct(const MomentSet& moments, const DpssBasis& basis, PolarGrid grid);

/// to_polar -> compute_moments -> invariants; 100 entries with the defaults.
InvariantVector feature_vector(const RasterImage& image, const DpssBasis& basis, PolarGrid grid = {},
                               std::size_t max_radial = 10, std::size_t max_angular = 9);

}  // namespace slepian
