#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "slepian/matrix.hpp"

namespace slepian {

/// Length N, half bandwidth W and number of sequences K of a DPSS family.
struct DpssParams {
  std::size_t length = 0;
  double half_bandwidth = 0.0;
  std::size_t count = 0;

  /// Throws ParameterError unless 0 < W < 0.5 and 1 <= K <= N.
  void validate() const;
};

/// K discrete prolate spheroidal sequences of length N together with their
/// concentration eigenvalues.
///
/// Sequences are orthonormal over the index set, ordered by decreasing
/// eigenvalue, and sign-fixed so that the first nonzero entry is positive.
class DpssBasis {
 public:
  /// Wraps precomputed data. `sequences` must be K x N and `eigenvalues` of
  /// length K; shapes are checked, numerical invariants are not.
  DpssBasis(DpssParams params, RealMatrix sequences, std::vector<double> eigenvalues);

  const DpssParams& params() const noexcept { return params_; }
  std::size_t length() const noexcept { return params_.length; }
  std::size_t count() const noexcept { return params_.count; }
  double half_bandwidth() const noexcept { return params_.half_bandwidth; }

  const RealMatrix& sequences() const noexcept { return sequences_; }
  std::span<const double> sequence(std::size_t k) const;
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t k) const;

  /// Short human-readable identifier, e.g. "dpss(n=64,w=0.1,k=10)".
  std::string id() const;

 private:
  DpssParams params_;
  RealMatrix sequences_;
  std::vector<double> eigenvalues_;
};

/// N x N sinc kernel A[n][m] = sin(2 pi W (n-m)) / (pi (n-m)), A[n][n] = 2W.
RealMatrix sinc_kernel(std::size_t length, double half_bandwidth);

/// Solves the commuting tridiagonal eigenproblem for the K most concentrated
/// sequences; eigenvalues are Rayleigh quotients against the sinc kernel.
DpssBasis compute_dpss(const DpssParams& params);

/// Phase factor applied to the spectrum of sequence k: 1 for even k, i for odd k.
std::complex<double> spectrum_phase(std::size_t k) noexcept;

struct SpectrumSample {
  double u = 0.0;
  std::complex<double> value;
};

/// f_k(u) = eps_k sum_m v_m exp(-i pi (N-1-2m) u) at each u of the grid.
std::vector<SpectrumSample> dpss_spectrum(const DpssBasis& basis, std::size_t k,
                                          std::span<const double> u_grid);

/// Fraction of the energy of f_k that lies inside [-W, W]. The in-band
/// integral uses composite Simpson with `quad_points` panels (rounded up to
/// even); the full-band integral uses the periodic trapezoid rule.
double concentration_ratio(const DpssBasis& basis, std::size_t k, std::size_t quad_points);

/// Resamples every sequence onto radii in [0,1]. Radius r maps to fractional
/// index (1-r)(N-1), i.e. the symmetric axis x = N-1-2m rescaled to [0,1];
/// values between nodes use Catmull-Rom cubic interpolation.
/// Returns a K x R matrix.
RealMatrix radial_basis(const DpssBasis& basis, std::span<const double> r_grid);

}  // namespace slepian
