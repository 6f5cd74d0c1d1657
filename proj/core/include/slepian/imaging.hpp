#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace slepian {

/// Grayscale raster, row-major, row 0 at the top. Intensities lie in [0,1].
class RasterImage {
 public:
  RasterImage() = default;
  /// Throws ParameterError on a shape mismatch and DomainError on any
  /// intensity that is non-finite or outside [0,1].
  RasterImage(std::size_t width, std::size_t height, std::vector<double> pixels);
  /// Constant image.
  RasterImage(std::size_t width, std::size_t height, double value = 0.0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const double> pixels() const noexcept { return pixels_; }
  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

/// Uniform polar sampling of the unit disk:
///   samples(i, j) = f(r_i, theta_j),  r_i = (i + 0.5)/R,  theta_j = 2 pi j / T.
/// Samples are complex so that synthetic complex test fields can be fed to the
/// moment transform; images derived from rasters have zero imaginary part.
class PolarImage {
 public:
  PolarImage() = default;
  PolarImage(std::size_t n_radial, std::size_t n_angular);
  PolarImage(std::size_t n_radial, std::size_t n_angular, std::vector<std::complex<double>> samples);

  std::size_t n_radial() const noexcept { return n_radial_; }
  std::size_t n_angular() const noexcept { return n_angular_; }

  double radius(std::size_t i) const noexcept;
  double angle(std::size_t j) const noexcept;

  std::complex<double>& operator()(std::size_t i, std::size_t j) { return samples_[i * n_angular_ + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
    return samples_[i * n_angular_ + j];
  }
  std::span<const std::complex<double>> ring(std::size_t i) const {
    return {samples_.data() + i * n_angular_, n_angular_};
  }
  std::span<const std::complex<double>> samples() const noexcept { return samples_; }

 private:
  std::size_t n_radial_ = 0;
  std::size_t n_angular_ = 0;
  std::vector<std::complex<double>> samples_;
};

struct NoiseSpec {
  double snr_db = 30.0;
  std::uint64_t seed = 0;
};

enum class PgmDepth { k8Bit, k16Bit };

/// Parses binary PGM (P5), maxval up to 65535. Comments in the header are
/// accepted. Throws FormatError with the byte offset of the defect.
RasterImage read_pgm(std::span<const std::uint8_t> bytes);
RasterImage read_pgm_file(const std::filesystem::path& path);

/// Encodes as P5 with maxval 255 (default) or 65535, rounding to nearest.
std::vector<std::uint8_t> write_pgm(const RasterImage& image, PgmDepth depth = PgmDepth::k8Bit);

/// Rotates counterclockwise (as displayed, row 0 on top) by `angle_deg`
/// about the pixel-grid center, keeping the original size. Each output pixel
/// bilinearly samples the inverse-rotated source position; source pixels
/// outside the raster read as 0.
RasterImage rotate_image(const RasterImage& image, double angle_deg);

/// Resamples the inscribed disk onto an R x T polar grid with bilinear
/// interpolation. theta is measured counterclockwise from the +x axis.
PolarImage to_polar(const RasterImage& image, std::size_t n_radial, std::size_t n_angular);

/// Adds zero-mean Gaussian noise with variance mean(pixel^2) / 10^(snr/10),
/// then clamps to [0,1]. Throws DomainError for an all-zero image.
RasterImage add_gaussian_noise(const RasterImage& image, const NoiseSpec& spec);

/// Bilinear read at fractional pixel coordinates; pixels outside the raster
/// contribute 0.
double sample_bilinear(const RasterImage& image, double x, double y);

}  // namespace slepian
