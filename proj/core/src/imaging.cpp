#include "slepian/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "slepian/error.hpp"
#include "slepian/random.hpp"

namespace slepian {

RasterImage::RasterImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) throw ParameterError("image dimensions must be positive");
  if (pixels_.size() != width_ * height_)
    throw ParameterError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                         std::to_string(width_) + "x" + std::to_string(height_));
  for (std::size_t i = 0; i < pixels_.size(); ++i) {
    const double p = pixels_[i];
    if (!(p >= 0.0 && p <= 1.0))
      throw DomainError("pixel " + std::to_string(i) + " intensity outside [0,1]");
  }
}

RasterImage::RasterImage(std::size_t width, std::size_t height, double value)
    : RasterImage(width, height, std::vector<double>(width * height, value)) {}

PolarImage::PolarImage(std::size_t n_radial, std::size_t n_angular)
    : PolarImage(n_radial, n_angular, std::vector<std::complex<double>>(n_radial * n_angular)) {}

PolarImage::PolarImage(std::size_t n_radial, std::size_t n_angular,
                       std::vector<std::complex<double>> samples)
    : n_radial_(n_radial), n_angular_(n_angular), samples_(std::move(samples)) {
  if (n_radial_ == 0 || n_angular_ == 0) throw ParameterError("polar grid dimensions must be positive");
  if (samples_.size() != n_radial_ * n_angular_)
    throw ParameterError("polar sample count does not match grid");
  for (const auto& s : samples_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw DomainError("polar samples must be finite");
}

double PolarImage::radius(std::size_t i) const noexcept {
  return (static_cast<double>(i) + 0.5) / static_cast<double>(n_radial_);
}

double PolarImage::angle(std::size_t j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_angular_);
}

// ---------------------------------------------------------------------------
// PGM

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  unsigned long number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw FormatError(std::string("PGM header truncated before ") + what, pos_);
    if (!std::isdigit(bytes_[pos_]))
      throw FormatError(std::string("PGM header expected ") + what, pos_);
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000UL) throw FormatError(std::string("PGM ") + what + " too large", pos_);
      ++pos_;
    }
    return value;
  }

  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw FormatError("PGM header must end with a single whitespace byte", pos_);
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

RasterImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw FormatError("PGM magic number truncated", bytes.size());
  if (bytes[0] != 'P' || bytes[1] != '5')
    throw FormatError("unsupported magic number (expected binary PGM \"P5\")", 0);

  HeaderReader header(bytes.subspan(2));
  const unsigned long width = header.number("width");
  const unsigned long height = header.number("height");
  const unsigned long maxval = header.number("maxval");
  header.single_whitespace();
  const std::size_t data_start = 2 + header.offset();

  if (width == 0 || height == 0) throw FormatError("PGM dimensions must be positive", data_start);
  if (maxval == 0 || maxval > 65535) throw FormatError("PGM maxval must be in 1..65535", data_start);

  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t count = static_cast<std::size_t>(width) * height;
  const std::size_t needed = count * sample_bytes;
  if (bytes.size() - data_start < needed)
    throw FormatError("PGM payload truncated: need " + std::to_string(needed) + " bytes", bytes.size());

  std::vector<double> pixels(count);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (std::size_t i = 0; i < count; ++i) {
    unsigned value = 0;
    if (sample_bytes == 1) {
      value = bytes[data_start + i];
    } else {
      value = (unsigned{bytes[data_start + 2 * i]} << 8) | bytes[data_start + 2 * i + 1];
    }
    if (value > maxval)
      throw FormatError("PGM sample exceeds maxval", data_start + i * sample_bytes);
    pixels[i] = static_cast<double>(value) * scale;
  }
  return RasterImage(width, height, std::move(pixels));
}

RasterImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image file " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return read_pgm(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.message(), e.offset());
  }
}

std::vector<std::uint8_t> write_pgm(const RasterImage& image, PgmDepth depth) {
  const unsigned maxval = depth == PgmDepth::k8Bit ? 255 : 65535;
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n" + std::to_string(maxval) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + image.pixels().size() * (depth == PgmDepth::k8Bit ? 1 : 2));
  for (double p : image.pixels()) {
    const auto value = static_cast<unsigned>(std::lround(p * maxval));
    if (depth == PgmDepth::k8Bit) {
      out.push_back(static_cast<std::uint8_t>(value));
    } else {
      out.push_back(static_cast<std::uint8_t>(value >> 8));
      out.push_back(static_cast<std::uint8_t>(value & 0xff));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometry

double sample_bilinear(const RasterImage& image, double x, double y) {
  const double w = static_cast<double>(image.width());
  const double h = static_cast<double>(image.height());
  if (!(x > -1.0 && x < w && y > -1.0 && y < h)) return 0.0;

  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double ax = x - fx;
  const double ay = y - fy;
  const auto x0 = static_cast<std::ptrdiff_t>(fx);
  const auto y0 = static_cast<std::ptrdiff_t>(fy);

  auto pixel = [&](std::ptrdiff_t px, std::ptrdiff_t py) -> double {
    if (px < 0 || py < 0 || px >= static_cast<std::ptrdiff_t>(image.width()) ||
        py >= static_cast<std::ptrdiff_t>(image.height()))
      return 0.0;
    return image.at(static_cast<std::size_t>(px), static_cast<std::size_t>(py));
  };

  const double top = (1.0 - ax) * pixel(x0, y0) + ax * pixel(x0 + 1, y0);
  const double bottom = (1.0 - ax) * pixel(x0, y0 + 1) + ax * pixel(x0 + 1, y0 + 1);
  return (1.0 - ay) * top + ay * bottom;
}

RasterImage rotate_image(const RasterImage& image, double angle_deg) {
  const double a = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(a);
  const double s = std::sin(a);
  const double cx = 0.5 * (static_cast<double>(image.width()) - 1.0);
  const double cy = 0.5 * (static_cast<double>(image.height()) - 1.0);

  std::vector<double> out(image.width() * image.height());
  for (std::size_t y = 0; y < image.height(); ++y) {
    const double dy = static_cast<double>(y) - cy;
    for (std::size_t x = 0; x < image.width(); ++x) {
      const double dx = static_cast<double>(x) - cx;
      // y grows downward, so a counterclockwise display rotation maps the
      // output offset (dx, dy) back to the source through R(-a) in y-up axes.
      const double sx = cx + dx * c - dy * s;
      const double sy = cy + dx * s + dy * c;
      out[y * image.width() + x] = std::clamp(sample_bilinear(image, sx, sy), 0.0, 1.0);
    }
  }
  return RasterImage(image.width(), image.height(), std::move(out));
}

PolarImage to_polar(const RasterImage& image, std::size_t n_radial, std::size_t n_angular) {
  PolarImage polar(n_radial, n_angular);
  const double cx = 0.5 * (static_cast<double>(image.width()) - 1.0);
  const double cy = 0.5 * (static_cast<double>(image.height()) - 1.0);
  const double rho = 0.5 * static_cast<double>(std::min(image.width(), image.height())) - 0.5;

  std::vector<double> cosines(n_angular), sines(n_angular);
  for (std::size_t j = 0; j < n_angular; ++j) {
    cosines[j] = std::cos(polar.angle(j));
    sines[j] = std::sin(polar.angle(j));
  }
  for (std::size_t i = 0; i < n_radial; ++i) {
    const double r = polar.radius(i) * rho;
    for (std::size_t j = 0; j < n_angular; ++j)
      polar(i, j) = sample_bilinear(image, cx + r * cosines[j], cy - r * sines[j]);
  }
  return polar;
}

RasterImage add_gaussian_noise(const RasterImage& image, const NoiseSpec& spec) {
  if (!std::isfinite(spec.snr_db)) throw ParameterError("snr_db must be finite");
  const auto pixels = image.pixels();
  double power = 0.0;
  for (double p : pixels) power += p * p;
  power /= static_cast<double>(pixels.size());
  if (power <= 0.0) throw DomainError("signal power is zero; SNR is undefined for an all-zero image");

  const double sigma = std::sqrt(power / std::pow(10.0, spec.snr_db / 10.0));
  RandomStream rng(spec.seed);
  std::vector<double> out(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i)
    out[i] = std::clamp(pixels[i] + sigma * rng.normal(), 0.0, 1.0);
  return RasterImage(image.width(), image.height(), std::move(out));
}

}  // namespace slepian
