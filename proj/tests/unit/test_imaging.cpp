#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "slepian/error.hpp"
#include "slepian/imaging.hpp"

using slepian::PolarImage;
using slepian::RasterImage;

namespace {

std::vector<std::uint8_t> bytes(const std::string& header, std::vector<std::uint8_t> payload = {}) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

RasterImage smooth_image(std::size_t size) {
  std::vector<double> px(size * size);
  const double c = (size - 1) / 2.0;
  for (std::size_t y = 0; y < size; ++y)
    for (std::size_t x = 0; x < size; ++x) {
      const double u = (x - c) / c, v = (y - c) / c;
      px[y * size + x] = 0.5 + 0.3 * std::exp(-4 * ((u - 0.2) * (u - 0.2) + v * v)) * std::cos(2 * u + v) +
                         0.1 * std::sin(3 * v) * std::exp(-2 * (u * u + v * v));
    }
  return RasterImage(size, size, std::move(px));
}

}  // namespace

TEST(RasterImage, ValidatesContents) {
  EXPECT_THROW(RasterImage(2, 2, std::vector<double>{0, 0, 0}), slepian::ParameterError);
  EXPECT_THROW(RasterImage(1, 1, std::vector<double>{1.5}), slepian::DomainError);
  EXPECT_THROW(RasterImage(1, 1, std::vector<double>{NAN}), slepian::DomainError);
  EXPECT_THROW(RasterImage(0, 1, std::vector<double>{}), slepian::ParameterError);
}

TEST(Pgm, ReadsEightBit) {
  const auto img = slepian::read_pgm(bytes("P5\n2 1\n255\n", {0, 255}));
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.height(), 1u);
  EXPECT_EQ(img.at(0, 0), 0.0);
  EXPECT_EQ(img.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(slepian::read_pgm(bytes("P5 1 1 255\n", {128})).at(0, 0), 128.0 / 255.0);
}

TEST(Pgm, ReadsSixteenBitAndComments) {
  const auto img = slepian::read_pgm(bytes("P5\n# a comment\n1 2\n# another\n65535\n", {0xff, 0xff, 0x01, 0x00}));
  EXPECT_EQ(img.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(img.at(0, 1), 256.0 / 65535.0);
}

TEST(Pgm, RowZeroIsTop) {
  const auto img = slepian::read_pgm(bytes("P5\n1 2\n255\n", {10, 20}));
  EXPECT_DOUBLE_EQ(img.at(0, 0), 10.0 / 255.0);
  EXPECT_DOUBLE_EQ(img.at(0, 1), 20.0 / 255.0);
}

TEST(Pgm, RejectsMalformedInput) {
  try {
    slepian::read_pgm(bytes("P6\n1 1\n255\n", {0, 0, 0}));
    FAIL() << "P6 accepted";
  } catch (const slepian::FormatError& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
  try {
    slepian::read_pgm(bytes("P5\n4 4\n255\n", {1, 2, 3}));
    FAIL() << "truncated payload accepted";
  } catch (const slepian::FormatError& e) {
    EXPECT_GT(e.offset(), 0u);
  }
  EXPECT_THROW(slepian::read_pgm(bytes("P5\nx 4\n255\n")), slepian::FormatError);
  EXPECT_THROW(slepian::read_pgm(bytes("P5\n1 1\n70000\n", {0, 0})), slepian::FormatError);
  EXPECT_THROW(slepian::read_pgm(bytes("P5\n1 1\n0\n", {0})), slepian::FormatError);
  EXPECT_THROW(slepian::read_pgm(bytes("P5\n1 1\n255")), slepian::FormatError);
  EXPECT_THROW(slepian::read_pgm(bytes("")), slepian::FormatError);
}

TEST(Pgm, WriteExamples) {
  const auto one = slepian::write_pgm(RasterImage(1, 1, 1.0));
  EXPECT_EQ(one.back(), 255);
  const auto zero = slepian::write_pgm(RasterImage(2, 2, 0.0));
  ASSERT_GE(zero.size(), 4u);
  EXPECT_EQ(std::vector<std::uint8_t>(zero.end() - 4, zero.end()), std::vector<std::uint8_t>(4, 0));
  EXPECT_EQ(std::string(zero.begin(), zero.begin() + 2), "P5");
}

TEST(Pgm, RoundTripWithinQuantization) {
  const auto img = oracle::random_image(16, 16, 7);
  const auto back = slepian::read_pgm(slepian::write_pgm(img));
  double err = 0.0;
  for (std::size_t i = 0; i < 256; ++i) err = std::max(err, std::abs(img.pixels()[i] - back.pixels()[i]));
  EXPECT_LE(err, 1.0 / 510.0);
  const auto deep = slepian::read_pgm(slepian::write_pgm(img, slepian::PgmDepth::k16Bit));
  for (std::size_t i = 0; i < 256; ++i) EXPECT_LE(std::abs(img.pixels()[i] - deep.pixels()[i]), 0.5 / 65535.0 + 1e-15);
}

TEST(Rotate, ZeroIsIdentity) {
  const auto img = oracle::random_image(9, 7, 1);
  EXPECT_EQ(slepian::rotate_image(img, 0.0), img);
}

TEST(Rotate, QuarterTurnIsTransposeThenRowReversal) {
  const std::size_t n = 8;
  const auto img = oracle::random_image(n, n, 2);
  const auto rot = slepian::rotate_image(img, 90.0);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) EXPECT_NEAR(rot.at(x, y), img.at(n - 1 - y, x), 1e-12);
}

TEST(Rotate, MatchesIndependentOracle) {
  const auto img = oracle::random_image(32, 32, 3);
  for (double angle : {35.0, -17.5, 140.0, 271.0}) {
    const auto got = slepian::rotate_image(img, angle);
    const auto want = oracle::rotate(img, angle);
    for (std::size_t i = 0; i < got.pixels().size(); ++i)
      ASSERT_NEAR(got.pixels()[i], want.pixels()[i], 1e-12) << "angle " << angle << " pixel " << i;
  }
  const auto rect = oracle::random_image(20, 13, 4);
  const auto got = slepian::rotate_image(rect, 35.0);
  const auto want = oracle::rotate(rect, 35.0);
  for (std::size_t i = 0; i < got.pixels().size(); ++i) ASSERT_NEAR(got.pixels()[i], want.pixels()[i], 1e-12);
}

TEST(Rotate, ForwardBackwardOnCentralDisk) {
  const std::size_t n = 96;
  const auto img = smooth_image(n);
  for (double angle : {10.0, 35.0, 140.0}) {
    const auto back = slepian::rotate_image(slepian::rotate_image(img, angle), -angle);
    const double c = (n - 1) / 2.0, limit = 0.35 * n;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (std::hypot(x - c, y - c) <= limit) {
          sum += std::abs(back.at(x, y) - img.at(x, y));
          ++count;
        }
    EXPECT_LE(sum / count, 0.02) << angle;
  }
}

TEST(Polar, ConstantImage) {
  const auto p = slepian::to_polar(RasterImage(20, 20, 0.37), 8, 16);
  for (const auto& s : p.samples()) EXPECT_NEAR(s.real(), 0.37, 1e-12);
}

TEST(Polar, FourFoldSymmetricInput) {
  std::vector<double> px(9, 0.0);
  px[4] = 1.0;
  const auto p = slepian::to_polar(RasterImage(3, 3, std::move(px)), 1, 4);
  EXPECT_DOUBLE_EQ(p.radius(0), 0.5);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_NEAR(p(0, j).real(), p(0, 0).real(), 1e-15);
  EXPECT_GT(p(0, 0).real(), 0.0);
}

TEST(Polar, RadialRamp) {
  const std::size_t n = 64;
  const double c = (n - 1) / 2.0, rho = n / 2.0 - 0.5;
  std::vector<double> px(n * n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) px[y * n + x] = std::min(1.0, std::hypot(x - c, y - c) / rho);
  const auto p = slepian::to_polar(RasterImage(n, n, std::move(px)), 32, 64);
  for (std::size_t i = 0; i < 32; ++i) {
    if (p.radius(i) > 0.9) continue;
    for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(p(i, j).real(), p.radius(i), 0.02);
  }
}

TEST(Polar, Linear) {
  const auto x = oracle::random_image(17, 21, 5), y = oracle::random_image(17, 21, 6);
  const double a = 0.3, b = 0.6;
  std::vector<double> mix(x.pixels().size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * x.pixels()[i] + b * y.pixels()[i];
  const auto pm = slepian::to_polar(RasterImage(17, 21, std::move(mix)), 9, 13);
  const auto px = slepian::to_polar(x, 9, 13), py = slepian::to_polar(y, 9, 13);
  for (std::size_t i = 0; i < pm.samples().size(); ++i)
    EXPECT_NEAR(pm.samples()[i].real(), a * px.samples()[i].real() + b * py.samples()[i].real(), 1e-12);
}

TEST(Polar, RotationIsApproximatelyCyclicShift) {
  const auto img = smooth_image(128);
  const std::size_t R = 32, T = 256;
  const auto base = slepian::to_polar(img, R, T);
  for (double angle : {45.0, 90.0, 135.0}) {
    const auto rot = slepian::to_polar(slepian::rotate_image(img, angle), R, T);
    const auto shift = static_cast<std::size_t>(std::lround(angle * T / 360.0));
    double sum = 0.0;
    for (std::size_t i = 0; i < R; ++i)
      for (std::size_t j = 0; j < T; ++j) sum += std::abs(rot(i, (j + shift) % T) - base(i, j));
    EXPECT_LE(sum / (R * T), 0.03) << angle;
  }
}

TEST(Polar, GridGeometry) {
  const PolarImage p(4, 8);
  EXPECT_DOUBLE_EQ(p.radius(0), 0.125);
  EXPECT_DOUBLE_EQ(p.radius(3), 0.875);
  EXPECT_DOUBLE_EQ(p.angle(2), std::numbers::pi / 2);
  EXPECT_THROW(PolarImage(1, 1, std::vector<std::complex<double>>{{INFINITY, 0.0}}), slepian::DomainError);
}

TEST(Noise, VarianceMatchesSnr) {
  const RasterImage img(128, 128, 0.5);
  const auto noisy = slepian::add_gaussian_noise(img, {30.0, 99});
  double sum = 0.0, sum2 = 0.0;
  for (double p : noisy.pixels()) {
    sum += p - 0.5;
    sum2 += (p - 0.5) * (p - 0.5);
  }
  const double n = 128.0 * 128.0;
  const double var = sum2 / n - (sum / n) * (sum / n);
  EXPECT_NEAR(var, 0.25 / 1000.0, 0.05 * 0.25 / 1000.0);
}

TEST(Noise, DeterministicAndVanishingAtHighSnr) {
  const auto img = smooth_image(40);
  EXPECT_EQ(slepian::add_gaussian_noise(img, {30.0, 5}), slepian::add_gaussian_noise(img, {30.0, 5}));
  EXPECT_NE(slepian::add_gaussian_noise(img, {30.0, 5}), slepian::add_gaussian_noise(img, {30.0, 6}));
  const auto quiet = slepian::add_gaussian_noise(img, {300.0, 5});
  for (std::size_t i = 0; i < img.pixels().size(); ++i) EXPECT_NEAR(quiet.pixels()[i], img.pixels()[i], 1e-6);
}

TEST(Noise, ZeroImageIsDomainError) {
  EXPECT_THROW(slepian::add_gaussian_noise(RasterImage(4, 4, 0.0), {30.0, 1}), slepian::DomainError);
}
