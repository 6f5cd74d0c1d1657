#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "slepian/error.hpp"
#include "slepian/harness.hpp"
#include "slepian/parallel.hpp"
#include "slepian/random.hpp"

namespace slepian {
namespace {

using std::numbers::pi;

constexpr std::array<double, 3> kRingCenters = {0.3, 0.5, 0.7};
constexpr double kBaseLevel = 0.45;

struct Harmonic {
  int order = 0;
  double center = 0.5;
  double amplitude = 0.0;
  double phase = 0.0;
};

// Soft disk that reaches ~0.03 at the rim and vanishes in the corners.
double envelope(double r) { return std::exp(-std::pow(r / 0.85, 8.0)); }

// Ring profile that is flat at the origin, so every harmonic stays smooth there.
double ring(double r, double center) {
  const double d = (r - center) / 0.14;
  return std::exp(-d * d) * (1.0 - std::exp(-(r / 0.12) * (r / 0.12)));
}

std::array<Harmonic, 2> class_template(std::size_t c) {
  const std::size_t band = c / 5;
  return {Harmonic{static_cast<int>(1 + c % 5), kRingCenters[band % 3], 0.28, 0.0},
          Harmonic{static_cast<int>(1 + (c + 2) % 5), kRingCenters[(band + 1) % 3], 0.12, 0.0}};
}

template <typename Field>
RasterImage render(std::size_t size, Field&& field) {
  const double c = 0.5 * (static_cast<double>(size) - 1.0);
  const double rho = 0.5 * static_cast<double>(size) - 0.5;
  std::vector<double> pixels(size * size);
  for (std::size_t y = 0; y < size; ++y)
    for (std::size_t x = 0; x < size; ++x) {
      const double u = (static_cast<double>(x) - c) / rho;
      const double v = (c - static_cast<double>(y)) / rho;
      pixels[y * size + x] = std::clamp(field(u, v), 0.0, 1.0);
    }
  return RasterImage(size, size, std::move(pixels));
}

RasterImage render_harmonics(std::size_t size, std::span<const Harmonic> terms) {
  return render(size, [&](double u, double v) {
    const double r = std::hypot(u, v);
    const double theta = std::atan2(v, u);
    double value = kBaseLevel;
    for (const auto& h : terms)
      value += h.amplitude * ring(r, h.center) * std::cos(h.order * theta + h.phase);
    return envelope(r) * value;
  });
}

}  // namespace

std::vector<SyntheticImage> make_synthetic_images(std::size_t n_classes, std::size_t per_class,
                                                  std::size_t rotations_per_item, std::uint64_t seed,
                                                  const SyntheticOptions& options) {
  if (n_classes < 2) throw ParameterError("synthetic dataset needs at least two classes");
  if (per_class == 0 || rotations_per_item == 0)
    throw ParameterError("per_class and rotations_per_item must be positive");
  if (options.image_size < 8) throw ParameterError("synthetic images must be at least 8 pixels wide");

  std::vector<SyntheticImage> out;
  out.reserve(n_classes * per_class * rotations_per_item);
  for (std::size_t c = 0; c < n_classes; ++c) {
    const auto tmpl = class_template(c);
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::uint64_t item_seed = child_seed(seed, c * per_class + i);
      RandomStream rng(item_seed);
      std::array<Harmonic, 2> terms = tmpl;
      for (auto& h : terms) {
        h.amplitude *= 1.0 + options.jitter * rng.normal();
        h.phase = rng.uniform(0.0, 2.0 * pi);
      }
      const RasterImage base = render_harmonics(options.image_size, terms);
      for (std::size_t k = 0; k < rotations_per_item; ++k) {
        RasterImage img = rotate_image(base, rng.uniform(0.0, 360.0));
        if (options.snr_db) img = add_gaussian_noise(img, {*options.snr_db, child_seed(item_seed, k)});
        out.push_back({static_cast<int>(c + 1), std::move(img)});
      }
    }
  }
  return out;
}

LabeledDataset featurize(std::span<const SyntheticImage> images, const DpssBasis& basis, PolarGrid grid,
                         std::size_t threads) {
  LabeledDataset ds;
  ds.features.resize(images.size());
  ds.labels.resize(images.size());
  parallel_for(images.size(), threads, [&](std::size_t i) {
    ds.features[i] = feature_vector(images[i].image, basis, grid).entries;
    ds.labels[i] = images[i].label;
  });
  for (int label : ds.labels) ds.class_names.emplace(label, "class" + std::to_string(label));
  return ds;
}

LabeledDataset make_synthetic_dataset(std::size_t n_classes, std::size_t per_class,
                                      std::size_t rotations_per_item, std::uint64_t seed,
                                      const SyntheticOptions& options) {
  const auto images = make_synthetic_images(n_classes, per_class, rotations_per_item, seed, options);
  return featurize(images, compute_dpss(options.basis), options.grid);
}

RasterImage synthetic_test_image(std::size_t size) {
  // Cartoon face built from elliptical patches with logistic edges about
  // 1.5 px wide, so the image is smooth at pixel scale but keeps real
  // structure in the low angular orders.
  struct Patch {
    double u, v, su, sv, tilt, amplitude;
  };
  static constexpr std::array<Patch, 9> patches = {{
      {0.00, 0.00, 0.62, 0.78, 0.00, 0.45},     // face
      {0.00, 0.55, 0.66, 0.35, 0.15, -0.25},    // hair line
      {-0.26, 0.22, 0.11, 0.06, 0.10, 0.35},    // left eye
      {0.27, 0.24, 0.10, 0.06, -0.10, 0.35},    // right eye
      {-0.26, 0.36, 0.14, 0.03, 0.20, -0.20},   // left brow
      {0.28, 0.38, 0.13, 0.03, -0.25, -0.20},   // right brow
      {0.03, -0.05, 0.05, 0.16, 0.05, 0.15},    // nose
      {-0.02, -0.40, 0.25, 0.06, 0.05, -0.25},  // mouth
      {0.55, -0.10, 0.08, 0.18, 0.00, 0.20},    // ear
  }};
  constexpr double kEdgePixels = 1.5;
  const double rho = 0.5 * static_cast<double>(size) - 0.5;
  return render(size, [rho](double u, double v) {
    double value = 0.15;
    for (const auto& p : patches) {
      const double c = std::cos(p.tilt), s = std::sin(p.tilt);
      const double du = ((u - p.u) * c + (v - p.v) * s) / p.su;
      const double dv = (-(u - p.u) * s + (v - p.v) * c) / p.sv;
      const double d = std::hypot(du, dv);
      const double pixels_per_unit = std::min(p.su, p.sv) * rho;
      value += p.amplitude / (1.0 + std::exp((d - 1.0) * pixels_per_unit / kEdgePixels));
    }
    return value;
  });
}

LabeledDataset load_dataset_dir(const std::filesystem::path& root, const DpssBasis& basis, PolarGrid grid,
                                std::size_t threads) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw Error("dataset root " + root.string() + " is not a directory");

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());

  std::vector<SyntheticImage> images;
  std::map<int, std::string> names;
  int label = 0;
  for (const auto& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
    if (files.empty()) continue;
    std::sort(files.begin(), files.end());
    ++label;
    names[label] = dir.filename().string();
    for (const auto& f : files) images.push_back({label, read_pgm_file(f)});
  }
  auto ds = featurize(images, basis, grid, threads);
  ds.class_names = std::move(names);
  ds.validate();
  return ds;
}

}  // namespace slepian
