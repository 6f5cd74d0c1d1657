#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slepian/classifier.hpp"
#include "slepian/dpss.hpp"
#include "slepian/imaging.hpp"
#include "slepian/matrix.hpp"
#include "slepian/moments.hpp"

namespace slepian {

/// A (radial, angular) order pair selecting Phi[m][n].
struct Order {
  std::size_t m = 0;
  std::size_t n = 0;

  friend bool operator==(const Order&, const Order&) = default;
};

/// The eight orientations 0, 35, 90, 140, 180, 230, 270, 325 degrees.
std::vector<double> table_angles();

/// The ten columns (1,1) (1,2) (2,1) (2,2) (2,3) (3,2) (3,4) (4,1) (4,3) (4,5).
std::vector<Order> table_orders();

/// Population standard deviation (divides by the sample count).
double population_std(std::span<const double> values);

struct StabilityReport {
  std::vector<double> angles;
  std::vector<Order> columns;
  RealMatrix values;  // angles x columns
  std::vector<double> std_row;
  std::vector<double> mean_row;

  PolarGrid grid;
  std::string basis_id;
  std::optional<NoiseSpec> noise;
  std::string generator;
  std::uint64_t seed = 0;
};

/// For every angle: rotate, optionally add noise (seed derived from the
/// noise seed and the row index), featurize and keep the requested Phi.
/// Rows are independent and may run on `threads` workers.
StabilityReport rotation_stability(const RasterImage& image, std::span<const double> angles,
                                   std::span<const Order> orders, const DpssBasis& basis, PolarGrid grid,
                                   std::optional<NoiseSpec> noise = std::nullopt, std::size_t threads = 1);

enum class SplitMode { kStratified, kRandom };

struct SweepOptions {
  double reg = 1e-3;
  std::size_t epochs = 500;
  SplitMode split = SplitMode::kStratified;
  std::size_t threads = 1;
};

struct ClassificationReport {
  std::vector<double> train_fractions;
  std::vector<double> mean_accuracy;
  std::vector<double> std_accuracy;
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
  SplitMode split = SplitMode::kStratified;
  double reg = 0.0;
  std::size_t epochs = 0;
  std::string generator;
};

/// Fractions 0.2, 0.3, 0.4, 0.5.
std::vector<double> table_fractions();

/// Indices of a train/test split. In stratified mode each class contributes
/// round(p * class_size) training items and a class that would get none is a
/// ParameterError naming it. Random mode draws round(p * size) items overall.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(const LabeledDataset& ds,
                                                                            double fraction, SplitMode mode,
                                                                            std::uint64_t seed);

/// Repeated split/train/evaluate per fraction. Repeat r of fraction f uses
/// child seed (seed, f * repeats + r), so the report does not depend on the
/// number of worker threads.
ClassificationReport classification_sweep(const LabeledDataset& ds, std::span<const double> fractions,
                                          std::size_t repeats, std::uint64_t seed,
                                          const SweepOptions& options = {});

// ---------------------------------------------------------------------------
// Synthetic data

struct SyntheticOptions {
  std::size_t image_size = 96;
  /// Per-instance noise; nullopt renders clean images.
  std::optional<double> snr_db = 35.0;
  /// Relative spread of each instance's harmonic amplitudes around the class template.
  double jitter = 0.1;
  DpssParams basis{64, 0.1, 10};
  PolarGrid grid{64, 128};
};

struct SyntheticImage {
  int label = 0;
  RasterImage image;
};

/// Smooth shapes whose classes differ in which (radial profile, angular
/// order) harmonics they carry. Each item gets random harmonic phases, a
/// random rotation and, optionally, noise. Labels run 1..n_classes.
/// Produces n_classes * per_class * rotations_per_item images.
std::vector<SyntheticImage> make_synthetic_images(std::size_t n_classes, std::size_t per_class,
                                                  std::size_t rotations_per_item, std::uint64_t seed,
                                                  const SyntheticOptions& options = {});

/// make_synthetic_images followed by feature_vector (M=10, L=9) on each image.
LabeledDataset make_synthetic_dataset(std::size_t n_classes, std::size_t per_class,
                                      std::size_t rotations_per_item, std::uint64_t seed,
                                      const SyntheticOptions& options = {});

/// Featurizes labeled images (M=10, L=9) on up to `threads` workers.
LabeledDataset featurize(std::span<const SyntheticImage> images, const DpssBasis& basis, PolarGrid grid,
                         std::size_t threads = 1);

/// Smooth face-like test pattern used for rotation-stability runs when no
/// image is supplied.
RasterImage synthetic_test_image(std::size_t size = 128);

/// Loads `<root>/<class_name>/<image>.pgm`. Classes are labeled 1.. in
/// lexicographic order of their directory names.
LabeledDataset load_dataset_dir(const std::filesystem::path& root, const DpssBasis& basis, PolarGrid grid,
                                std::size_t threads = 1);

}  // namespace slepian
