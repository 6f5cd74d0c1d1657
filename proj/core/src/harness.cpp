#include "slepian/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "slepian/error.hpp"
#include "slepian/parallel.hpp"
#include "slepian/random.hpp"

namespace slepian {

std::vector<double> table_angles() { return {0, 35, 90, 140, 180, 230, 270, 325}; }

std::vector<Order> table_orders() {
  return {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 4}, {4, 1}, {4, 3}, {4, 5}};
}

std::vector<double> table_fractions() { return {0.2, 0.3, 0.4, 0.5}; }

double population_std(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size()));
}

StabilityReport rotation_stability(const RasterImage& image, std::span<const double> angles,
                                   std::span<const Order> orders, const DpssBasis& basis, PolarGrid grid,
                                   std::optional<NoiseSpec> noise, std::size_t threads) {
  if (angles.empty()) throw ParameterError("rotation_stability needs at least one angle");
  if (orders.empty()) throw ParameterError("rotation_stability needs at least one (m,n) order");
  std::size_t max_m = 0, max_n = 0;
  for (const auto& o : orders) {
    max_m = std::max(max_m, o.m);
    max_n = std::max(max_n, o.n);
  }
  if (max_m + 1 > basis.count())
    throw ParameterError("order m=" + std::to_string(max_m) + " needs more than the " +
                         std::to_string(basis.count()) + " sequences of " + basis.id());
  if (2 * max_n + 1 > grid.angular)
    throw AliasingError("order n=" + std::to_string(max_n) + " does not fit on " +
                        std::to_string(grid.angular) + " angular samples");

  StabilityReport report;
  report.angles.assign(angles.begin(), angles.end());
  report.columns.assign(orders.begin(), orders.end());
  report.values = RealMatrix(angles.size(), orders.size());
  report.grid = grid;
  report.basis_id = basis.id();
  report.noise = noise;
  report.generator = std::string(kGeneratorName);
  report.seed = noise ? noise->seed : 0;

  parallel_for(angles.size(), threads, [&](std::size_t row) {
    RasterImage rotated = rotate_image(image, angles[row]);
    if (noise) rotated = add_gaussian_noise(rotated, {noise->snr_db, child_seed(noise->seed, row)});
    const auto phi = feature_vector(rotated, basis, grid, max_m + 1, max_n);
    for (std::size_t c = 0; c < orders.size(); ++c) report.values(row, c) = phi.at(orders[c].m, orders[c].n);
  });

  std::vector<double> column(angles.size());
  for (std::size_t c = 0; c < orders.size(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < angles.size(); ++r) {
      column[r] = report.values(r, c);
      mean += column[r];
    }
    report.mean_row.push_back(mean / static_cast<double>(angles.size()));
    report.std_row.push_back(population_std(column));
  }
  return report;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(const LabeledDataset& ds,
                                                                            double fraction, SplitMode mode,
                                                                            std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ParameterError("training fraction must lie in (0,1), got " + std::to_string(fraction));
  RandomStream rng(seed);
  std::vector<std::size_t> train, test;

  if (mode == SplitMode::kStratified) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.size(); ++i) by_class[ds.labels[i]].push_back(i);
    for (auto& [label, members] : by_class) {
      const auto count = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(members.size())));
      if (count == 0) {
        const auto name = ds.class_names.count(label) ? ds.class_names.at(label) : std::to_string(label);
        throw ParameterError("training fraction " + std::to_string(fraction) + " leaves class '" + name +
                             "' (" + std::to_string(members.size()) + " items) without training data");
      }
      rng.shuffle(members);
      train.insert(train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(count));
      test.insert(test.end(), members.begin() + static_cast<std::ptrdiff_t>(count), members.end());
    }
  } else {
    std::vector<std::size_t> all(ds.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    rng.shuffle(all);
    const auto count = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(all.size())));
    if (count == 0) throw ParameterError("training fraction leaves no training data");
    train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
    test.assign(all.begin() + static_cast<std::ptrdiff_t>(count), all.end());
  }
  if (test.empty()) throw ParameterError("training fraction " + std::to_string(fraction) + " leaves no test data");
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

ClassificationReport classification_sweep(const LabeledDataset& ds, std::span<const double> fractions,
                                          std::size_t repeats, std::uint64_t seed,
                                          const SweepOptions& options) {
  ds.validate();
  if (fractions.empty()) throw ParameterError("classification sweep needs at least one fraction");
  if (repeats == 0) throw ParameterError("repeats must be positive");
  // Fail on stratification problems before any training starts.
  for (double p : fractions) split_indices(ds, p, options.split, seed);

  const std::size_t jobs = fractions.size() * repeats;
  std::vector<double> acc(jobs);
  parallel_for(jobs, options.threads, [&](std::size_t job) {
    const double p = fractions[job / repeats];
    const std::uint64_t s = child_seed(seed, job);
    const auto [train_idx, test_idx] = split_indices(ds, p, options.split, s);
    const auto model = train_classifier(ds.subset(train_idx), options.reg, options.epochs, s);
    acc[job] = accuracy(model, ds.subset(test_idx));
  });

  ClassificationReport report;
  report.train_fractions.assign(fractions.begin(), fractions.end());
  report.repeats = repeats;
  report.seed = seed;
  report.split = options.split;
  report.reg = options.reg;
  report.epochs = options.epochs;
  report.generator = std::string(kGeneratorName);
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    const std::span<const double> block(acc.data() + f * repeats, repeats);
    double mean = 0.0;
    for (double a : block) mean += a;
    report.mean_accuracy.push_back(mean / static_cast<double>(repeats));
    report.std_accuracy.push_back(population_std(block));
  }
  return report;
}

}  // namespace slepian
