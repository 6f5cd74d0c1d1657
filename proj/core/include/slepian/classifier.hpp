#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "slepian/matrix.hpp"

namespace slepian {

/// Feature vectors with small-integer class labels.
struct LabeledDataset {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
  std::map<int, std::string> class_names;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dimension() const noexcept { return features.empty() ? 0 : features.front().size(); }

  /// Sorted distinct labels.
  std::vector<int> distinct_labels() const;

  /// Throws ParameterError unless features and labels pair up, all vectors
  /// share one length and at least two distinct labels occur.
  void validate() const;

  LabeledDataset subset(std::span<const std::size_t> indices) const;
};

/// One-vs-rest linear classifier over standardized features.
class LinearModel {
 public:
  LinearModel(std::vector<int> labels, std::vector<double> offset, std::vector<double> scale,
              RealMatrix weights, std::vector<double> bias);

  const std::vector<int>& labels() const noexcept { return labels_; }
  const RealMatrix& weights() const noexcept { return weights_; }
  std::span<const double> bias() const noexcept { return bias_; }

  /// Score of every class, in labels() order.
  std::vector<double> scores(std::span<const double> x) const;

  /// Label with the highest score; ties go to the lowest label.
  int predict(std::span<const double> x) const;

 private:
  std::vector<int> labels_;
  std::vector<double> offset_;
  std::vector<double> scale_;
  RealMatrix weights_;
  std::vector<double> bias_;
};

/// Trains one maximum-margin hyperplane per class against the rest by
/// minimizing  reg/2 |w|^2 + mean_i max(0, 1 - y_i (w.x_i + b))  with
/// Pegasos-style subgradient steps 1/(reg t). Each step uses the full
/// training set, which makes the result independent of example order and
/// of duplicated examples. The bias is carried as a constant unit feature.
/// The full-batch solver draws no randomness; `seed` is accepted so that
/// stochastic solvers can share this signature.
LinearModel train_classifier(const LabeledDataset& train, double reg, std::size_t epochs,
                             std::uint64_t seed);

double accuracy(const LinearModel& model, const LabeledDataset& data);

}  // namespace slepian
