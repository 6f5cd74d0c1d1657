#include "slepian/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "slepian/error.hpp"

namespace slepian {

std::vector<int> LabeledDataset::distinct_labels() const {
  std::set<int> unique(labels.begin(), labels.end());
  return {unique.begin(), unique.end()};
}

void LabeledDataset::validate() const {
  if (features.size() != labels.size())
    throw ParameterError("dataset has " + std::to_string(features.size()) + " feature vectors but " +
                         std::to_string(labels.size()) + " labels");
  if (features.empty()) throw ParameterError("dataset is empty");
  const std::size_t dim = features.front().size();
  if (dim == 0) throw ParameterError("feature vectors are empty");
  for (const auto& f : features)
    if (f.size() != dim) throw ParameterError("feature vectors differ in length");
  if (distinct_labels().size() < 2) throw ParameterError("dataset needs at least two distinct classes");
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.class_names = class_names;
  out.features.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.features.push_back(features.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

LinearModel::LinearModel(std::vector<int> labels, std::vector<double> offset, std::vector<double> scale,
                         RealMatrix weights, std::vector<double> bias)
    : labels_(std::move(labels)),
      offset_(std::move(offset)),
      scale_(std::move(scale)),
      weights_(std::move(weights)),
      bias_(std::move(bias)) {
  if (weights_.rows() != labels_.size() || bias_.size() != labels_.size() ||
      weights_.cols() != offset_.size() || scale_.size() != offset_.size())
    throw ParameterError("inconsistent linear model shapes");
}

std::vector<double> LinearModel::scores(std::span<const double> x) const {
  if (x.size() != offset_.size())
    throw ParameterError("feature length " + std::to_string(x.size()) + " does not match model dimension " +
                         std::to_string(offset_.size()));
  std::vector<double> out(labels_.size());
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    double acc = bias_[c];
    const auto w = weights_.row(c);
    for (std::size_t d = 0; d < x.size(); ++d) acc += w[d] * (x[d] - offset_[d]) * scale_[d];
    out[c] = acc;
  }
  return out;
}

int LinearModel::predict(std::span<const double> x) const {
  const auto s = scores(x);
  std::size_t best = 0;
  // labels_ is sorted ascending, so strict comparison keeps the lowest label on ties
  for (std::size_t c = 1; c < s.size(); ++c)
    if (s[c] > s[best]) best = c;
  return labels_[best];
}

LinearModel train_classifier(const LabeledDataset& train, double reg, std::size_t epochs,
                             std::uint64_t /*seed*/) {
  train.validate();
  if (!(reg > 0.0) || !std::isfinite(reg)) throw ParameterError("regularization must be positive");
  if (epochs == 0) throw ParameterError("epochs must be positive");

  const std::size_t n = train.size();
  const std::size_t dim = train.dimension();
  const auto labels = train.distinct_labels();

  // Standardize with population statistics.
  std::vector<double> offset(dim, 0.0), scale(dim, 1.0);
  for (const auto& f : train.features)
    for (std::size_t d = 0; d < dim; ++d) offset[d] += f[d];
  for (double& o : offset) o /= static_cast<double>(n);
  for (std::size_t d = 0; d < dim; ++d) {
    double var = 0.0;
    for (const auto& f : train.features) var += (f[d] - offset[d]) * (f[d] - offset[d]);
    var /= static_cast<double>(n);
    scale[d] = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
  }
  // Augmented rows: standardized features followed by a constant 1.
  RealMatrix x(n, dim + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) x(i, d) = (train.features[i][d] - offset[d]) * scale[d];
    x(i, dim) = 1.0;
  }

  RealMatrix weights(labels.size(), dim);
  std::vector<double> bias(labels.size());
  std::vector<double> w(dim + 1), step(dim + 1);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t t = 1; t <= epochs; ++t) {
      std::fill(step.begin(), step.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double y = train.labels[i] == labels[c] ? 1.0 : -1.0;
        const auto row = x.row(i);
        double margin = 0.0;
        for (std::size_t d = 0; d <= dim; ++d) margin += w[d] * row[d];
        if (y * margin < 1.0)
          for (std::size_t d = 0; d <= dim; ++d) step[d] += y * row[d];
      }
      const double eta = 1.0 / (reg * static_cast<double>(t));
      const double shrink = 1.0 - eta * reg;
      double norm2 = 0.0;
      for (std::size_t d = 0; d <= dim; ++d) {
        w[d] = shrink * w[d] + eta * step[d] / static_cast<double>(n);
        norm2 += w[d] * w[d];
      }
      // The optimum lies in the ball of radius 1/sqrt(reg).
      const double radius = 1.0 / std::sqrt(reg);
      if (norm2 > radius * radius) {
        const double f = radius / std::sqrt(norm2);
        for (double& v : w) v *= f;
      }
    }
    std::copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(dim), weights.row(c).begin());
    bias[c] = w[dim];
  }
  return LinearModel(labels, std::move(offset), std::move(scale), std::move(weights), std::move(bias));
}

double accuracy(const LinearModel& model, const LabeledDataset& data) {
  if (data.size() == 0) throw ParameterError("cannot score an empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (model.predict(data.features[i]) == data.labels[i]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace slepian
