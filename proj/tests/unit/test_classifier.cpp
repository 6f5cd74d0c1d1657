#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "slepian/classifier.hpp"
#include "slepian/error.hpp"
#include "slepian/random.hpp"

using slepian::LabeledDataset;

namespace {

LabeledDataset blobs(std::size_t per_class, double separation, std::uint64_t seed) {
  slepian::RandomStream rng(seed);
  LabeledDataset ds;
  const double centers[3][2] = {{0.0, 0.0}, {separation, 0.0}, {0.5 * separation, separation}};
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < per_class; ++i) {
      ds.features.push_back({centers[c][0] + rng.normal(), centers[c][1] + rng.normal()});
      ds.labels.push_back(c + 1);
    }
  return ds;
}

}  // namespace

TEST(Classifier, SeparableOneDimensional) {
  LabeledDataset ds{{{0.0}, {1.0}}, {1, 2}, {}};
  for (double reg : {0.1, 0.01, 1e-4}) {
    const auto model = slepian::train_classifier(ds, reg, 200, 0);
    EXPECT_EQ(slepian::accuracy(model, ds), 1.0) << reg;
    EXPECT_EQ(model.predict(std::vector<double>{-3.0}), 1);
    EXPECT_EQ(model.predict(std::vector<double>{4.0}), 2);
  }
}

TEST(Classifier, GaussianBlobsGeneralize) {
  const auto train = blobs(50, 6.0, 1);
  const auto test = blobs(50, 6.0, 2);
  const auto model = slepian::train_classifier(train, 1e-3, 500, 0);
  EXPECT_GE(slepian::accuracy(model, test), 0.95);
  EXPECT_EQ(model.weights().rows(), 3u);
  EXPECT_EQ(model.bias().size(), 3u);
}

TEST(Classifier, SeparableTrainingSetIsFitExactly) {
  const auto train = blobs(30, 10.0, 3);
  const auto model = slepian::train_classifier(train, 1e-5, 2000, 0);
  EXPECT_EQ(slepian::accuracy(model, train), 1.0);
}

TEST(Classifier, DuplicatedDataGivesSameDecisionFunction) {
  const auto ds = blobs(20, 4.0, 4);
  auto doubled = ds;
  doubled.features.insert(doubled.features.end(), ds.features.begin(), ds.features.end());
  doubled.labels.insert(doubled.labels.end(), ds.labels.begin(), ds.labels.end());
  const auto a = slepian::train_classifier(ds, 1e-2, 300, 7);
  const auto b = slepian::train_classifier(doubled, 1e-2, 300, 7);
  slepian::RandomStream rng(5);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x{rng.uniform(-5, 10), rng.uniform(-5, 10)};
    const auto sa = a.scores(x), sb = b.scores(x);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(sa[c], sb[c], 1e-9);
  }
}

TEST(Classifier, DeterministicGivenSeed) {
  const auto ds = blobs(20, 3.0, 6);
  const auto a = slepian::train_classifier(ds, 1e-3, 100, 11);
  const auto b = slepian::train_classifier(ds, 1e-3, 100, 11);
  EXPECT_EQ(a.weights(), b.weights());
}

TEST(Classifier, TiesGoToLowestLabel) {
  slepian::RealMatrix w(3, 1);
  const slepian::LinearModel model({2, 5, 9}, {0.0}, {1.0}, w, {0.0, 0.0, 0.0});
  EXPECT_EQ(model.predict(std::vector<double>{1.0}), 2);
}

TEST(Classifier, Errors) {
  LabeledDataset one{{{0.0}, {1.0}}, {1, 1}, {}};
  EXPECT_THROW(slepian::train_classifier(one, 0.1, 10, 0), slepian::ParameterError);
  LabeledDataset ragged{{{0.0}, {1.0, 2.0}}, {1, 2}, {}};
  EXPECT_THROW(slepian::train_classifier(ragged, 0.1, 10, 0), slepian::ParameterError);
  LabeledDataset ok{{{0.0}, {1.0}}, {1, 2}, {}};
  EXPECT_THROW(slepian::train_classifier(ok, 0.0, 10, 0), slepian::ParameterError);
  EXPECT_THROW(slepian::train_classifier(ok, 0.1, 0, 0), slepian::ParameterError);
  const auto model = slepian::train_classifier(ok, 0.1, 10, 0);
  EXPECT_THROW(model.predict(std::vector<double>{1.0, 2.0}), slepian::ParameterError);
}

TEST(LabeledDataset, SubsetAndLabels) {
  LabeledDataset ds{{{0.0}, {1.0}, {2.0}}, {3, 1, 3}, {{1, "a"}, {3, "b"}}};
  EXPECT_EQ(ds.distinct_labels(), (std::vector<int>{1, 3}));
  const std::vector<std::size_t> idx{2, 0};
  const auto sub = ds.subset(idx);
  EXPECT_EQ(sub.labels, (std::vector<int>{3, 3}));
  EXPECT_EQ(sub.features[0][0], 2.0);
  EXPECT_EQ(sub.class_names.at(3), "b");
}
