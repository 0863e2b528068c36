#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hcr/conjugate_gradient.hpp"
#include "hcr/dataset.hpp"
#include "hcr/features.hpp"
#include "hcr/mlp.hpp"
#include "hcr/raster.hpp"
#include "hcr/training.hpp"

namespace hcr {

/// Every tunable knob of the recognizer, with the module defaults.
struct PipelineConfig {
  FeatureConfig features;
  int binarize_threshold = kDefaultBinarizeThreshold;
  std::size_t n_hidden = 0;  // 0 selects 2 * input_length()
  TrainConfig train;

  void validate() const;
  std::size_t input_length() const {
    return FeatureVector::length_for_grid(features.grid_n);
  }
  std::size_t hidden_units() const {
    return n_hidden ? n_hidden : 2 * input_length();
  }
};

/// Every intermediate raster of preprocessing, in order.
struct PreprocessStages {
  BinaryRaster binarized;
  BinaryRaster cropped;
  BinaryRaster scaled;
  BinaryRaster thinned;
  BinaryRaster pruned;
};

/// crop -> scale -> thin -> prune. Throws "blank image" for empty input.
PreprocessStages preprocess(const BinaryRaster& binarized);

/// The two rasters feature extraction needs.
struct PreparedImage {
  BinaryRaster canonical;  // scaled, before thinning
  BinaryRaster skeleton;   // pruned skeleton
};

PreparedImage prepare(const BinaryRaster& binarized);

/// prepare() over a sample set. Work is spread over hardware threads; the
/// result is in sample order regardless.
std::vector<PreparedImage> prepare_all(std::span<const LabeledSample> samples);

FeatureVector image_features(const PreparedImage& img, const FeatureConfig& cfg);

std::vector<RawFeatures> measure_all(std::span<const PreparedImage> images,
                                     const FeatureConfig& cfg);

/// Pairs normalized features with the sample labels.
std::vector<Example> make_examples(std::span<const RawFeatures> raw,
                                   std::span<const LabeledSample> samples,
                                   const FeatureConfig& cfg);

/// prepare_all + measure_all + make_examples.
std::vector<Example> build_examples(std::span<const LabeledSample> samples,
                                    const FeatureConfig& cfg);

/// Initializes a model sized by `cfg` and trains it with cg_train().
TrainResult train_classifier(std::span<const Example> train,
                             std::size_t n_classes, const PipelineConfig& cfg);

}  // namespace hcr
