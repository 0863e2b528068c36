#include "hcr/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>

#include "hcr/error.hpp"
#include "hcr/thinning.hpp"

namespace hcr {

void PipelineConfig::validate() const {
  features.validate();
  train.validate();
  if (binarize_threshold < 0 || binarize_threshold > 255)
    throw Error("binarize threshold must be in 0..255");
}

PreprocessStages preprocess(const BinaryRaster& binarized) {
  BinaryRaster cropped = crop_to_content(binarized);
  BinaryRaster scaled = scale_to_canonical(cropped);
  BinaryRaster thinned = thin(scaled);
  BinaryRaster pruned = prune(thinned);
  return {binarized, std::move(cropped), std::move(scaled), std::move(thinned),
          std::move(pruned)};
}

PreparedImage prepare(const BinaryRaster& binarized) {
  BinaryRaster scaled = scale_to_canonical(crop_to_content(binarized));
  BinaryRaster skeleton = prune(thin(scaled));
  return {std::move(scaled), std::move(skeleton)};
}

std::vector<PreparedImage> prepare_all(std::span<const LabeledSample> samples) {
  std::vector<std::optional<PreparedImage>> slots(samples.size());
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(samples.size(), 1));
  std::vector<std::exception_ptr> errors(workers);
  const auto run = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < samples.size(); i += workers)
        slots[i] = prepare(samples[i].image);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<PreparedImage> out;
  out.reserve(samples.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

FeatureVector image_features(const PreparedImage& img, const FeatureConfig& cfg) {
  return extract_features(img.skeleton, img.canonical, cfg);
}

std::vector<RawFeatures> measure_all(std::span<const PreparedImage> images,
                                     const FeatureConfig& cfg) {
  std::vector<RawFeatures> out;
  out.reserve(images.size());
  for (const PreparedImage& img : images)
    out.push_back(measure_features(img.skeleton, img.canonical, cfg));
  return out;
}

std::vector<Example> make_examples(std::span<const RawFeatures> raw,
                                   std::span<const LabeledSample> samples,
                                   const FeatureConfig& cfg) {
  if (raw.size() != samples.size()) throw Error("feature/sample count mismatch");
  std::vector<Example> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out.push_back({normalize(raw[i], cfg).flatten(), samples[i].label});
  return out;
}

std::vector<Example> build_examples(std::span<const LabeledSample> samples,
                                    const FeatureConfig& cfg) {
  const auto prepared = prepare_all(samples);
  const auto raw = measure_all(prepared, cfg);
  return make_examples(raw, samples, cfg);
}

TrainResult train_classifier(std::span<const Example> train,
                             std::size_t n_classes, const PipelineConfig& cfg) {
  cfg.validate();
  const MlpModel init =
      init_model(cfg.input_length(), cfg.hidden_units(), n_classes, cfg.train.seed);
  return cg_train(init, train, cfg.train);
}

}  // namespace hcr
