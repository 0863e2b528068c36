#include "doctest.h"
#include "hcr/error.hpp"
#include "hcr/pipeline.hpp"
#include "hcr/synthetic.hpp"
#include "hcr/thinning.hpp"

using namespace hcr;

TEST_SUITE("pipeline") {
  TEST_CASE("config defaults") {
    PipelineConfig cfg;
    CHECK(cfg.input_length() == 23);
    CHECK(cfg.hidden_units() == 46);
    cfg.n_hidden = 10;
    CHECK(cfg.hidden_units() == 10);
    cfg.binarize_threshold = 300;
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("preprocessing stages chain together") {
    const Dataset d = generate_synthetic(4, 2, 13);
    for (const LabeledSample& s : d.samples) {
      const PreprocessStages st = preprocess(s.image);
      CHECK(st.binarized == s.image);
      CHECK(st.cropped == crop_to_content(s.image));
      CHECK(st.scaled.width() == kCanonicalSize);
      CHECK(st.scaled.height() == kCanonicalSize);
      CHECK(st.thinned == thin(st.scaled));
      CHECK(st.pruned == prune(st.thinned));
      const PreparedImage p = prepare(s.image);
      CHECK(p.canonical == st.scaled);
      CHECK(p.skeleton == st.pruned);
    }
    CHECK_THROWS_AS(prepare(BinaryRaster(5, 5)), Error);
  }

  TEST_CASE("parallel preparation keeps sample order") {
    const Dataset d = generate_synthetic(6, 3, 14);
    const auto all = prepare_all(d.samples);
    REQUIRE(all.size() == d.samples.size());
    for (std::size_t i = 0; i < all.size(); ++i)
      CHECK(all[i].skeleton == prepare(d.samples[i].image).skeleton);
  }

  TEST_CASE("examples carry flattened features and labels") {
    const Dataset d = generate_synthetic(3, 2, 15);
    FeatureConfig fc;
    fc.grid_n = 3;
    const auto ex = build_examples(d.samples, fc);
    REQUIRE(ex.size() == d.samples.size());
    const auto prepared = prepare_all(d.samples);
    const auto raw = measure_all(prepared, fc);
    const auto ex2 = make_examples(raw, d.samples, fc);
    for (std::size_t i = 0; i < ex.size(); ++i) {
      CHECK(ex[i].label == d.samples[i].label);
      CHECK(ex[i].input.size() == 16);
      CHECK(ex[i].input == image_features(prepared[i], fc).flatten());
      CHECK(ex2[i].input == ex[i].input);
      for (double v : ex[i].input) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }

  TEST_CASE("a small synthetic problem is learned") {
    const Dataset d = generate_synthetic(5, 12, 16);
    const DataSplit s = split(d, {8, 4, 16});
    PipelineConfig cfg;
    cfg.train.max_iters = 100;
    const auto train = build_examples(s.train, cfg.features);
    const auto test = build_examples(s.test, cfg.features);
    const TrainResult r = train_classifier(train, d.class_count(), cfg);
    CHECK(r.model.n_in() == 23);
    CHECK(r.model.n_out() == 5);
    CHECK(r.trace.back().loss < r.trace.front().loss);
    CHECK(evaluate(r.model, train).accuracy >= 0.9);
    CHECK(evaluate(r.model, test).accuracy >= 0.6);
  }
}
