#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "hcr/error.hpp"
#include "hcr/features.hpp"
#include "hcr/netpbm.hpp"
#include "hcr/synthetic.hpp"
#include "hcr/thinning.hpp"

namespace fs = std::filesystem;

namespace hcr::cli {
namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void validate(const Options& opt) {
  try {
    opt.pipeline.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Dataset load_data(const Options& opt) {
  const DataOptions& d = opt.data;
  if (d.synthetic == d.root.has_value())
    throw UsageError("exactly one of --data or --synthetic is required");
  if (d.synthetic) return generate_synthetic(d.classes, d.per_class, opt.seed);
  return load_dataset(*d.root, opt.pipeline.binarize_threshold);
}

DataSplit split_data(const Dataset& data, const Options& opt) {
  return split(data, {opt.data.train_per_class, opt.data.test_per_class, opt.seed});
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::vector<std::string> read_class_names(const fs::path& model, std::size_t n) {
  std::vector<std::string> names;
  std::ifstream in(class_names_path(model));
  for (std::string line; names.size() < n && std::getline(in, line);)
    names.push_back(line);
  for (std::size_t i = names.size(); i < n; ++i)
    names.push_back("class" + std::to_string(i));
  return names;
}

void require_input_length(const MlpModel& m, const PipelineConfig& cfg) {
  if (m.n_in() != cfg.input_length())
    throw Error("dimension mismatch: model expects " + std::to_string(m.n_in()) +
                " features, grid " + std::to_string(cfg.features.grid_n) +
                " produces " + std::to_string(cfg.input_length()));
}

BinaryRaster load_image(const fs::path& path, const Options& opt) {
  return load_binary_image(path, opt.pipeline.binarize_threshold);
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error("cannot create directory " + dir.string());
}

}  // namespace

fs::path class_names_path(const fs::path& model) {
  fs::path p = model;
  p += ".classes";
  return p;
}

int cmd_train(const Options& opt) {
  validate(opt);
  const Dataset data = load_data(opt);
  const DataSplit parts = split_data(data, opt);
  const FeatureConfig& fc = opt.pipeline.features;
  const auto train = build_examples(parts.train, fc);
  const auto test = build_examples(parts.test, fc);

  PipelineConfig cfg = opt.pipeline;
  cfg.train.seed = opt.seed;
  const TrainResult result = train_classifier(train, data.class_count(), cfg);

  save_model(opt.out, result.model);
  {
    auto names = open_out(class_names_path(opt.out));
    for (const auto& n : data.class_names) names << n << '\n';
  }

  const Evaluation train_eval = evaluate(result.model, train);
  const Evaluation test_eval = evaluate(result.model, test);
  std::ostringstream report;
  report << "classes " << data.class_count() << '\n'
         << "train_samples " << train.size() << '\n'
         << "test_samples " << test.size() << '\n'
         << "inputs " << cfg.input_length() << '\n'
         << "hidden " << cfg.hidden_units() << '\n'
         << "iterations " << result.trace.back().iter << '\n'
         << "converged " << (result.converged ? "yes" : "no") << '\n'
         << "final_loss " << format_g(result.trace.back().loss) << '\n'
         << "train_accuracy " << fixed4(train_eval.accuracy) << '\n'
         << "test_accuracy " << fixed4(test_eval.accuracy) << '\n';
  if (opt.report) {
    auto out = open_out(*opt.report);
    out << report.str();
  }
  std::cout << report.str();
  return 0;
}

int cmd_eval(const Options& opt) {
  validate(opt);
  const MlpModel model = load_model(opt.model);
  require_input_length(model, opt.pipeline);
  const Dataset data = load_data(opt);
  if (data.class_count() != model.n_out())
    throw Error("dataset has " + std::to_string(data.class_count()) +
                " classes, model has " + std::to_string(model.n_out()) + " outputs");

  std::vector<LabeledSample> chosen;
  if (opt.subset == Subset::All) {
    chosen = data.samples;
  } else {
    DataSplit parts = split_data(data, opt);
    chosen = std::move(opt.subset == Subset::Train ? parts.train : parts.test);
  }
  const auto examples = build_examples(chosen, opt.pipeline.features);
  const Evaluation ev = evaluate(model, examples);
  std::cout << "accuracy " << fixed4(ev.accuracy) << '\n'
            << "correct " << ev.correct << '\n'
            << "total " << ev.total << '\n';

  if (opt.confusion) {
    auto out = open_out(*opt.confusion);
    out << "true\\predicted";
    for (std::size_t p = 0; p < model.n_out(); ++p) out << ',' << p;
    out << '\n';
    for (std::size_t t = 0; t < model.n_out(); ++t) {
      out << t;
      for (std::size_t p = 0; p < model.n_out(); ++p) out << ',' << ev.confusion[t][p];
      out << '\n';
    }
  }
  return 0;
}

int cmd_predict(const Options& opt) {
  validate(opt);
  if (opt.images.size() != 1) throw UsageError("predict takes exactly one image");
  const MlpModel model = load_model(opt.model);
  require_input_length(model, opt.pipeline);
  const auto names = read_class_names(opt.model, model.n_out());
  const PreparedImage img = prepare(load_image(opt.images.front(), opt));
  const auto x = image_features(img, opt.pipeline.features).flatten();
  const auto y = forward(model, x);
  const std::size_t best = argmax(y);
  std::cout << best << ' ' << names[best] << ' ' << to_csv_line({y[best]}) << '\n';
  return 0;
}

int cmd_inspect(const Options& opt) {
  validate(opt);
  if (opt.images.size() != 1) throw UsageError("inspect takes exactly one image");
  const PreprocessStages st = preprocess(load_image(opt.images.front(), opt));
  ensure_directory(opt.out);
  write_pbm(opt.out / "1-binarized.pbm", st.binarized);
  write_pbm(opt.out / "2-cropped.pbm", st.cropped);
  write_pbm(opt.out / "3-scaled.pbm", st.scaled);
  write_pbm(opt.out / "4-thinned.pbm", st.thinned);
  write_pbm(opt.out / "5-pruned.pbm", st.pruned);

  const RawFeatures raw =
      measure_features(st.pruned, st.scaled, opt.pipeline.features);
  auto out = open_out(opt.out / "features.txt");
  out << to_csv_line(normalize(raw, opt.pipeline.features).flatten()) << '\n';
  std::cout << "intersections " << raw.intersections << '\n'
            << "shirorekha " << to_string(raw.shirorekha) << '\n'
            << "spine " << to_string(raw.spine) << '\n';
  return 0;
}

int cmd_gen(const Options& opt) {
  const Dataset data =
      generate_synthetic(opt.data.classes, opt.data.per_class, opt.seed);
  save_dataset(data, opt.out);
  auto manifest = open_out(opt.out / "manifest.csv");
  write_manifest_csv(manifest, data);
  std::cout << "wrote " << data.samples.size() << " samples in "
            << data.class_count() << " classes to " << opt.out.string() << '\n';
  return 0;
}

int cmd_features(const Options& opt) {
  validate(opt);
  if (opt.images.empty()) throw UsageError("features needs at least one image");
  for (const fs::path& path : opt.images) {
    const PreparedImage img = prepare(load_image(path, opt));
    std::cout << to_csv_line(image_features(img, opt.pipeline.features).flatten())
              << '\n';
  }
  return 0;
}

int cmd_thin(const Options& opt) {
  validate(opt);
  if (opt.images.size() != 1) throw UsageError("thin takes exactly one image");
  const BinaryRaster scaled =
      scale_to_canonical(crop_to_content(load_image(opt.images.front(), opt)));
  ensure_directory(opt.out);
  int passes = 0;
  const BinaryRaster thinned =
      thin(scaled, [&](int pass, const BinaryRaster& state, std::size_t removed) {
        passes = pass;
        if (!opt.each_pass) return;
        char name[32];
        std::snprintf(name, sizeof name, "pass-%03d.pbm", pass);
        write_pbm(opt.out / name, state);
        std::cout << "pass " << pass << " removed " << removed << '\n';
      });
  write_pbm(opt.out / "thinned.pbm", thinned);
  write_pbm(opt.out / "pruned.pbm", prune(thinned));
  std::cout << "passes " << passes << '\n';
  return 0;
}

}  // namespace hcr::cli
