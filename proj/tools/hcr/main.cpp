// hcr: train, evaluate and inspect the handwritten character recognizer.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hcr/error.hpp"

using hcr::cli::Options;

namespace {

void add_feature_flags(CLI::App* cmd, Options& opt) {
  auto& f = opt.pipeline.features;
  cmd->add_option("--grid", f.grid_n, "Grid size n for the n x n segments (2..5)")
      ->capture_default_str();
  cmd->add_option("--norm", f.norm_factor, "Normalization factor for gc values")
      ->capture_default_str();
  cmd->add_option("--threshold", opt.pipeline.binarize_threshold,
                  "Gray level below which a pixel is stroke")
      ->capture_default_str();
  cmd->add_option("--shiro-full", f.shirorekha.full,
                  "Headline run fraction classed as full")
      ->capture_default_str();
  cmd->add_option("--shiro-partial", f.shirorekha.partial,
                  "Headline run fraction classed as partial")
      ->capture_default_str();
  cmd->add_option("--spine-run", f.spine.min_run,
                  "Vertical run fraction needed for a spine")
      ->capture_default_str();
  cmd->add_option("--spine-end", f.spine.end_zone,
                  "Column fraction from which a spine counts as 'end'")
      ->capture_default_str();
}

void add_seed(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "Seed for generation, splitting and init")
      ->capture_default_str();
}

void add_data_flags(CLI::App* cmd, Options& opt) {
  auto& d = opt.data;
  auto* data = cmd->add_option("--data", d.root, "Dataset root (one directory per class)");
  auto* synth = cmd->add_flag("--synthetic", d.synthetic, "Use generated glyphs");
  data->excludes(synth);
  cmd->add_option("--classes", d.classes, "Synthetic class count")->capture_default_str();
  cmd->add_option("--per-class", d.per_class, "Synthetic samples per class")
      ->capture_default_str();
  cmd->add_option("--train-per-class", d.train_per_class, "Training samples per class")
      ->capture_default_str();
  cmd->add_option("--test-per-class", d.test_per_class, "Test samples per class")
      ->capture_default_str();
}

void add_train_flags(CLI::App* cmd, Options& opt) {
  auto& t = opt.pipeline.train;
  cmd->add_option("--hidden", opt.pipeline.n_hidden,
                  "Hidden units (0 = twice the input length)")
      ->capture_default_str();
  cmd->add_option("--max-iters", t.max_iters, "Maximum CG iterations")->capture_default_str();
  cmd->add_option("--grad-tol", t.grad_tol, "Stop when the gradient norm drops below this")
      ->capture_default_str();
  cmd->add_option("--restart-every", t.restart_every,
                  "Forced CG restart period (0 = parameter count)")
      ->capture_default_str();
  cmd->add_option("--ls-tol", t.line_search_tol, "Line search bracket tolerance")
      ->capture_default_str();
  cmd->add_option("--ls-evals", t.line_search_max_evals, "Line search evaluation budget")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Handwritten character recognition: thinning, structural features "
               "and a conjugate-gradient trained perceptron"};
  app.require_subcommand(1);
  Options opt;

  auto* train = app.add_subcommand("train", "Train a model and write it to --out");
  add_data_flags(train, opt);
  add_feature_flags(train, opt);
  add_train_flags(train, opt);
  add_seed(train, opt);
  train->add_option("--out", opt.out, "Model file to write")->required();
  train->add_option("--report", opt.report, "Also write the metrics report here");

  auto* eval = app.add_subcommand("eval", "Evaluate a model on a dataset");
  add_data_flags(eval, opt);
  add_feature_flags(eval, opt);
  add_seed(eval, opt);
  eval->add_option("--model", opt.model, "Model file")->required();
  eval->add_option("--subset", opt.subset, "Which part of the split to score")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, hcr::cli::Subset>{{"train", hcr::cli::Subset::Train},
                                                  {"test", hcr::cli::Subset::Test},
                                                  {"all", hcr::cli::Subset::All}},
          CLI::ignore_case));
  eval->add_option("--confusion", opt.confusion, "Write the confusion matrix as CSV");

  auto* predict = app.add_subcommand("predict", "Classify one image");
  add_feature_flags(predict, opt);
  predict->add_option("--model", opt.model, "Model file")->required();
  predict->add_option("image", opt.images, "PBM or PGM image")->required();

  auto* inspect = app.add_subcommand("inspect", "Write every preprocessing stage as PBM");
  add_feature_flags(inspect, opt);
  inspect->add_option("image", opt.images, "PBM or PGM image")->required();
  inspect->add_option("--out-dir", opt.out, "Output directory")->required();

  auto* gen = app.add_subcommand("gen", "Write a synthetic dataset to disk");
  gen->add_option("--classes", opt.data.classes, "Class count")->capture_default_str();
  gen->add_option("--per-class", opt.data.per_class, "Samples per class")
      ->capture_default_str();
  add_seed(gen, opt);
  gen->add_option("--out", opt.out, "Dataset root to create")->required();

  auto* features = app.add_subcommand("features", "Print one feature vector per image");
  add_feature_flags(features, opt);
  features->add_option("images", opt.images, "PBM or PGM images")->required();

  auto* thin = app.add_subcommand("thin", "Thin one image, optionally dumping every pass");
  add_feature_flags(thin, opt);
  thin->add_option("image", opt.images, "PBM or PGM image")->required();
  thin->add_option("--out-dir", opt.out, "Output directory")->required();
  thin->add_flag("--each-pass", opt.each_pass, "Write pass-NNN.pbm after every pass");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (train->parsed()) return hcr::cli::cmd_train(opt);
    if (eval->parsed()) return hcr::cli::cmd_eval(opt);
    if (predict->parsed()) return hcr::cli::cmd_predict(opt);
    if (inspect->parsed()) return hcr::cli::cmd_inspect(opt);
    if (gen->parsed()) return hcr::cli::cmd_gen(opt);
    if (features->parsed()) return hcr::cli::cmd_features(opt);
    if (thin->parsed()) return hcr::cli::cmd_thin(opt);
  } catch (const hcr::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
