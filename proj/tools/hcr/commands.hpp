#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcr/dataset.hpp"
#include "hcr/pipeline.hpp"

namespace hcr::cli {

/// Bad flags or flag values; reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subset { Train, Test, All };

/// Where samples come from: a directory tree or the synthetic generator.
struct DataOptions {
  std::optional<std::filesystem::path> root;
  bool synthetic = false;
  std::size_t classes = 25;
  std::size_t per_class = 40;
  std::size_t train_per_class = 30;
  std::size_t test_per_class = 10;
};

struct Options {
  PipelineConfig pipeline;
  DataOptions data;
  std::uint64_t seed = 1;

  std::filesystem::path model;
  std::filesystem::path out;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> confusion;
  Subset subset = Subset::Test;
  std::vector<std::filesystem::path> images;
  bool each_pass = false;
};

int cmd_train(const Options& opt);
int cmd_eval(const Options& opt);
int cmd_predict(const Options& opt);
int cmd_inspect(const Options& opt);
int cmd_gen(const Options& opt);
int cmd_features(const Options& opt);
int cmd_thin(const Options& opt);

/// Sidecar written next to a model file, one class name per line.
std::filesystem::path class_names_path(const std::filesystem::path& model);

}  // namespace hcr::cli
