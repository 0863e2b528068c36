#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hcr/raster.hpp"

namespace hcr {

struct LabeledSample {
  BinaryRaster image;
  std::size_t label = 0;
  std::string source_id;
};

struct Dataset {
  std::vector<LabeledSample> samples;
  std::vector<std::string> class_names;  // index = label

  std::size_t class_count() const noexcept { return class_names.size(); }
};

/// One subdirectory per class under `root`, each holding .pbm/.pgm/.pnm
/// files. Labels follow lexicographic directory order, files are read in
/// lexicographic order, and gray images go through binarize().
Dataset load_dataset(const std::filesystem::path& root,
                     int threshold = kDefaultBinarizeThreshold);

/// Writes `<root>/<class_name>/<n>.pbm` per sample. Fails if `root` exists
/// and is not a directory.
void save_dataset(const Dataset& data, const std::filesystem::path& root);

/// `source_id,class_index,class_name`, one line per sample plus a header.
void write_manifest_csv(std::ostream& out, const Dataset& data);

struct SplitSpec {
  std::size_t train_per_class = 30;
  std::size_t test_per_class = 10;
  std::uint64_t seed = 1;
};

struct DataSplit {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;
};

/// Seeded shuffle inside each class; the first train_per_class samples go to
/// train, the next test_per_class to test, the rest are unused. Output is
/// ordered by class. Throws naming the first class that is too small.
DataSplit split(const Dataset& data, const SplitSpec& spec);

}  // namespace hcr
