#include "hcr/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>

#include "hcr/error.hpp"
#include "hcr/netpbm.hpp"
#include "random.hpp"

namespace fs = std::filesystem;

namespace hcr {
namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".pbm" || ext == ".pgm" || ext == ".pnm";
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw Error("cannot open " + dir.string() + ": " + ec.message());
  std::vector<fs::path> out;
  for (const auto& entry : it) {
    if (directories ? entry.is_directory() : entry.is_regular_file())
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return out;
}

}  // namespace

Dataset load_dataset(const fs::path& root, int threshold) {
  if (!fs::is_directory(root))
    throw Error("dataset root " + root.string() + " is not a directory");
  Dataset data;
  for (const fs::path& class_dir : sorted_entries(root, true)) {
    const std::string name = class_dir.filename().string();
    const std::size_t label = data.class_names.size();
    std::size_t count = 0;
    for (const fs::path& file : sorted_entries(class_dir, false)) {
      if (!is_image_file(file)) continue;
      data.samples.push_back({load_binary_image(file, threshold), label,
                              name + "/" + file.filename().string()});
      ++count;
    }
    if (count == 0) throw Error("class '" + name + "' has no samples");
    data.class_names.push_back(name);
  }
  if (data.class_names.empty()) throw Error("no classes found");
  return data;
}

void save_dataset(const Dataset& data, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec || !fs::is_directory(root))
    throw Error("cannot create " + root.string());
  std::vector<std::size_t> next(data.class_count(), 0);
  for (const LabeledSample& s : data.samples) {
    const fs::path dir = root / data.class_names.at(s.label);
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string());
    char name[32];
    std::snprintf(name, sizeof name, "%04zu.pbm", next[s.label]++);
    write_pbm(dir / name, s.image, PnmEncoding::Raw);
  }
}

void write_manifest_csv(std::ostream& out, const Dataset& data) {
  out << "source_id,class_index,class_name\n";
  for (const LabeledSample& s : data.samples)
    out << s.source_id << ',' << s.label << ',' << data.class_names.at(s.label)
        << '\n';
}

DataSplit split(const Dataset& data, const SplitSpec& spec) {
  if (spec.train_per_class < 1 || spec.test_per_class < 1)
    throw Error("split counts must be >= 1");
  std::vector<std::vector<std::size_t>> by_class(data.class_count());
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const std::size_t label = data.samples[i].label;
    if (label >= by_class.size()) throw Error("label out of range");
    by_class[label].push_back(i);
  }
  const std::size_t need = spec.train_per_class + spec.test_per_class;
  detail::Rng rng(spec.seed);
  DataSplit out;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& idx = by_class[c];
    if (idx.size() < need)
      throw Error("class '" + data.class_names[c] + "' has " +
                  std::to_string(idx.size()) + " samples, split needs " +
                  std::to_string(need));
    for (std::size_t i = idx.size() - 1; i > 0; --i)
      std::swap(idx[i], idx[rng.below(i + 1)]);
    for (std::size_t k = 0; k < need; ++k)
      (k < spec.train_per_class ? out.train : out.test)
          .push_back(data.samples[idx[k]]);
  }
  return out;
}

}  // namespace hcr
