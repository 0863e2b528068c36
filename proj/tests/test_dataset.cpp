#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "hcr/dataset.hpp"
#include "hcr/error.hpp"
#include "hcr/netpbm.hpp"
#include "hcr/synthetic.hpp"

using namespace hcr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("hcr-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_text(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << s;
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("directory layout is read in lexicographic order") {
    TempDir tmp;
    write_text(tmp.path / "kha" / "b.pbm", "P1 2 2 1 0 0 1");
    write_text(tmp.path / "kha" / "a.pgm", "P2 2 1 255 0 255");
    write_text(tmp.path / "kha" / "notes.txt", "ignored");
    write_text(tmp.path / "ka" / "x.PBM", "P1 1 1 1");
    const Dataset d = load_dataset(tmp.path);
    CHECK(d.class_names == std::vector<std::string>{"ka", "kha"});
    REQUIRE(d.samples.size() == 3);
    CHECK(d.samples[0].source_id == "ka/x.PBM");
    CHECK(d.samples[0].label == 0);
    CHECK(d.samples[1].source_id == "kha/a.pgm");
    CHECK(d.samples[1].image == BinaryRaster::from_rows({"#."}));
    CHECK(d.samples[2].label == 1);
    CHECK(d.samples[2].image == BinaryRaster::from_rows({"#.", ".#"}));
  }

  TEST_CASE("loader errors") {
    TempDir tmp;
    CHECK_THROWS_WITH_AS(load_dataset(tmp.path), "no classes found", Error);
    fs::create_directories(tmp.path / "ga");
    CHECK_THROWS_WITH_AS(load_dataset(tmp.path), "class 'ga' has no samples", Error);
    CHECK_THROWS_AS(load_dataset(tmp.path / "missing"), Error);
  }

  TEST_CASE("save and load round-trip") {
    TempDir tmp;
    const Dataset d = generate_synthetic(3, 4, 21);
    save_dataset(d, tmp.path / "data");
    const Dataset back = load_dataset(tmp.path / "data");
    CHECK(back.class_names == d.class_names);
    REQUIRE(back.samples.size() == d.samples.size());
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
      CHECK(back.samples[i].label == d.samples[i].label);
      CHECK(back.samples[i].image == d.samples[i].image);
    }
    std::ostringstream csv;
    write_manifest_csv(csv, d);
    CHECK(csv.str().rfind("source_id,class_index,class_name\nsynthetic/00/0000,0,", 0) == 0);
  }

  TEST_CASE("per-class split has the requested shape") {
    const Dataset d = generate_synthetic(25, 40, 2);
    const DataSplit s = split(d, SplitSpec{30, 10, 4});
    CHECK(s.train.size() == 750);
    CHECK(s.test.size() == 250);
    std::vector<int> train_count(25), test_count(25);
    std::set<std::string> train_ids;
    for (const auto& x : s.train) {
      ++train_count[x.label];
      train_ids.insert(x.source_id);
    }
    for (const auto& x : s.test) {
      ++test_count[x.label];
      CHECK(train_ids.count(x.source_id) == 0);
    }
    CHECK(train_ids.size() == 750);
    for (int c = 0; c < 25; ++c) {
      CHECK(train_count[c] == 30);
      CHECK(test_count[c] == 10);
    }
  }

  TEST_CASE("split is seeded") {
    const Dataset d = generate_synthetic(2, 20, 2);
    const auto ids = [](const DataSplit& s) {
      std::vector<std::string> v;
      for (const auto& x : s.train) v.push_back(x.source_id);
      return v;
    };
    CHECK(ids(split(d, {10, 5, 1})) == ids(split(d, {10, 5, 1})));
    CHECK(ids(split(d, {10, 5, 1})) != ids(split(d, {10, 5, 2})));
    CHECK_THROWS_WITH_AS(split(d, {15, 6, 1}), doctest::Contains("class '00-"), Error);
    CHECK_THROWS_AS(split(d, {0, 5, 1}), Error);
  }

  TEST_CASE("generator shape and determinism") {
    const Dataset a = generate_synthetic(25, 3, 9);
    CHECK(a.class_count() == 25);
    CHECK(a.samples.size() == 75);
    const Dataset b = generate_synthetic(25, 3, 9);
    const Dataset c = generate_synthetic(25, 3, 10);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].image == b.samples[i].image);
      CHECK(a.samples[i].image.width() == kCanonicalSize);
      CHECK(a.samples[i].image.stroke_count() > 0);
      any_diff = any_diff || !(a.samples[i].image == c.samples[i].image);
    }
    CHECK(any_diff);
    CHECK(std::is_sorted(a.class_names.begin(), a.class_names.end()));
    CHECK_THROWS_AS(generate_synthetic(26, 1, 1), Error);
    CHECK_THROWS_AS(generate_synthetic(0, 1, 1), Error);
  }

  TEST_CASE("perturbation stays within its bounds") {
    const Perturbation p;
    for (const GlyphPrototype& proto : glyph_prototypes()) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const GlyphInstance inst = perturb(proto, seed, p);
        CHECK(std::abs(inst.rotation_deg) <= p.max_rotation_deg);
        CHECK(inst.thickness >= p.min_thickness);
        CHECK(inst.thickness <= p.max_thickness);
        REQUIRE(inst.jittered.size() == proto.strokes.size());
        for (std::size_t s = 0; s < proto.strokes.size(); ++s) {
          REQUIRE(inst.jittered[s].size() == proto.strokes[s].size());
          for (std::size_t v = 0; v < proto.strokes[s].size(); ++v) {
            const double dx = inst.jittered[s][v].x - proto.strokes[s][v].x;
            const double dy = inst.jittered[s][v].y - proto.strokes[s][v].y;
            CHECK(std::hypot(dx, dy) <= p.max_jitter);
          }
        }
      }
    }
    Perturbation bad;
    bad.max_thickness = 0;
    CHECK_THROWS_AS(perturb(glyph_prototypes()[0], 1, bad), Error);
  }

  TEST_CASE("render draws a square pen along each segment") {
    const std::vector<Polyline> strokes = {{{2, 5}, {8, 5}}};
    const BinaryRaster thin_pen = render_strokes(strokes, 1, 12);
    CHECK(thin_pen.stroke_count() == 7);
    CHECK(thin_pen.at(5, 2));
    CHECK(thin_pen.at(5, 8));
    const BinaryRaster thick = render_strokes(strokes, 3, 12);
    CHECK(thick.stroke_count() == 27);
  }
}
