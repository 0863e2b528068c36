#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

Run hcr(const std::string& args) {
  const std::string cmd = std::string("\"") + HCR_CLI_PATH + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// One shared workspace: generating and training once keeps the suite quick.
struct Workspace {
  fs::path root;
  Workspace() {
    std::random_device rd;
    root = fs::temp_directory_path() / ("hcr-cli-" + std::to_string(rd()));
    fs::create_directories(root);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  std::string q(const std::string& rel) const { return "\"" + (root / rel).string() + "\""; }
};

Workspace& ws() {
  static Workspace w;
  return w;
}

const std::string kSplit = " --train-per-class 6 --test-per-class 3 --seed 5";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with status 2") {
    CHECK(hcr("").status == 2);
    CHECK(hcr("frobnicate").status == 2);
    CHECK(hcr("train --out x").status == 2);  // no data source
    CHECK(hcr("train --synthetic --data d --out x").status == 2);
  }

  TEST_CASE("gen writes a loadable dataset and manifest") {
    const Run r = hcr("gen --classes 3 --per-class 9 --seed 5 --out " + ws().q("data"));
    INFO(r.output);
    REQUIRE(r.status == 0);
    CHECK(fs::exists(ws().root / "data" / "manifest.csv"));
    int dirs = 0;
    for (const auto& e : fs::directory_iterator(ws().root / "data")) dirs += e.is_directory();
    CHECK(dirs == 3);
  }

  TEST_CASE("train, eval and predict") {
    const Run t = hcr("train --data " + ws().q("data") + kSplit + " --max-iters 40 --out " +
                      ws().q("m.txt") + " --report " + ws().q("report.txt"));
    INFO(t.output);
    REQUIRE(t.status == 0);
    CHECK(t.output.find("test_accuracy ") != std::string::npos);
    CHECK(slurp(ws().root / "report.txt") == t.output);
    CHECK(slurp(ws().root / "m.txt").rfind("MLPCG 1\n23 46 3\n", 0) == 0);
    const std::string names = slurp(ws().root / "m.txt.classes");
    CHECK(std::count(names.begin(), names.end(), '\n') == 3);

    const Run e = hcr("eval --data " + ws().q("data") + kSplit + " --model " + ws().q("m.txt") +
                      " --confusion " + ws().q("conf.csv"));
    INFO(e.output);
    REQUIRE(e.status == 0);
    CHECK(e.output.rfind("accuracy ", 0) == 0);
    CHECK(e.output.find("total 9") != std::string::npos);
    CHECK(slurp(ws().root / "conf.csv").rfind("true\\predicted,0,1,2\n", 0) == 0);

    const Run bad = hcr("eval --data " + ws().q("data") + kSplit + " --grid 3 --model " +
                        ws().q("m.txt"));
    CHECK(bad.status == 1);
    CHECK(bad.output.find("dimension mismatch") != std::string::npos);

    fs::path image;
    for (const auto& e : fs::recursive_directory_iterator(ws().root / "data"))
      if (e.path().extension() == ".pbm") {
        image = e.path();
        break;
      }
    const Run p = hcr("predict --model " + ws().q("m.txt") + " \"" + image.string() + "\"");
    INFO(p.output);
    REQUIRE(p.status == 0);
    std::istringstream line(p.output);
    std::size_t idx = 99;
    std::string name;
    double score = -1;
    line >> idx >> name >> score;
    CHECK(idx < 3);
    CHECK(names.find(name) != std::string::npos);
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
  }

  TEST_CASE("inspect, thin and features") {
    fs::path image;
    for (const auto& e : fs::recursive_directory_iterator(ws().root / "data"))
      if (e.path().extension() == ".pbm") {
        image = e.path();
        break;
      }
    REQUIRE_FALSE(image.empty());
    const std::string img = " \"" + image.string() + "\"";

    const Run i = hcr("inspect" + img + " --out-dir " + ws().q("inspect"));
    INFO(i.output);
    REQUIRE(i.status == 0);
    for (const char* f : {"1-binarized.pbm", "2-cropped.pbm", "3-scaled.pbm", "4-thinned.pbm",
                          "5-pruned.pbm", "features.txt"})
      CHECK(fs::exists(ws().root / "inspect" / f));

    const Run t = hcr("thin" + img + " --each-pass --out-dir " + ws().q("thin"));
    REQUIRE(t.status == 0);
    CHECK(fs::exists(ws().root / "thin" / "pass-001.pbm"));
    CHECK(fs::exists(ws().root / "thin" / "pruned.pbm"));
    CHECK(slurp(ws().root / "thin" / "pruned.pbm") ==
          slurp(ws().root / "inspect" / "5-pruned.pbm"));

    const Run f = hcr("features --grid 2" + img + img);
    REQUIRE(f.status == 0);
    std::istringstream lines(f.output);
    std::string l;
    int count = 0;
    while (std::getline(lines, l)) {
      ++count;
      CHECK(std::count(l.begin(), l.end(), ',') == 10);
    }
    CHECK(count == 2);

    CHECK(hcr("predict --model " + ws().q("missing.txt") + img).status == 1);
  }
}
