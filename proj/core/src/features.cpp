#include "hcr/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "hcr/error.hpp"
#include "hcr/thinning.hpp"

namespace hcr {
namespace {

void require_canonical(const BinaryRaster& img) {
  if (img.width() != kCanonicalSize || img.height() != kCanonicalSize)
    throw Error("expected a " + std::to_string(kCanonicalSize) + "x" +
                std::to_string(kCanonicalSize) + " raster");
}

int frame_fraction(double fraction) {
  return static_cast<int>(std::lround(fraction * kCanonicalSize));
}

// Unit steps in walk priority order: E, SE, S, SW, W, NW, N, NE.
constexpr std::array<std::array<int, 2>, 8> kWalkOrder = {{
    {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1},
}};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

const char* to_string(Shirorekha s) noexcept {
  switch (s) {
    case Shirorekha::Full: return "full";
    case Shirorekha::Partial: return "partial";
    case Shirorekha::None: break;
  }
  return "none";
}

const char* to_string(Spine s) noexcept {
  switch (s) {
    case Spine::End: return "end";
    case Spine::Mid: return "mid";
    case Spine::None: break;
  }
  return "none";
}

std::vector<GridCell> grid_cells(int n) {
  if (n < 2 || n > 5) throw Error("unsupported grid");
  const auto edge = [n](int k) { return k * kCanonicalSize / n; };
  std::vector<GridCell> cells;
  cells.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cells.push_back({edge(i), edge(j), edge(i + 1) - edge(i),
                       edge(j + 1) - edge(j)});
  return cells;
}

std::vector<BinaryRaster> segment_grid(const BinaryRaster& img, int n) {
  const auto cells = grid_cells(n);
  require_canonical(img);
  std::vector<BinaryRaster> out;
  out.reserve(cells.size());
  for (const GridCell& cell : cells)
    out.push_back(img.sub(cell.row0, cell.col0, cell.rows, cell.cols));
  return out;
}

int freeman_code(int drow, int dcol) {
  // Indexed by (drow + 1) * 3 + (dcol + 1).
  static constexpr std::array<int, 9> kCodes = {3, 2, 1, 4, -1, 0, 5, 6, 7};
  if (std::abs(drow) > 1 || std::abs(dcol) > 1 || (drow == 0 && dcol == 0))
    throw Error("not a unit step");
  return kCodes[static_cast<std::size_t>((drow + 1) * 3 + dcol + 1)];
}

int direction_change(int from, int to) noexcept {
  const int d = std::abs(to - from);
  return std::min(d, 8 - d);
}

std::vector<ChainWalk> trace_chains(const BinaryRaster& seg) {
  const int w = seg.width();
  std::vector<std::uint8_t> visited(seg.pixels().size(), 0);
  const auto idx = [w](int r, int c) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(w) +
           static_cast<std::size_t>(c);
  };
  std::vector<ChainWalk> walks;
  for (int r0 = 0; r0 < seg.height(); ++r0) {
    for (int c0 = 0; c0 < w; ++c0) {
      if (!seg.at(r0, c0) || visited[idx(r0, c0)]) continue;
      ChainWalk walk;
      int r = r0, c = c0;
      visited[idx(r, c)] = 1;
      walk.pixels.emplace_back(r, c);
      for (;;) {
        bool moved = false;
        for (const auto& [dr, dc] : kWalkOrder) {
          const int nr = r + dr, nc = c + dc;
          if (!seg.get(nr, nc) || visited[idx(nr, nc)]) continue;
          walk.codes.push_back(freeman_code(dr, dc));
          r = nr;
          c = nc;
          visited[idx(r, c)] = 1;
          walk.pixels.emplace_back(r, c);
          moved = true;
          break;
        }
        if (!moved) break;
      }
      walks.push_back(std::move(walk));
    }
  }
  return walks;
}

int gc_of_segment(const BinaryRaster& seg) {
  int gc = 0;
  for (const ChainWalk& walk : trace_chains(seg))
    for (std::size_t i = 1; i < walk.codes.size(); ++i)
      gc += direction_change(walk.codes[i - 1], walk.codes[i]);
  return gc;
}

int count_intersections(const BinaryRaster& skeleton) {
  BinaryRaster branches(skeleton.width(), skeleton.height());
  bool any = false;
  for (int r = 0; r < skeleton.height(); ++r) {
    for (int c = 0; c < skeleton.width(); ++c) {
      if (skeleton.at(r, c) && zo_count(neighborhood_at(skeleton, r, c)) >= 3) {
        branches.set(r, c, 1);
        any = true;
      }
    }
  }
  return any ? count_components(branches) : 0;
}

Shirorekha detect_shirorekha(const BinaryRaster& canonical,
                             const ShirorekhaThresholds& t) {
  require_canonical(canonical);
  const int band = std::min(frame_fraction(t.band), kCanonicalSize);
  int longest = 0;
  for (int r = 0; r < band; ++r) {
    int run = 0;
    for (int c = 0; c < kCanonicalSize; ++c) {
      run = canonical.at(r, c) ? run + 1 : 0;
      longest = std::max(longest, run);
    }
  }
  const double ratio = static_cast<double>(longest) / kCanonicalSize;
  if (ratio >= t.full) return Shirorekha::Full;
  if (ratio >= t.partial) return Shirorekha::Partial;
  return Shirorekha::None;
}

Spine detect_spine(const BinaryRaster& canonical, const SpineThresholds& t) {
  require_canonical(canonical);
  int best_run = 0;
  int best_col = 0;
  for (int c = 0; c < kCanonicalSize; ++c) {
    int run = 0;
    int longest = 0;
    for (int r = 0; r < kCanonicalSize; ++r) {
      run = canonical.at(r, c) ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    if (longest > best_run) {
      best_run = longest;
      best_col = c;
    }
  }
  if (static_cast<double>(best_run) / kCanonicalSize < t.min_run)
    return Spine::None;
  return best_col >= frame_fraction(t.end_zone) ? Spine::End : Spine::Mid;
}

void FeatureConfig::validate() const {
  if (grid_n < 2 || grid_n > 5) throw Error("unsupported grid");
  if (!(norm_factor > 0.0)) throw Error("norm_factor must be > 0");
  if (!(intersection_divisor > 0.0))
    throw Error("intersection_divisor must be > 0");
  const auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in01(shirorekha.full) || !in01(shirorekha.partial) ||
      shirorekha.partial > shirorekha.full)
    throw Error("shirorekha thresholds must satisfy 0 <= partial <= full <= 1");
  if (!in01(shirorekha.band) || shirorekha.band == 0.0)
    throw Error("shirorekha band must be in (0,1]");
  if (!in01(spine.min_run) || !in01(spine.end_zone))
    throw Error("spine thresholds must be in [0,1]");
}

RawFeatures measure_features(const BinaryRaster& skeleton,
                             const BinaryRaster& canonical,
                             const FeatureConfig& cfg) {
  cfg.validate();
  RawFeatures raw;
  for (const BinaryRaster& seg : segment_grid(skeleton, cfg.grid_n))
    raw.gc.push_back(gc_of_segment(seg));
  raw.intersections = count_intersections(skeleton);
  raw.shirorekha = detect_shirorekha(canonical, cfg.shirorekha);
  raw.spine = detect_spine(canonical, cfg.spine);
  return raw;
}

FeatureVector normalize(const RawFeatures& raw, const FeatureConfig& cfg) {
  cfg.validate();
  if (raw.gc.size() != static_cast<std::size_t>(cfg.grid_n * cfg.grid_n))
    throw Error("raw features were measured on a different grid");
  FeatureVector fv;
  fv.gc.reserve(raw.gc.size());
  for (int g : raw.gc) fv.gc.push_back(clamp01(g / cfg.norm_factor));
  fv.intersections = clamp01(raw.intersections / cfg.intersection_divisor);
  fv.shirorekha = {0, 0, 0};
  fv.shirorekha[static_cast<std::size_t>(raw.shirorekha)] = 1;
  fv.spine = {0, 0, 0};
  fv.spine[static_cast<std::size_t>(raw.spine)] = 1;
  return fv;
}

FeatureVector extract_features(const BinaryRaster& skeleton,
                               const BinaryRaster& canonical,
                               const FeatureConfig& cfg) {
  return normalize(measure_features(skeleton, canonical, cfg), cfg);
}

std::vector<double> FeatureVector::flatten() const {
  std::vector<double> out(gc);
  out.push_back(intersections);
  out.insert(out.end(), shirorekha.begin(), shirorekha.end());
  out.insert(out.end(), spine.begin(), spine.end());
  return out;
}

std::string to_csv_line(const std::vector<double>& values) {
  std::string line;
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    const auto res = std::to_chars(buf, buf + sizeof buf, values[i]);
    line.append(buf, res.ptr);
  }
  return line;
}

}  // namespace hcr
