#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hcr/raster.hpp"

namespace hcr {

enum class Shirorekha { Full, Partial, None };
enum class Spine { End, Mid, None };

const char* to_string(Shirorekha s) noexcept;
const char* to_string(Spine s) noexcept;

/// Pixel rectangle of one grid segment inside the canonical frame.
struct GridCell {
  int row0;
  int col0;
  int rows;
  int cols;
};

/// Cell k of an n-way split spans [floor(k*140/n), floor((k+1)*140/n)).
/// Cells are row-major. Throws "unsupported grid" unless n is 2..5.
std::vector<GridCell> grid_cells(int n);

/// Throws if `img` is not kCanonicalSize square.
std::vector<BinaryRaster> segment_grid(const BinaryRaster& img, int n);

/// Freeman code of a unit step: 0 = E, then counter-clockwise in 45 degree
/// steps (2 = N, 4 = W, 6 = S).
int freeman_code(int drow, int dcol);

/// Angular distance between two codes in 45 degree units (0..4).
int direction_change(int from, int to) noexcept;

struct ChainWalk {
  std::vector<std::pair<int, int>> pixels;  // (row, col), in visiting order
  std::vector<int> codes;                   // pixels.size() - 1 entries
};

/// Decomposes the stroke pixels into walks. A walk starts at the first
/// unvisited stroke pixel in row-major order and repeatedly steps to the
/// first unvisited 8-neighbour in the order E, SE, S, SW, W, NW, N, NE until
/// it dead-ends. Every stroke pixel lands in exactly one walk.
std::vector<ChainWalk> trace_chains(const BinaryRaster& seg);

/// Accumulated direction change: sum of direction_change() over consecutive
/// codes inside each walk. Nothing accumulates across walk boundaries.
int gc_of_segment(const BinaryRaster& seg);

/// Stroke pixels with zo_count >= 3 are branch pixels; each 8-connected
/// cluster of branch pixels is one intersection.
int count_intersections(const BinaryRaster& skeleton);

struct ShirorekhaThresholds {
  double full = 0.80;
  double partial = 0.35;
  double band = 0.20;  // fraction of rows, from the top, that are searched
};

struct SpineThresholds {
  double min_run = 0.60;
  double end_zone = 0.75;  // spine columns at or right of this fraction are End
};

/// Longest single-row horizontal run inside the top band, relative to the
/// frame width.
Shirorekha detect_shirorekha(const BinaryRaster& canonical,
                             const ShirorekhaThresholds& t = {});

/// Column holding the longest vertical run (leftmost on ties).
Spine detect_spine(const BinaryRaster& canonical, const SpineThresholds& t = {});

struct FeatureConfig {
  int grid_n = 4;
  double norm_factor = 40.0;
  double intersection_divisor = 10.0;
  ShirorekhaThresholds shirorekha;
  SpineThresholds spine;

  /// Throws hcr::Error naming the first out-of-range field.
  void validate() const;
};

/// Unnormalized measurements; normalize() turns them into a FeatureVector,
/// so a sweep over normalization factors measures each image once.
struct RawFeatures {
  std::vector<int> gc;
  int intersections = 0;
  Shirorekha shirorekha = Shirorekha::None;
  Spine spine = Spine::None;
};

struct FeatureVector {
  std::vector<double> gc;
  double intersections = 0.0;
  std::array<double, 3> shirorekha{0, 0, 1};  // Full, Partial, None
  std::array<double, 3> spine{0, 0, 1};       // End, Mid, None

  /// gc (row-major), intersections, shirorekha F/P/N, spine E/M/N.
  std::vector<double> flatten() const;
  std::size_t size() const noexcept { return gc.size() + 7; }

  static std::size_t length_for_grid(int n) {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 7;
  }
};

RawFeatures measure_features(const BinaryRaster& skeleton,
                             const BinaryRaster& canonical,
                             const FeatureConfig& cfg);

FeatureVector normalize(const RawFeatures& raw, const FeatureConfig& cfg);

/// `skeleton` is the pruned skeleton, `canonical` the scaled raster it was
/// thinned from (shirorekha and spine are read from the latter).
FeatureVector extract_features(const BinaryRaster& skeleton,
                               const BinaryRaster& canonical,
                               const FeatureConfig& cfg);

/// One comma-separated line, shortest round-trip formatting.
std::string to_csv_line(const std::vector<double>& values);

}  // namespace hcr
