#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hcr/dataset.hpp"
#include "hcr/raster.hpp"

namespace hcr {

/// Canvas coordinates: x grows right (columns), y grows down (rows).
struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Polyline = std::vector<Point>;

/// Stroke program of one synthetic class on a kCanonicalSize canvas.
struct GlyphPrototype {
  std::string name;
  std::vector<Polyline> strokes;
};

inline constexpr std::size_t kMaxSyntheticClasses = 25;

/// The fixed class inventory, kMaxSyntheticClasses entries. Classes differ in
/// headline extent (full / partial / none), vertical spine position
/// (end / mid / none) and body shape. Names start with the zero-padded class
/// index so lexicographic order (as used by load_dataset) matches labels.
std::span<const GlyphPrototype> glyph_prototypes();

struct Perturbation {
  double max_jitter = 5.0;        // per-vertex displacement radius, px
  double max_rotation_deg = 5.0;  // about the canvas center
  int min_thickness = 1;
  int max_thickness = 3;
};

struct GlyphInstance {
  std::vector<Polyline> jittered;  // after jitter, before rotation
  std::vector<Polyline> placed;    // after rotation, what gets rendered
  double rotation_deg = 0.0;
  int thickness = 1;
};

/// Deterministic in (prototype, seed, p).
GlyphInstance perturb(const GlyphPrototype& proto, std::uint64_t seed,
                      const Perturbation& p = {});

/// Draws polylines with a square pen of side `thickness`; pixels falling
/// outside the canvas are dropped.
BinaryRaster render_strokes(std::span<const Polyline> strokes, int thickness,
                            int size = kCanonicalSize);

/// `per_class` perturbed renderings of each of the first `n_classes`
/// prototypes, ordered by class then index. Throws if n_classes exceeds
/// kMaxSyntheticClasses or either count is zero.
Dataset generate_synthetic(std::size_t n_classes, std::size_t per_class,
                           std::uint64_t seed, const Perturbation& p = {});

}  // namespace hcr
