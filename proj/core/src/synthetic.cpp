#include "hcr/synthetic.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hcr/error.hpp"
#include "random.hpp"

namespace hcr {
namespace {

// Body shapes in unit coordinates (u right, v down). Each class gets its own
// body; headline and spine come from the class index.
using UnitStroke = std::vector<Point>;
struct Body {
  const char* name;
  std::vector<UnitStroke> strokes;
};

const std::vector<Body>& bodies() {
  static const std::vector<Body> kBodies = {
      {"loop", {{{0.5, 0}, {0.85, 0.15}, {1, 0.5}, {0.85, 0.85}, {0.5, 1},
                 {0.15, 0.85}, {0, 0.5}, {0.15, 0.15}, {0.5, 0}}}},
      {"eight", {{{0.5, 0}, {0.9, 0.25}, {0.5, 0.5}, {0.1, 0.25}, {0.5, 0}},
                 {{0.5, 0.5}, {0.9, 0.75}, {0.5, 1}, {0.1, 0.75}, {0.5, 0.5}}}},
      {"zigzag", {{{0, 0}, {1, 0.25}, {0, 0.5}, {1, 0.75}, {0, 1}}}},
      {"ess", {{{1, 0.05}, {0.3, 0}, {0, 0.25}, {0.5, 0.5}, {1, 0.75},
                {0.7, 1}, {0, 0.95}}}},
      {"cross", {{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}}},
      {"triangle", {{{0.5, 0}, {1, 1}, {0, 1}, {0.5, 0}}}},
      {"zed", {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}},
      {"vee", {{{0, 0}, {0.5, 1}, {1, 0}}, {{0.25, 0.5}, {0.75, 0.5}}}},
      {"spiral", {{{0.5, 0.5}, {0.7, 0.4}, {0.6, 0.2}, {0.3, 0.25}, {0.2, 0.6},
                   {0.5, 0.85}, {0.9, 0.7}, {1, 0.3}, {0.8, 0}}}},
      {"hook", {{{0.2, 0}, {0.8, 0}, {0.8, 0.7}, {0.5, 1}, {0.1, 0.8}}}},
      {"en", {{{0, 1}, {0, 0}, {1, 1}, {1, 0}}}},
      {"double-u", {{{0, 0}, {0.25, 1}, {0.5, 0.4}, {0.75, 1}, {1, 0}}}},
      {"angle-loop", {{{1, 0}, {0, 0.5}, {1, 1}},
                      {{0.7, 0.35}, {0.85, 0.5}, {0.7, 0.65}, {0.55, 0.5},
                       {0.7, 0.35}}}},
      {"epsilon", {{{1, 0.1}, {0.3, 0}, {0.1, 0.25}, {0.5, 0.5}, {0.1, 0.75},
                    {0.3, 1}, {1, 0.9}}}},
      {"plus-tail", {{{0.5, 0}, {0.5, 0.7}, {1, 1}}, {{0.1, 0.35}, {0.9, 0.35}}}},
      {"arch", {{{0, 0}, {0, 1}}, {{0, 0.5}, {0.5, 0.3}, {1, 0.5}, {1, 1}}}},
      {"psi", {{{0, 0}, {0.2, 0.5}, {0.5, 0.6}, {0.8, 0.5}, {1, 0}},
               {{0.5, 0}, {0.5, 1}}}},
      {"diamond", {{{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}, {0.5, 0}}}},
      {"em", {{{0, 1}, {0.1, 0}, {0.5, 0.6}, {0.9, 0}, {1, 1}}}},
      {"curl", {{{0.1, 0.5}, {0.9, 0.5}, {0.7, 0.15}, {0.3, 0.1}, {0.05, 0.45},
                 {0.2, 0.85}, {0.6, 1}, {1, 0.85}}}},
      {"waves", {{{0, 0.2}, {0.25, 0}, {0.5, 0.2}, {0.75, 0}, {1, 0.2}},
                 {{0, 0.8}, {0.25, 0.6}, {0.5, 0.8}, {0.75, 0.6}, {1, 0.8}}}},
      {"ell-slash", {{{0, 0}, {0, 1}, {1, 1}}, {{0, 0.3}, {1, 0}}}},
      {"wye", {{{0, 0}, {0.5, 0.5}, {1, 0}}, {{0.5, 0.5}, {0.5, 1}}}},
      {"kay", {{{0, 0}, {0, 1}}, {{1, 0}, {0, 0.5}, {1, 1}}}},
      {"rho", {{{0.5, 0}, {0.9, 0.2}, {0.5, 0.45}, {0.1, 0.2}, {0.5, 0}},
               {{0.5, 0.45}, {0.3, 1}}}},
  };
  return kBodies;
}

enum class Headline { Full, Partial, None };
enum class SpinePos { End, Mid, None };

constexpr double kBarY = 20.0;
constexpr double kBodyTop = 38.0;
constexpr double kBodyBottom = 122.0;
constexpr double kSpineBottom = 124.0;

GlyphPrototype assemble(std::size_t index) {
  const Body& body = bodies()[index];
  const auto headline = static_cast<Headline>(index % 3);
  const auto spine = static_cast<SpinePos>((index / 3) % 3);

  double x0 = 20.0, x1 = 120.0;
  if (spine == SpinePos::End) x1 = 100.0;

  GlyphPrototype proto;
  char prefix[8];
  std::snprintf(prefix, sizeof prefix, "%02zu-", index);
  proto.name = prefix + std::string(body.name) + "-" +
               (headline == Headline::Full      ? "fullbar"
                : headline == Headline::Partial ? "halfbar"
                                                : "nobar") +
               "-" +
               (spine == SpinePos::End   ? "endspine"
                : spine == SpinePos::Mid ? "midspine"
                                         : "nospine");
  for (const UnitStroke& s : body.strokes) {
    Polyline line;
    for (const Point& u : s)
      line.push_back({x0 + u.x * (x1 - x0), kBodyTop + u.y * (kBodyBottom - kBodyTop)});
    proto.strokes.push_back(std::move(line));
  }
  if (headline == Headline::Full) proto.strokes.push_back({{15, kBarY}, {125, kBarY}});
  if (headline == Headline::Partial) proto.strokes.push_back({{40, kBarY}, {95, kBarY}});
  const double spine_top = headline == Headline::None ? kBodyTop : kBarY;
  if (spine == SpinePos::End)
    proto.strokes.push_back({{115, spine_top}, {115, kSpineBottom}});
  if (spine == SpinePos::Mid)
    proto.strokes.push_back({{70, spine_top}, {70, kSpineBottom}});
  return proto;
}

void stamp(BinaryRaster& img, int row, int col, int thickness) {
  const int lo = -(thickness - 1) / 2;
  for (int dr = lo; dr < lo + thickness; ++dr)
    for (int dc = lo; dc < lo + thickness; ++dc)
      if (img.contains(row + dr, col + dc)) img.set(row + dr, col + dc, 1);
}

void draw_segment(BinaryRaster& img, Point a, Point b, int thickness) {
  int c0 = static_cast<int>(std::lround(a.x)), r0 = static_cast<int>(std::lround(a.y));
  const int c1 = static_cast<int>(std::lround(b.x)), r1 = static_cast<int>(std::lround(b.y));
  const int dc = std::abs(c1 - c0), sc = c0 < c1 ? 1 : -1;
  const int dr = -std::abs(r1 - r0), sr = r0 < r1 ? 1 : -1;
  int err = dc + dr;
  for (;;) {
    stamp(img, r0, c0, thickness);
    if (c0 == c1 && r0 == r1) break;
    const int e2 = 2 * err;
    if (e2 >= dr) {
      err += dr;
      c0 += sc;
    }
    if (e2 <= dc) {
      err += dc;
      r0 += sr;
    }
  }
}

}  // namespace

std::span<const GlyphPrototype> glyph_prototypes() {
  static const std::vector<GlyphPrototype> kPrototypes = [] {
    std::vector<GlyphPrototype> out;
    for (std::size_t i = 0; i < kMaxSyntheticClasses; ++i) out.push_back(assemble(i));
    return out;
  }();
  return kPrototypes;
}

GlyphInstance perturb(const GlyphPrototype& proto, std::uint64_t seed,
                      const Perturbation& p) {
  if (p.max_jitter < 0 || p.max_rotation_deg < 0 || p.min_thickness < 1 ||
      p.max_thickness < p.min_thickness)
    throw Error("invalid perturbation bounds");
  detail::Rng rng(seed);
  GlyphInstance inst;
  inst.rotation_deg = rng.uniform(-p.max_rotation_deg, p.max_rotation_deg);
  inst.thickness = p.min_thickness +
                   static_cast<int>(rng.below(
                       static_cast<std::size_t>(p.max_thickness - p.min_thickness + 1)));
  for (const Polyline& stroke : proto.strokes) {
    Polyline moved;
    for (const Point& v : stroke) {
      // Rejection sampling keeps the displacement inside the jitter disk.
      double dx = 0.0, dy = 0.0;
      do {
        dx = rng.uniform(-p.max_jitter, p.max_jitter);
        dy = rng.uniform(-p.max_jitter, p.max_jitter);
      } while (dx * dx + dy * dy > p.max_jitter * p.max_jitter);
      moved.push_back({v.x + dx, v.y + dy});
    }
    inst.jittered.push_back(std::move(moved));
  }
  const double theta = inst.rotation_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(theta), sn = std::sin(theta);
  const double center = kCanonicalSize / 2.0;
  for (const Polyline& stroke : inst.jittered) {
    Polyline rotated;
    for (const Point& v : stroke) {
      const double x = v.x - center, y = v.y - center;
      rotated.push_back({center + cs * x - sn * y, center + sn * x + cs * y});
    }
    inst.placed.push_back(std::move(rotated));
  }
  return inst;
}

BinaryRaster render_strokes(std::span<const Polyline> strokes, int thickness,
                            int size) {
  if (thickness < 1) throw Error("stroke thickness must be >= 1");
  BinaryRaster img(size, size);
  for (const Polyline& s : strokes) {
    if (s.size() == 1) draw_segment(img, s[0], s[0], thickness);
    for (std::size_t i = 1; i < s.size(); ++i)
      draw_segment(img, s[i - 1], s[i], thickness);
  }
  return img;
}

Dataset generate_synthetic(std::size_t n_classes, std::size_t per_class,
                           std::uint64_t seed, const Perturbation& p) {
  if (n_classes > kMaxSyntheticClasses)
    throw Error("at most " + std::to_string(kMaxSyntheticClasses) +
                " synthetic classes are available");
  if (n_classes == 0 || per_class == 0)
    throw Error("synthetic class and sample counts must be >= 1");
  const auto protos = glyph_prototypes();
  Dataset data;
  for (std::size_t c = 0; c < n_classes; ++c) {
    data.class_names.push_back(protos[c].name);
    for (std::size_t i = 0; i < per_class; ++i) {
      const GlyphInstance inst =
          perturb(protos[c], detail::mix_seed(detail::mix_seed(seed, c), i), p);
      char id[64];
      std::snprintf(id, sizeof id, "synthetic/%02zu/%04zu", c, i);
      data.samples.push_back({render_strokes(inst.placed, inst.thickness), c, id});
    }
  }
  return data;
}

}  // namespace hcr
