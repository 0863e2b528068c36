#include "hcr/thinning.hpp"

#include <bit>
#include <vector>

#include "hcr/error.hpp"

namespace hcr {

int zo_count(const Neighborhood& n) noexcept {
  const unsigned ring = n.ring_bits();
  // Bit i is P(i+2); rotating by one pairs each position with its successor
  // in the ring (P9 wraps to P2).
  const unsigned next = ((ring >> 1) | (ring << 7)) & 0xFFu;
  return std::popcount(~ring & next & 0xFFu);
}

int nz_count(const Neighborhood& n) noexcept {
  return std::popcount(static_cast<unsigned>(n.ring_bits()));
}

bool deletable(const Neighborhood& center, const Neighborhood& north,
               const Neighborhood& west) {
  if (!center.center()) throw Error("not a stroke pixel");
  const int nz = nz_count(center);
  if (nz < 2 || nz > 6) return false;
  if (zo_count(center) != 1) return false;
  if (center.p(2) && center.p(4) && center.p(8) && zo_count(north) == 1)
    return false;
  if (center.p(2) && center.p(4) && center.p(6) && zo_count(west) == 1)
    return false;
  return true;
}

bool deletable_at(const BinaryRaster& img, int row, int col) {
  const Neighborhood center = neighborhood_at(img, row, col);
  if (!center.center()) throw Error("not a stroke pixel");
  // Neighbourhoods of off-raster positions are all background.
  const auto around = [&](int r, int c) {
    return img.contains(r, c) ? neighborhood_at(img, r, c) : Neighborhood{};
  };
  return deletable(center, around(row - 1, col), around(row, col - 1));
}

std::size_t thin_pass(BinaryRaster& img) {
  std::size_t removed = 0;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (img.at(r, c) && deletable_at(img, r, c)) {
        img.set(r, c, 0);
        ++removed;
      }
    }
  }
  return removed;
}

BinaryRaster thin(const BinaryRaster& img, const ThinObserver& observer) {
  BinaryRaster out = img;
  for (int pass = 1;; ++pass) {
    const std::size_t removed = thin_pass(out);
    if (observer) observer(pass, out, removed);
    if (removed == 0) return out;
  }
}

namespace {

constexpr MaskCell O = MaskCell::Background;
constexpr MaskCell I = MaskCell::Stroke;
constexpr MaskCell X = MaskCell::Any;

// Rows are NW N NE / W C E / SW S SE.
constexpr std::array<PruneMask, 7> kMasks = {{
    {{X, I, X,
      I, I, I,
      X, I, X}, PruneAction::Keep, "keep-plus"},
    {{X, I, X,
      I, I, X,
      X, X, O}, PruneAction::Remove, "corner-north-west"},
    {{X, I, X,
      X, I, I,
      O, X, X}, PruneAction::Remove, "corner-north-east"},
    {{X, X, O,
      I, I, X,
      X, I, X}, PruneAction::Remove, "corner-south-west"},
    {{O, X, X,
      X, I, I,
      X, I, X}, PruneAction::Remove, "corner-south-east"},
    {{X, I, X,
      I, I, I,
      X, O, X}, PruneAction::Remove, "tee-north"},
    {{X, O, X,
      I, I, I,
      X, I, X}, PruneAction::Remove, "tee-south"},
}};

}  // namespace

bool PruneMask::matches(const Neighborhood& n) const noexcept {
  for (int label = 1; label <= 9; ++label) {
    const auto [dr, dc] = Neighborhood::kOffsets[label - 1];
    const MaskCell cell = cells[static_cast<std::size_t>((dr + 1) * 3 + dc + 1)];
    if (cell == MaskCell::Any) continue;
    if (static_cast<int>(cell) != n.p(label)) return false;
  }
  return true;
}

std::span<const PruneMask> prune_masks() noexcept { return kMasks; }

std::optional<std::size_t> first_matching_mask(const Neighborhood& n) noexcept {
  for (std::size_t i = 0; i < kMasks.size(); ++i)
    if (kMasks[i].matches(n)) return i;
  return std::nullopt;
}

PruneAction prune_decision(const Neighborhood& n) noexcept {
  const auto hit = first_matching_mask(n);
  return hit ? kMasks[*hit].action : PruneAction::Keep;
}

BinaryRaster prune(const BinaryRaster& img) {
  BinaryRaster out = img;
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      if (!out.at(r, c)) continue;
      if (prune_decision(neighborhood_at(out, r, c)) == PruneAction::Remove)
        out.set(r, c, 0);
    }
  }
  return out;
}

}  // namespace hcr
