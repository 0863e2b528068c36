#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "hcr/raster.hpp"

namespace hcr {

/// Number of 0 -> 1 transitions around the ring P2,P3,...,P9,P2. Range 0..4.
int zo_count(const Neighborhood& n) noexcept;

/// Number of stroke pixels among P2..P9.
int nz_count(const Neighborhood& n) noexcept;

/// The four deletion conditions for the center pixel of `center`:
///
///   2 <= Nz(P1) <= 6,  ZO(P1) == 1,
///   P2*P4*P8 == 0 or ZO(P2) != 1,
///   P2*P4*P6 == 0 or ZO(P4) != 1.
///
/// `north` and `west` are the neighbourhoods centred on the P2 and P4
/// pixels. Throws "not a stroke pixel" if P1 is background.
bool deletable(const Neighborhood& center, const Neighborhood& north,
               const Neighborhood& west);

/// deletable() evaluated on a raster position, border pixels read as 0.
bool deletable_at(const BinaryRaster& img, int row, int col);

/// Called after every thinning pass with the 1-based pass number, the raster
/// state and how many pixels that pass removed.
using ThinObserver =
    std::function<void(int pass, const BinaryRaster& state, std::size_t removed)>;

/// One raster-order sweep. Each stroke pixel is tested against the current
/// state and removed immediately when deletable, so every deletion sees the
/// effect of the ones before it. Returns the number of removed pixels.
std::size_t thin_pass(BinaryRaster& img);

/// Repeats thin_pass until a pass removes nothing.
BinaryRaster thin(const BinaryRaster& img, const ThinObserver& observer = {});

enum class MaskCell : signed char { Background = 0, Stroke = 1, Any = -1 };
enum class PruneAction { Keep, Remove };

struct PruneMask {
  /// 3x3, row-major, laid out like the neighbourhood diagram.
  std::array<MaskCell, 9> cells;
  PruneAction action;
  const char* name;

  bool matches(const Neighborhood& n) const noexcept;
};

/// Keep mask first, then the six Remove masks; prune() tests them in this
/// order and the first match decides.
std::span<const PruneMask> prune_masks() noexcept;

/// Index into prune_masks() of the first mask matching `n`, if any.
std::optional<std::size_t> first_matching_mask(const Neighborhood& n) noexcept;

/// Action for a stroke center: the first matching mask's action, Keep when
/// nothing matches.
PruneAction prune_decision(const Neighborhood& n) noexcept;

/// Single raster-order sweep removing redundant skeleton pixels. Each
/// decision sees the removals made earlier in the sweep; a staircase whose
/// two inner pixels both match a corner mask loses only the first one.
BinaryRaster prune(const BinaryRaster& img);

}  // namespace hcr
