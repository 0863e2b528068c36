#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace hcr {

/// Side length of the square frame every character is normalized into.
inline constexpr int kCanonicalSize = 140;

inline constexpr int kDefaultBinarizeThreshold = 128;

/// 8-bit grayscale image, row-major, 0 = black.
struct GrayRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

/// Rectangular bitmap: 1 = stroke (dark), 0 = background.
class BinaryRaster {
 public:
  /// Throws hcr::Error if either dimension is < 1.
  BinaryRaster(int width, int height, std::uint8_t fill = 0);

  /// Builds a raster from text rows, e.g. {"#..", ".#."}. '#' and '1' are
  /// stroke, anything else is background. All rows must have equal length.
  static BinaryRaster from_rows(std::initializer_list<std::string_view> rows);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool contains(int row, int col) const noexcept {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  /// Unchecked access.
  std::uint8_t at(int row, int col) const noexcept {
    return pixels_[index(row, col)];
  }
  /// Off-raster coordinates read as background.
  std::uint8_t get(int row, int col) const noexcept {
    return contains(row, col) ? at(row, col) : 0;
  }
  void set(int row, int col, std::uint8_t value) noexcept {
    pixels_[index(row, col)] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::size_t stroke_count() const noexcept;
  bool blank() const noexcept { return stroke_count() == 0; }

  /// Copies the sub-rectangle [row0, row0+rows) x [col0, col0+cols).
  BinaryRaster sub(int row0, int col0, int rows, int cols) const;

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;

 private:
  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// 3x3 window around a pixel, labelled
///
///     P3 P2 P9
///     P4 P1 P8
///     P5 P6 P7
///
/// P2 is north and the labels run counter-clockwise. Transition counting
/// walks the ring P2,P3,...,P9,P2.
class Neighborhood {
 public:
  Neighborhood() = default;
  /// `values[i]` is P(i+1).
  explicit Neighborhood(const std::array<std::uint8_t, 9>& values);
  /// Builds from a 3x3 row-major grid as printed above.
  static Neighborhood from_grid(const std::array<std::uint8_t, 9>& grid);

  /// Label in 1..9.
  std::uint8_t p(int label) const { return p_[label - 1]; }
  std::uint8_t center() const noexcept { return p_[0]; }

  /// P2..P9 packed so that bit i holds P(i+2).
  std::uint8_t ring_bits() const noexcept;

  /// Row/col offset of label 1..9 relative to the center.
  static constexpr std::array<std::array<int, 2>, 9> kOffsets = {{
      {0, 0},    // P1
      {-1, 0},   // P2  N
      {-1, -1},  // P3  NW
      {0, -1},   // P4  W
      {1, -1},   // P5  SW
      {1, 0},    // P6  S
      {1, 1},    // P7  SE
      {0, 1},    // P8  E
      {-1, 1},   // P9  NE
  }};

  friend bool operator==(const Neighborhood&, const Neighborhood&) = default;

 private:
  std::array<std::uint8_t, 9> p_{};
};

/// Pixel is 1 iff intensity < threshold. Throws "empty image".
BinaryRaster binarize(const GrayRaster& gray,
                      int threshold = kDefaultBinarizeThreshold);

/// Minimal bounding box of the stroke pixels. Throws "blank image".
BinaryRaster crop_to_content(const BinaryRaster& img);

/// Nearest-neighbour resample to kCanonicalSize x kCanonicalSize.
BinaryRaster scale_to_canonical(const BinaryRaster& img);

/// Throws "index out of bounds" for an off-raster center; off-raster
/// neighbours read as 0.
Neighborhood neighborhood_at(const BinaryRaster& img, int row, int col);

/// Number of 8-connected stroke components.
int count_components(const BinaryRaster& img);

}  // namespace hcr
