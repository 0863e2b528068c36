#include "hcr/raster.hpp"

#include <algorithm>
#include <vector>

#include "hcr/error.hpp"

namespace hcr {

BinaryRaster::BinaryRaster(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error("raster dimensions must be >= 1");
  pixels_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

BinaryRaster BinaryRaster::from_rows(
    std::initializer_list<std::string_view> rows) {
  if (rows.size() == 0) throw Error("raster dimensions must be >= 1");
  const int w = static_cast<int>(rows.begin()->size());
  BinaryRaster out(w, static_cast<int>(rows.size()));
  int r = 0;
  for (std::string_view row : rows) {
    if (static_cast<int>(row.size()) != w) throw Error("ragged raster rows");
    for (int c = 0; c < w; ++c) out.set(r, c, row[c] == '#' || row[c] == '1');
    ++r;
  }
  return out;
}

std::size_t BinaryRaster::stroke_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

BinaryRaster BinaryRaster::sub(int row0, int col0, int rows, int cols) const {
  if (row0 < 0 || col0 < 0 || row0 + rows > height_ || col0 + cols > width_)
    throw Error("index out of bounds");
  BinaryRaster out(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.set(r, c, at(row0 + r, col0 + c));
  return out;
}

Neighborhood::Neighborhood(const std::array<std::uint8_t, 9>& values) {
  for (std::size_t i = 0; i < 9; ++i) p_[i] = values[i] ? 1 : 0;
}

Neighborhood Neighborhood::from_grid(const std::array<std::uint8_t, 9>& grid) {
  std::array<std::uint8_t, 9> v{};
  for (std::size_t label = 0; label < 9; ++label) {
    const auto [dr, dc] = kOffsets[label];
    v[label] = grid[static_cast<std::size_t>((dr + 1) * 3 + (dc + 1))];
  }
  return Neighborhood(v);
}

std::uint8_t Neighborhood::ring_bits() const noexcept {
  std::uint8_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint8_t>(p_[i + 1] << i);
  return bits;
}

BinaryRaster binarize(const GrayRaster& gray, int threshold) {
  if (gray.width < 1 || gray.height < 1 || gray.pixels.empty())
    throw Error("empty image");
  if (gray.pixels.size() != static_cast<std::size_t>(gray.width) * gray.height)
    throw Error("gray raster size mismatch");
  BinaryRaster out(gray.width, gray.height);
  for (int r = 0; r < gray.height; ++r)
    for (int c = 0; c < gray.width; ++c)
      out.set(r, c, gray.at(r, c) < threshold);
  return out;
}

BinaryRaster crop_to_content(const BinaryRaster& img) {
  int top = img.height(), bottom = -1, left = img.width(), right = -1;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      if (!img.at(r, c)) continue;
      top = std::min(top, r);
      bottom = std::max(bottom, r);
      left = std::min(left, c);
      right = std::max(right, c);
    }
  }
  if (bottom < 0) throw Error("blank image");
  return img.sub(top, left, bottom - top + 1, right - left + 1);
}

BinaryRaster scale_to_canonical(const BinaryRaster& img) {
  BinaryRaster out(kCanonicalSize, kCanonicalSize);
  const long h = img.height();
  const long w = img.width();
  for (int r = 0; r < kCanonicalSize; ++r) {
    const int sr = static_cast<int>(r * h / kCanonicalSize);
    for (int c = 0; c < kCanonicalSize; ++c)
      out.set(r, c, img.at(sr, static_cast<int>(c * w / kCanonicalSize)));
  }
  return out;
}

Neighborhood neighborhood_at(const BinaryRaster& img, int row, int col) {
  if (!img.contains(row, col)) throw Error("index out of bounds");
  std::array<std::uint8_t, 9> v{};
  for (std::size_t label = 0; label < 9; ++label) {
    const auto [dr, dc] = Neighborhood::kOffsets[label];
    v[label] = img.get(row + dr, col + dc);
  }
  return Neighborhood(v);
}

int count_components(const BinaryRaster& img) {
  std::vector<std::uint8_t> seen(img.pixels().size(), 0);
  std::vector<std::pair<int, int>> stack;
  int components = 0;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      const auto idx = static_cast<std::size_t>(r) * img.width() + c;
      if (!img.at(r, c) || seen[idx]) continue;
      ++components;
      seen[idx] = 1;
      stack.emplace_back(r, c);
      while (!stack.empty()) {
        const auto [cr, cc] = stack.back();
        stack.pop_back();
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = cr + dr, nc = cc + dc;
            if (!img.get(nr, nc)) continue;
            const auto nidx = static_cast<std::size_t>(nr) * img.width() + nc;
            if (seen[nidx]) continue;
            seen[nidx] = 1;
            stack.emplace_back(nr, nc);
          }
        }
      }
    }
  }
  return components;
}

}  // namespace hcr
