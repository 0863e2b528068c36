#include <random>

#include "doctest.h"
#include "hcr/error.hpp"
#include "hcr/raster.hpp"

using namespace hcr;

namespace {

GrayRaster gray(int w, int h, std::uint8_t v) {
  return {w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w * h), v)};
}

GrayRaster random_gray(std::mt19937& rng) {
  GrayRaster g{static_cast<int>(rng() % 20 + 1), static_cast<int>(rng() % 20 + 1), {}};
  for (int i = 0; i < g.width * g.height; ++i)
    g.pixels.push_back(static_cast<std::uint8_t>(rng() % 256));
  return g;
}

BinaryRaster random_binary(std::mt19937& rng, int w, int h, int density) {
  BinaryRaster img(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) img.set(r, c, static_cast<int>(rng() % 100) < density);
  return img;
}

}  // namespace

TEST_SUITE("raster") {
  TEST_CASE("binarize follows the dark-ink rule") {
    CHECK(binarize(gray(4, 3, 255), 128) == BinaryRaster(4, 3, 0));
    CHECK(binarize(gray(4, 3, 0), 128) == BinaryRaster(4, 3, 1));

    GrayRaster checker{4, 4, {}};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        checker.pixels.push_back((r + c) % 2 ? 255 : 0);
    const BinaryRaster b = binarize(checker, 128);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(b.at(r, c) == ((r + c) % 2 ? 0 : 1));

    CHECK_THROWS_WITH_AS(binarize(GrayRaster{}, 128), "empty image", Error);
  }

  TEST_CASE("binarize is monotone in the threshold") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const GrayRaster g = random_gray(rng);
      const int lo = static_cast<int>(rng() % 256);
      const int hi = lo + static_cast<int>(rng() % (256 - lo));
      const BinaryRaster a = binarize(g, lo), b = binarize(g, hi);
      for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c)
          if (a.at(r, c)) CHECK(b.at(r, c));
    }
  }

  TEST_CASE("crop_to_content finds the minimal box") {
    BinaryRaster single(10, 10);
    single.set(3, 7, 1);
    CHECK(crop_to_content(single) == BinaryRaster(1, 1, 1));

    BinaryRaster two(5, 5);
    two.set(1, 1, 1);
    two.set(3, 2, 1);
    const BinaryRaster cropped = crop_to_content(two);
    CHECK(cropped.height() == 3);
    CHECK(cropped.width() == 2);
    CHECK(cropped.at(0, 0) == 1);
    CHECK(cropped.at(2, 1) == 1);
    CHECK(cropped.stroke_count() == 2);

    const auto tight = BinaryRaster::from_rows({"#.", ".#"});
    CHECK(crop_to_content(tight) == tight);

    CHECK_THROWS_WITH_AS(crop_to_content(BinaryRaster(6, 4)), "blank image", Error);
  }

  TEST_CASE("crop_to_content is idempotent and leaves stroke on every edge") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      BinaryRaster img = random_binary(rng, 1 + rng() % 30, 1 + rng() % 30, 5);
      img.set(0, 0, 0);
      if (img.blank()) img.set(img.height() / 2, img.width() / 2, 1);
      const BinaryRaster once = crop_to_content(img);
      CHECK(crop_to_content(once) == once);
      CHECK(once.stroke_count() == img.stroke_count());
      bool top = false, bottom = false, left = false, right = false;
      for (int c = 0; c < once.width(); ++c) {
        top |= once.at(0, c) != 0;
        bottom |= once.at(once.height() - 1, c) != 0;
      }
      for (int r = 0; r < once.height(); ++r) {
        left |= once.at(r, 0) != 0;
        right |= once.at(r, once.width() - 1) != 0;
      }
      CHECK((top && bottom && left && right));
    }
  }

  TEST_CASE("scale_to_canonical samples by the floor index rule") {
    std::mt19937 rng(5);
    const BinaryRaster full = random_binary(rng, kCanonicalSize, kCanonicalSize, 40);
    CHECK(scale_to_canonical(full) == full);

    CHECK(scale_to_canonical(BinaryRaster(1, 1, 1)) ==
          BinaryRaster(kCanonicalSize, kCanonicalSize, 1));

    const BinaryRaster half = random_binary(rng, 70, 70, 50);
    const BinaryRaster scaled = scale_to_canonical(half);
    for (int r = 0; r < kCanonicalSize; ++r)
      for (int c = 0; c < kCanonicalSize; ++c)
        REQUIRE(scaled.at(r, c) == half.at(r / 2, c / 2));
  }

  TEST_CASE("scale_to_canonical always yields a binary 140x140 raster") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
      const BinaryRaster img = random_binary(rng, 1 + rng() % 300, 1 + rng() % 300, 30);
      const BinaryRaster s = scale_to_canonical(img);
      CHECK(s.width() == kCanonicalSize);
      CHECK(s.height() == kCanonicalSize);
      for (auto px : s.pixels()) CHECK(px <= 1);
    }
  }

  TEST_CASE("neighborhood_at uses the labelled layout and a zero border") {
    const BinaryRaster ones(5, 5, 1);
    const Neighborhood corner = neighborhood_at(ones, 0, 0);
    CHECK(corner.p(1) == 1);
    CHECK(corner.p(6) == 1);
    CHECK(corner.p(7) == 1);
    CHECK(corner.p(8) == 1);
    for (int label : {2, 3, 4, 5, 9}) CHECK(corner.p(label) == 0);

    for (int label = 1; label <= 9; ++label) {
      CHECK(neighborhood_at(BinaryRaster(5, 5), 2, 2).p(label) == 0);
      CHECK(neighborhood_at(ones, 2, 2).p(label) == 1);
    }

    // One marked pixel per compass position around (1,1).
    const auto probe = [](int r, int c) {
      BinaryRaster img(3, 3);
      img.set(r, c, 1);
      return neighborhood_at(img, 1, 1);
    };
    CHECK(probe(0, 0).p(3) == 1);
    CHECK(probe(0, 1).p(2) == 1);
    CHECK(probe(0, 2).p(9) == 1);
    CHECK(probe(1, 0).p(4) == 1);
    CHECK(probe(1, 2).p(8) == 1);
    CHECK(probe(2, 0).p(5) == 1);
    CHECK(probe(2, 1).p(6) == 1);
    CHECK(probe(2, 2).p(7) == 1);

    CHECK_THROWS_WITH_AS(neighborhood_at(ones, 5, 0), "index out of bounds", Error);
    CHECK_THROWS_WITH_AS(neighborhood_at(ones, 0, -1), "index out of bounds", Error);
  }

  TEST_CASE("edge pixels read off-raster neighbours as background") {
    std::mt19937 rng(21);
    const BinaryRaster img = random_binary(rng, 7, 5, 100);
    for (int r = 0; r < img.height(); ++r) {
      for (int c = 0; c < img.width(); ++c) {
        const Neighborhood n = neighborhood_at(img, r, c);
        for (int label = 2; label <= 9; ++label) {
          const auto [dr, dc] = Neighborhood::kOffsets[label - 1];
          if (!img.contains(r + dr, c + dc)) CHECK(n.p(label) == 0);
        }
      }
    }
  }

  TEST_CASE("Neighborhood::from_grid matches the printed table") {
    const Neighborhood n = Neighborhood::from_grid({3, 2, 9, 4, 1, 8, 5, 6, 7});
    for (int label = 1; label <= 9; ++label) CHECK(n.p(label) == 1);
    const Neighborhood north = Neighborhood::from_grid({0, 1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(north.p(2) == 1);
    CHECK(north.ring_bits() == 0b1);
  }

  TEST_CASE("count_components uses 8-connectivity") {
    CHECK(count_components(BinaryRaster::from_rows({"#.", ".#"})) == 1);
    CHECK(count_components(BinaryRaster::from_rows({"#.#", "...", "#.#"})) == 4);
    CHECK(count_components(BinaryRaster(4, 4)) == 0);
  }

  TEST_CASE("construction rejects empty dimensions") {
    CHECK_THROWS_AS(BinaryRaster(0, 3), Error);
    CHECK_THROWS_AS(BinaryRaster::from_rows({"##", "#"}), Error);
  }
}
