#pragma once

// Reference implementations used as test oracles. They work on plain int
// grids and spell the rules out literally; none of them calls into the
// library code paths they are used to check.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hcr/raster.hpp"

namespace hcr::testing {

using Grid = std::vector<std::vector<int>>;

Grid to_grid(const BinaryRaster& img);
BinaryRaster from_grid(const Grid& g);

/// P1..P9 (index 0 = P1) of pixel (r, c), reading the 3x3 table
///   P3 P2 P9 / P4 P1 P8 / P5 P6 P7
/// with zero outside the grid.
std::array<int, 9> oracle_labels(const Grid& g, int r, int c);

/// Counts 0->1 pairs in the explicit nine-element list P2,...,P9,P2.
int oracle_zo(const std::array<int, 9>& p);
int oracle_nz(const std::array<int, 9>& p);

/// Literal four-step deletion test at (r, c) of g.
bool oracle_deletable(const Grid& g, int r, int c);

/// Raster-order passes with immediate deletion until a pass changes nothing.
Grid oracle_thin(Grid g);

/// Number of 8-connected stroke components via union-find.
int oracle_components(const Grid& g);

/// Chain traversal from scratch: stroke pixels kept in an ordered set, step
/// directions from atan2, neighbour priority clockwise from east.
int oracle_gc(const Grid& g);

/// Central differences of f at x with step eps.
std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double eps);

/// Generated blobs and strokes for topology checks: filled ellipses,
/// rectangles, rings, thick polylines and random speckle.
std::vector<BinaryRaster> shape_corpus(std::size_t count, std::uint64_t seed);

/// Width-1 polyline skeletons drawn with Bresenham on a size x size raster.
std::vector<BinaryRaster> polyline_skeletons(std::size_t count, int size,
                                             std::uint64_t seed);

/// Bresenham line of 1-pixel width.
void draw_line(Grid& g, int r0, int c0, int r1, int c1);

/// f(x) = 0.5 (x-x*)'A(x-x*) with A = Q diag(eigenvalues) Q' for a random
/// orthogonal Q, eigenvalues spread evenly over [lo, hi]. The minimum value
/// is exactly zero, so a value-only line search can still resolve progress
/// when the gradient is tiny.
struct Quadratic {
  std::size_t dim = 0;
  std::vector<double> a;  // row-major dim x dim
  std::vector<double> xstar;

  double value(std::span<const double> x, std::span<double> grad) const;
};

Quadratic random_quadratic(std::size_t dim, double lo, double hi, std::uint64_t seed);

}  // namespace hcr::testing
