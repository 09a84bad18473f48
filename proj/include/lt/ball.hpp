#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "lt/field.hpp"
#include "lt/grid.hpp"

namespace lt {

// A Euclidean ball in grid coordinates. The cell membership rule is pinned
// for reproducibility: a cell belongs to the ball iff |x_cell - center| < r,
// with the tie |x_cell - center| = r resolved by x_cell along the last axis
// being <= the center. Radii produced by the covering module are quantized
// to half-integer multiples of the minimum spacing, so in 1d a ball grows by
// exactly one cell per quantization step.
struct Ball {
  std::int64_t center_cell = -1;  // generating cell, -1 for a free center
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double radius = 0.0;
  double mass = 0.0;  // integral of the density over the ball, when known

  static Ball at_cell(const Grid& grid, std::int64_t cell, double radius);
  static Ball at_point(const std::array<double, 3>& center, double radius);
};

bool ball_contains(const Grid& grid, const Ball& ball, std::int64_t cell);

// cells of the ball, ascending; throws InvalidInput if the mask is empty
CellSet ball_mask(const Grid& grid, const Ball& ball);

// inclusive index ranges of the axis-aligned bounding box of the ball,
// clamped to the grid (one cell of slack on each side for the tie rule)
struct BallBox {
  std::array<std::int64_t, 3> lo{0, 0, 0};
  std::array<std::int64_t, 3> hi{0, 0, 0};
};
BallBox ball_bounding_box(const Grid& grid, const Ball& ball);

// visits the ball's cells in ascending index order
template <typename Fn>
void for_each_ball_cell(const Grid& grid, const Ball& ball, Fn&& fn) {
  const BallBox box = ball_bounding_box(grid, ball);
  std::array<std::int64_t, 3> idx{0, 0, 0};
  const int d = grid.dim();
  for (std::int64_t i0 = box.lo[0]; i0 <= box.hi[0]; ++i0) {
    idx[0] = i0;
    for (std::int64_t i1 = box.lo[1]; i1 <= box.hi[1]; ++i1) {
      idx[1] = i1;
      for (std::int64_t i2 = box.lo[2]; i2 <= box.hi[2]; ++i2) {
        idx[2] = i2;
        std::int64_t cell = idx[0];
        for (int a = 1; a < d; ++a)
          cell = cell * grid.points(a) + idx[static_cast<size_t>(a)];
        if (ball_contains(grid, ball, cell)) fn(cell);
      }
    }
  }
}

}  // namespace lt
