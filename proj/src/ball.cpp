#include "lt/ball.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lt {

Ball Ball::at_cell(const Grid& grid, std::int64_t cell, double radius) {
  Ball b;
  b.center_cell = cell;
  b.center = grid.cell_center(cell);
  b.radius = radius;
  return b;
}

Ball Ball::at_point(const std::array<double, 3>& center, double radius) {
  Ball b;
  b.center = center;
  b.radius = radius;
  return b;
}

bool ball_contains(const Grid& grid, const Ball& ball, std::int64_t cell) {
  const auto x = grid.cell_center(cell);
  double dist2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double d = x[static_cast<size_t>(a)] - ball.center[static_cast<size_t>(a)];
    dist2 += d * d;
  }
  const double r2 = ball.radius * ball.radius;
  if (dist2 < r2) return true;
  if (dist2 > r2) return false;
  // exact tie: keep the cell iff it does not exceed the center on the last axis
  const int last = grid.dim() - 1;
  return x[static_cast<size_t>(last)] <= ball.center[static_cast<size_t>(last)];
}

BallBox ball_bounding_box(const Grid& grid, const Ball& ball) {
  BallBox box;
  for (int a = 0; a < grid.dim(); ++a) {
    const auto sa = static_cast<size_t>(a);
    const double h = grid.spacing(a);
    const double t_lo = (ball.center[sa] - ball.radius - grid.lo(a)) / h - 0.5;
    const double t_hi = (ball.center[sa] + ball.radius - grid.lo(a)) / h - 0.5;
    // one cell of slack on each side so exact ties are never clipped
    box.lo[sa] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor(t_lo)) - 1, 0, grid.points(a) - 1);
    box.hi[sa] = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::ceil(t_hi)) + 1, 0, grid.points(a) - 1);
  }
  return box;
}

CellSet ball_mask(const Grid& grid, const Ball& ball) {
  std::vector<std::int64_t> cells;
  for_each_ball_cell(grid, ball, [&](std::int64_t c) { cells.push_back(c); });
  if (cells.empty())
    throw InvalidInput("ball mask is empty (radius " +
                       std::to_string(ball.radius) + ")");
  return CellSet(grid, std::move(cells));
}

}  // namespace lt
