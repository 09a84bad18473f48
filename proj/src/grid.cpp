#include "lt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lt {

Grid::Grid(int dim, std::span<const std::array<double, 2>> extent,
           std::span<const std::int64_t> points_per_axis,
           std::int64_t cell_budget)
    : dim_(dim) {
  if (dim < 1 || dim > 3)
    throw InvalidInput("grid dimension must be 1, 2 or 3, got " +
                       std::to_string(dim));
  if (extent.size() < static_cast<size_t>(dim) ||
      points_per_axis.size() < static_cast<size_t>(dim))
    throw InvalidInput("extent/points must provide one entry per axis");

  cell_count_ = 1;
  h_min_ = 0.0;
  cell_volume_ = 1.0;
  for (int a = 0; a < dim; ++a) {
    const auto sa = static_cast<size_t>(a);
    const double lo = extent[sa][0];
    const double hi = extent[sa][1];
    if (!(std::isfinite(lo) && std::isfinite(hi)) || hi <= lo)
      throw BadExtent("axis " + std::to_string(a) + " has hi <= lo");
    const std::int64_t n = points_per_axis[sa];
    if (n < 1) throw InvalidInput("points_per_axis must be positive");
    extent_[sa] = {lo, hi};
    n_[sa] = n;
    h_[sa] = (hi - lo) / static_cast<double>(n);
    cell_volume_ *= h_[sa];
    h_min_ = (a == 0) ? h_[sa] : std::min(h_min_, h_[sa]);
    if (cell_count_ > cell_budget / n)  // overflow-safe product check
      throw BudgetExceeded("cell count exceeds budget of " +
                           std::to_string(cell_budget));
    cell_count_ *= n;
  }
  if (cell_count_ > cell_budget)
    throw BudgetExceeded("cell count " + std::to_string(cell_count_) +
                         " exceeds budget of " + std::to_string(cell_budget));

  stride_ = {0, 0, 0};
  std::int64_t s = 1;
  for (int a = dim - 1; a >= 0; --a) {
    stride_[static_cast<size_t>(a)] = s;
    s *= n_[static_cast<size_t>(a)];
  }
}

std::int64_t Grid::nearest_cell(const std::array<double, 3>& x) const {
  std::array<std::int64_t, 3> idx{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    const auto sa = static_cast<size_t>(a);
    const double t = (x[sa] - lo(a)) / spacing(a) - 0.5;
    const auto i = static_cast<std::int64_t>(std::llround(t));
    idx[sa] = std::clamp<std::int64_t>(i, 0, n_[sa] - 1);
  }
  return flatten(idx);
}

bool Grid::operator==(const Grid& other) const {
  if (dim_ != other.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    const auto sa = static_cast<size_t>(a);
    if (extent_[sa] != other.extent_[sa] || n_[sa] != other.n_[sa])
      return false;
  }
  return true;
}

Grid make_grid(int dim, std::span<const std::array<double, 2>> extent,
               std::span<const std::int64_t> points_per_axis,
               std::int64_t cell_budget) {
  return Grid(dim, extent, points_per_axis, cell_budget);
}

Grid make_grid(int dim, std::array<double, 2> extent,
               std::int64_t points_per_axis, std::int64_t cell_budget) {
  std::array<std::array<double, 2>, 3> ext{extent, extent, extent};
  std::array<std::int64_t, 3> pts{points_per_axis, points_per_axis,
                                  points_per_axis};
  return Grid(dim, std::span(ext).first(static_cast<size_t>(dim)),
              std::span(pts).first(static_cast<size_t>(dim)), cell_budget);
}

CellSet::CellSet(const Grid& grid, std::vector<std::int64_t> cells_sorted)
    : cells_(std::move(cells_sorted)),
      member_(static_cast<size_t>(grid.cell_count()), 0) {
  std::int64_t prev = -1;
  for (const auto c : cells_) {
    if (c < 0 || c >= grid.cell_count())
      throw InvalidInput("cell id out of range");
    if (c <= prev) throw InvalidInput("cell list must be strictly ascending");
    prev = c;
    member_[static_cast<size_t>(c)] = 1;
  }
}

}  // namespace lt
