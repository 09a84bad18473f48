#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lt/errors.hpp"

namespace lt {

inline constexpr std::int64_t kDefaultCellBudget = std::int64_t{1} << 22;

// Uniform tensor mesh over a box in R^d, d in {1,2,3}. Cells are addressed
// row-major with the last axis fastest; quadrature is the midpoint rule, so
// every cell carries the same weight cell_volume(). Grids are immutable
// value types and safe to share across threads.
class Grid {
public:
  Grid(int dim, std::span<const std::array<double, 2>> extent,
       std::span<const std::int64_t> points_per_axis,
       std::int64_t cell_budget = kDefaultCellBudget);

  int dim() const { return dim_; }
  double lo(int axis) const { return extent_[static_cast<size_t>(axis)][0]; }
  double hi(int axis) const { return extent_[static_cast<size_t>(axis)][1]; }
  double spacing(int axis) const { return h_[static_cast<size_t>(axis)]; }
  std::int64_t points(int axis) const {
    return n_[static_cast<size_t>(axis)];
  }
  double min_spacing() const { return h_min_; }
  double cell_volume() const { return cell_volume_; }
  std::int64_t cell_count() const { return cell_count_; }

  // row-major stride of +1 step along `axis`
  std::int64_t stride(int axis) const {
    return stride_[static_cast<size_t>(axis)];
  }

  std::array<std::int64_t, 3> unflatten(std::int64_t cell) const {
    std::array<std::int64_t, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[static_cast<size_t>(a)] = cell % n_[static_cast<size_t>(a)];
      cell /= n_[static_cast<size_t>(a)];
    }
    return idx;
  }

  std::int64_t flatten(const std::array<std::int64_t, 3>& idx) const {
    std::int64_t cell = 0;
    for (int a = 0; a < dim_; ++a)
      cell = cell * n_[static_cast<size_t>(a)] + idx[static_cast<size_t>(a)];
    return cell;
  }

  // midpoint-rule node: lo + (i + 1/2) h
  double center(int axis, std::int64_t i) const {
    return lo(axis) + (static_cast<double>(i) + 0.5) * spacing(axis);
  }

  std::array<double, 3> cell_center(std::int64_t cell) const {
    const auto idx = unflatten(cell);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a)
      x[static_cast<size_t>(a)] = center(a, idx[static_cast<size_t>(a)]);
    return x;
  }

  // nearest cell to a physical point, clamped to the box
  std::int64_t nearest_cell(const std::array<double, 3>& x) const;

  bool operator==(const Grid& other) const;

private:
  int dim_;
  std::array<std::array<double, 2>, 3> extent_{};
  std::array<std::int64_t, 3> n_{1, 1, 1};
  std::array<double, 3> h_{0.0, 0.0, 0.0};
  std::array<std::int64_t, 3> stride_{0, 0, 0};
  double h_min_ = 0.0;
  double cell_volume_ = 0.0;
  std::int64_t cell_count_ = 0;
};

Grid make_grid(int dim, std::span<const std::array<double, 2>> extent,
               std::span<const std::int64_t> points_per_axis,
               std::int64_t cell_budget = kDefaultCellBudget);

// convenience: same extent and point count on every axis
Grid make_grid(int dim, std::array<double, 2> extent,
               std::int64_t points_per_axis,
               std::int64_t cell_budget = kDefaultCellBudget);

// A set of cells of one grid: the sorted id list plus a membership bitmap
// for O(1) adjacency queries. Masked operations treat the set boundary the
// same way the grid treats the box boundary (differences across it are
// omitted), which is what makes the discrete Neumann identities exact.
class CellSet {
public:
  CellSet(const Grid& grid, std::vector<std::int64_t> cells_sorted);

  std::span<const std::int64_t> cells() const { return cells_; }
  bool contains(std::int64_t cell) const {
    return member_[static_cast<size_t>(cell)] != 0;
  }
  std::int64_t size() const {
    return static_cast<std::int64_t>(cells_.size());
  }
  // discrete measure: cell count times cell volume
  double volume(const Grid& grid) const {
    return static_cast<double>(cells_.size()) * grid.cell_volume();
  }

private:
  std::vector<std::int64_t> cells_;
  std::vector<std::uint8_t> member_;
};

}  // namespace lt
