#pragma once

#include <complex>
#include <span>
#include <vector>

#include "lt/grid.hpp"

namespace lt {

using Complex = std::complex<double>;

// A scalar function sampled at the cell centers of one Grid. Storage is
// complex; purely real data simply carries zero imaginary parts (the JSON
// codec strips them on output). Fields are immutable after construction.
class Field {
public:
  Field(Grid grid, std::vector<Complex> values);
  Field(Grid grid, std::vector<double> values);

  static Field zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  Complex value(std::int64_t cell) const {
    return values_[static_cast<size_t>(cell)];
  }
  bool is_real() const;

private:
  Grid grid_;
  std::vector<Complex> values_;
};

// discrete L^2 pairing: sum of conj(f) g over cells in ascending index
// order, times the cell volume
Complex inner_product(const Field& f, const Field& g);

double norm(const Field& f);

// sum of Re(f) over cells (ascending) times cell volume; the discrete
// integral of a real-valued field
double integral(const Field& f);

// Forward-difference Dirichlet energy: sum over axis-adjacent cell pairs of
// |f_j - f_i|^2 / h^2, times the cell volume. Differences across the box
// boundary are omitted (Neumann convention). The masked overload keeps only
// pairs with BOTH cells in the mask, i.e. the mask boundary is treated
// exactly like the box boundary; this makes the masked energy the quadratic
// form of the Neumann operator on the mask.
double gradient_energy(const Field& f);
double gradient_energy(const Field& f, const CellSet& mask);

}  // namespace lt
