#pragma once

#include <optional>
#include <vector>

#include "lt/field.hpp"

namespace lt {

inline constexpr double kOrthoTolerance = 1e-10;

// A weighted orthonormal family (lambda_n, u_n): the finite-rank operator
// sum_n lambda_n |u_n><u_n| with 0 <= lambda_n <= 1. Orthonormality is
// checked at construction to kOrthoTolerance and re-checked before any
// certificate is built.
struct Ensemble {
  std::vector<double> weights;
  std::vector<Field> fields;

  const Grid& grid() const { return fields.front().grid(); }
  std::size_t size() const { return fields.size(); }
};

// validates and constructs; throws InvalidInput on any violated invariant
Ensemble make_ensemble(std::vector<double> weights, std::vector<Field> fields);

// re-checks the Ensemble invariants (shared grid, weight range,
// orthonormality); throws InvalidInput on failure
void validate_ensemble(const Ensemble& e);

// largest deviation |<u_m, u_n> - delta_mn| over all pairs
double orthonormality_defect(const std::vector<Field>& fields);

// rho(x) = sum_n lambda_n |u_n(x)|^2; real, pointwise nonnegative
Field density(const Ensemble& e);

// cellwise square root of a nonnegative real field
Field sqrt_field(const Field& rho);

// sum_n lambda_n * gradient_energy(u_n [, mask]); the weighted sum runs in
// fixed index order regardless of how the per-field energies were computed
double kinetic_energy(const Ensemble& e);
double kinetic_energy(const Ensemble& e, const CellSet& mask);

// integral of rho^(1 + 2/d) over the grid or over a mask
double density_power_integral(const Field& rho);
double density_power_integral(const Field& rho, const CellSet& mask);

// integral of rho over a mask
double mass_on(const Field& rho, const CellSet& mask);

// Tr(-Delta gamma) / integral rho^(1+2/d); throws ZeroDensity when the
// density vanishes identically
double lt_quotient(const Ensemble& e);

// Modified Gram-Schmidt with one re-orthogonalization pass. Spans the same
// space as the input; throws RankDeficient if a pivot norm falls below 1e-8.
std::vector<Field> orthonormalize(const std::vector<Field>& fields);

}  // namespace lt
