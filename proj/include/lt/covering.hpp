#pragma once

#include <cstdint>
#include <vector>

#include "lt/ball.hpp"
#include "lt/field.hpp"

namespace lt {

// relative floor under which a cell does not count as support: a hard zero
// test would be brittle for densities that decay smoothly into rounding
inline constexpr double kSupportRelThreshold = 1e-12;

// cells with rho > threshold * max(rho), ascending
std::vector<std::int64_t> support_cells(
    const Field& rho, double rel_threshold = kSupportRelThreshold);

// Smallest grid-representable radius (half-integer multiples of the minimum
// spacing) whose ball around the center cell holds at least target_mass of
// rho, found by bisection on the monotone step map r -> mass(B(c, r)).
// Throws InsufficientMass when the whole grid holds less than target_mass.
double radius_for_mass(const Field& rho, std::int64_t center_cell,
                       double target_mass);

// mass of rho inside the ball, accumulated in ascending cell order
double ball_mass(const Field& rho, const Ball& ball);

// one mass-target ball per support cell, in cell-index order; the
// per-center searches run in parallel
std::vector<Ball> candidate_balls(const Field& rho, double target_mass);

struct Covering {
  std::vector<Ball> balls;            // selected, in selection order
  std::vector<std::int64_t> support;  // cells the covering must reach
  int multiplicity = 0;  // max over support cells of containing balls
  bool covered = false;  // every support cell inside >= 1 selected ball
};

// Greedy selection from candidates: repeatedly take the largest-radius ball
// whose center is not yet covered (ties: smallest center cell), until every
// center is covered. Requires exactly one candidate per support cell,
// otherwise MissingCenter. Coverage and multiplicity are verified by exact
// counting afterwards, not assumed.
Covering besicovitch_select(const Grid& grid,
                            const std::vector<Ball>& candidates,
                            std::span<const std::int64_t> support);

// exact recount of the max overlap over support cells
int multiplicity(const Grid& grid, const Covering& cov);

// convenience pipeline: support -> candidates -> selection
Covering build_covering(const Field& rho, double target_mass);

}  // namespace lt
