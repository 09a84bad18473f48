#pragma once

#include <cstdint>
#include <vector>

#include "lt/ball.hpp"
#include "lt/ensemble.hpp"

namespace lt {

// Graph Laplacian of the axis-neighbor adjacency inside a cell mask, with
// edge weight 1/h^2 per axis. Symmetric positive semidefinite with the
// constant vector in its kernel; its quadratic form against the uniform
// quadrature weight is exactly gradient_energy(.., mask). Stored CSR on
// local (mask-order) indices.
class NeumannOperator {
public:
  NeumannOperator(const Grid& grid, const CellSet& mask);

  std::int64_t dim() const { return n_; }
  // y = L x
  void apply(std::span<const double> x, std::span<double> y) const;
  // dense copy, for small operators and for tests
  std::vector<std::vector<double>> dense_rows() const;
  double diagonal_max() const { return diag_max_; }

private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> row_ptr_;
  std::vector<std::int32_t> col_;
  std::vector<double> val_;
  double diag_max_ = 0.0;
};

struct SolverConfig {
  // Dense eigensolve at or below this mask size, Lanczos above. Dense full
  // solves scale as m^3 and stop being interactive near a thousand cells;
  // the Lanczos path holds the same 1e-6 relative tolerance.
  std::int64_t dense_max = 800;
  double rel_tol = 1e-6;
  std::int64_t max_iter = 0;  // 0: min(m - 1, 4000)
  std::uint64_t start_seed = 0x1f2e3d4c5b6a7988ULL;
  enum class Path { automatic, dense, lanczos };
  Path path = Path::automatic;
};

struct GapReport {
  Ball ball;
  std::int64_t cells = 0;
  double volume = 0.0;  // cell count times cell volume
  double gap = 0.0;     // second-smallest Neumann eigenvalue
  double gap_times_volume_pow = 0.0;  // gap * |B|^(2/d), dimensionless
  double kernel_residual = 0.0;       // |L 1|_inf, sanity on the ground state
};

struct UncertaintyReport {
  Ball region;
  double kinetic = 0.0;      // integral over B of |grad g|^2
  double interaction = 0.0;  // integral |g|^(2(1+2/d)) / (integral |g|^2)^(2/d)
  double volume_term = 0.0;  // |B|^(-2/d) integral |g|^2
  // smallest C >= 1 with kinetic >= interaction / C - C * volume_term
  double fitted_constant = 0.0;
};

struct HoCheck {
  double lhs = 0.0;  // gradient energy of sqrt(rho)
  double rhs = 0.0;  // kinetic energy of the ensemble
  bool holds = false;
};

struct NeumannMode {
  double value = 0.0;
  Field field;  // unit discrete L^2 norm on the mask, zero outside
};

// Assembles the operator; throws DisconnectedMask when the mask is not
// connected under axis adjacency (the gap would be spuriously zero).
NeumannOperator neumann_laplacian(const Grid& grid, const Ball& ball);
NeumannOperator neumann_laplacian(const Grid& grid, const CellSet& mask);

// Second-smallest eigenvalue of the Neumann Laplacian on the ball's mask.
// Throws GapUndefined for single-cell masks and SolverNoConvergence if the
// iterative path fails its residual certificate.
GapReport neumann_gap(const Grid& grid, const Ball& ball,
                      const SolverConfig& cfg = {});
GapReport neumann_gap(const Grid& grid, const Ball& ball, const CellSet& mask,
                      const SolverConfig& cfg = {});

// k lowest Neumann eigenpairs on the mask via the dense path, lifted to
// full-grid Fields (zero outside the mask). Intended for fixtures and
// saturation tests; refuses masks above 4096 cells.
std::vector<NeumannMode> neumann_modes(const Grid& grid, const Ball& ball,
                                       int k);

// lhs = gradient_energy(sqrt(rho) [, mask]), rhs = kinetic energy; the
// discrete inequality lhs <= rhs is exact for forward differences, so
// holds is lhs <= rhs + 1e-9
HoCheck hoffmann_ostenhof_check(const Ensemble& e);
HoCheck hoffmann_ostenhof_check(const Ensemble& e, const CellSet& mask);

// Measures the three local-uncertainty functionals of g on the ball and
// fits the smallest constant C >= 1 closing the inequality for this g.
// Throws ZeroOnBall when g vanishes identically on the mask.
UncertaintyReport local_uncertainty_measure(const Field& g, const Ball& ball);
UncertaintyReport local_uncertainty_measure(const Field& g, const Ball& ball,
                                            const CellSet& mask);

// [ integral |grad g|^2 * (integral |g|^2)^(2/d) ] / integral |g|^(2(1+2/d))
double sobolev_quotient(const Field& g);

}  // namespace lt
