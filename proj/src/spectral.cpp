#include "lt/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lt/rng.hpp"

namespace lt {

namespace {

// local index of a global cell inside the sorted mask list, or -1
std::int64_t local_index(std::span<const std::int64_t> cells,
                         std::int64_t cell) {
  const auto it = std::lower_bound(cells.begin(), cells.end(), cell);
  if (it == cells.end() || *it != cell) return -1;
  return it - cells.begin();
}

void check_connected(const Grid& grid, const CellSet& mask) {
  const auto cells = mask.cells();
  const auto m = static_cast<size_t>(mask.size());
  if (m == 0) throw InvalidInput("empty mask");
  std::vector<std::uint8_t> seen(m, 0);
  std::vector<std::int64_t> queue{0};
  seen[0] = 1;
  size_t visited = 1;
  while (!queue.empty()) {
    const std::int64_t li = queue.back();
    queue.pop_back();
    const std::int64_t cell = cells[static_cast<size_t>(li)];
    const auto idx = grid.unflatten(cell);
    for (int a = 0; a < grid.dim(); ++a) {
      for (const int dir : {-1, +1}) {
        const std::int64_t ia = idx[static_cast<size_t>(a)] + dir;
        if (ia < 0 || ia >= grid.points(a)) continue;
        const std::int64_t nb = cell + dir * grid.stride(a);
        if (!mask.contains(nb)) continue;
        const std::int64_t lj = local_index(cells, nb);
        if (!seen[static_cast<size_t>(lj)]) {
          seen[static_cast<size_t>(lj)] = 1;
          ++visited;
          queue.push_back(lj);
        }
      }
    }
  }
  if (visited != m)
    throw DisconnectedMask(std::to_string(m - visited) +
                           " of " + std::to_string(m) +
                           " cells unreachable under axis adjacency");
}

}  // namespace

NeumannOperator::NeumannOperator(const Grid& grid, const CellSet& mask) {
  check_connected(grid, mask);
  const auto cells = mask.cells();
  n_ = mask.size();
  row_ptr_.assign(static_cast<size_t>(n_) + 1, 0);

  std::array<double, 3> w{};
  for (int a = 0; a < grid.dim(); ++a) {
    const double h = grid.spacing(a);
    w[static_cast<size_t>(a)] = 1.0 / (h * h);
  }

  // two passes: count row entries, then fill with columns ascending
  for (int pass = 0; pass < 2; ++pass) {
    for (std::int64_t li = 0; li < n_; ++li) {
      const std::int64_t cell = cells[static_cast<size_t>(li)];
      const auto idx = grid.unflatten(cell);
      double diag = 0.0;
      std::vector<std::pair<std::int64_t, double>> entries;
      for (int a = 0; a < grid.dim(); ++a) {
        for (const int dir : {-1, +1}) {
          const std::int64_t ia = idx[static_cast<size_t>(a)] + dir;
          if (ia < 0 || ia >= grid.points(a)) continue;
          const std::int64_t nb = cell + dir * grid.stride(a);
          if (!mask.contains(nb)) continue;
          const std::int64_t lj = local_index(cells, nb);
          entries.emplace_back(lj, -w[static_cast<size_t>(a)]);
          diag += w[static_cast<size_t>(a)];
        }
      }
      entries.emplace_back(li, diag);
      std::sort(entries.begin(), entries.end());
      if (pass == 0) {
        row_ptr_[static_cast<size_t>(li) + 1] =
            static_cast<std::int64_t>(entries.size());
      } else {
        auto at = row_ptr_[static_cast<size_t>(li)];
        for (const auto& [c, v] : entries) {
          col_[static_cast<size_t>(at)] = static_cast<std::int32_t>(c);
          val_[static_cast<size_t>(at)] = v;
          ++at;
        }
        diag_max_ = std::max(diag_max_, diag);
      }
    }
    if (pass == 0) {
      for (size_t i = 1; i < row_ptr_.size(); ++i)
        row_ptr_[i] += row_ptr_[i - 1];
      col_.resize(static_cast<size_t>(row_ptr_.back()));
      val_.resize(static_cast<size_t>(row_ptr_.back()));
    }
  }
}

void NeumannOperator::apply(std::span<const double> x,
                            std::span<double> y) const {
  for (std::int64_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (auto k = row_ptr_[static_cast<size_t>(i)];
         k < row_ptr_[static_cast<size_t>(i) + 1]; ++k)
      acc += val_[static_cast<size_t>(k)] *
             x[static_cast<size_t>(col_[static_cast<size_t>(k)])];
    y[static_cast<size_t>(i)] = acc;
  }
}

std::vector<std::vector<double>> NeumannOperator::dense_rows() const {
  std::vector<std::vector<double>> rows(
      static_cast<size_t>(n_), std::vector<double>(static_cast<size_t>(n_)));
  for (std::int64_t i = 0; i < n_; ++i)
    for (auto k = row_ptr_[static_cast<size_t>(i)];
         k < row_ptr_[static_cast<size_t>(i) + 1]; ++k)
      rows[static_cast<size_t>(i)][static_cast<size_t>(
          col_[static_cast<size_t>(k)])] = val_[static_cast<size_t>(k)];
  return rows;
}

NeumannOperator neumann_laplacian(const Grid& grid, const CellSet& mask) {
  return NeumannOperator(grid, mask);
}

NeumannOperator neumann_laplacian(const Grid& grid, const Ball& ball) {
  const CellSet mask = ball_mask(grid, ball);
  return NeumannOperator(grid, mask);
}

namespace {

Eigen::MatrixXd to_eigen(const NeumannOperator& op) {
  const auto m = op.dim();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  const auto rows = op.dense_rows();
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < m; ++j)
      A(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return A;
}

double dense_gap(const NeumannOperator& op) {
  const Eigen::MatrixXd A = to_eigen(op);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw SolverNoConvergence("dense eigensolve failed");
  return es.eigenvalues()(1);
}

// Lanczos with full reorthogonalization on the orthogonal complement of the
// constant vector (the known Neumann ground state). Returns the smallest
// eigenvalue there, i.e. the spectral gap. Deterministic: fixed start seed,
// single-threaded.
double lanczos_gap(const NeumannOperator& op, const SolverConfig& cfg) {
  const std::int64_t m = op.dim();
  const std::int64_t kmax =
      cfg.max_iter > 0 ? std::min<std::int64_t>(cfg.max_iter, m - 1)
                       : std::min<std::int64_t>(m - 1, 4000);
  const double scale = std::max(op.diagonal_max(), 1e-300);
  const double breakdown = 1e-12 * scale;

  const Eigen::VectorXd ones =
      Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));

  Rng rng(cfg.start_seed);
  Eigen::VectorXd w(m);
  for (std::int64_t i = 0; i < m; ++i) w(i) = rng.uniform(-1.0, 1.0);
  w -= (ones.dot(w)) * ones;
  w -= (ones.dot(w)) * ones;
  double beta_prev = w.norm();
  if (beta_prev <= breakdown)
    throw SolverNoConvergence("degenerate start vector");

  std::vector<Eigen::VectorXd> basis;
  basis.reserve(static_cast<size_t>(std::min<std::int64_t>(kmax + 1, 1024)));
  basis.push_back(w / beta_prev);

  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd av(m);

  double theta_prev = -1.0;
  int stable = 0;

  const auto smallest_ritz = [&](bool with_vectors,
                                 double* bottom) -> double {
    const auto k = static_cast<std::int64_t>(alpha.size());
    Eigen::VectorXd diag(k), sub(std::max<std::int64_t>(k - 1, 0));
    for (std::int64_t i = 0; i < k; ++i) diag(i) = alpha[static_cast<size_t>(i)];
    for (std::int64_t i = 0; i + 1 < k; ++i) sub(i) = beta[static_cast<size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(
        diag, sub,
        with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw SolverNoConvergence("tridiagonal eigensolve failed");
    if (with_vectors && bottom != nullptr)
      *bottom = std::abs(es.eigenvectors()(k - 1, 0));
    return es.eigenvalues()(0);
  };

  for (std::int64_t j = 0; j < kmax; ++j) {
    const Eigen::VectorXd& v = basis.back();
    op.apply({v.data(), static_cast<size_t>(m)},
             {av.data(), static_cast<size_t>(m)});
    if (j > 0) av -= beta[static_cast<size_t>(j - 1)] * basis[static_cast<size_t>(j - 1)];
    const double a = v.dot(av);
    alpha.push_back(a);
    av -= a * v;
    for (int pass = 0; pass < 2; ++pass) {
      av -= (ones.dot(av)) * ones;
      for (const auto& q : basis) av -= (q.dot(av)) * q;
    }
    const double b = av.norm();

    const bool exhausted = (j + 1 == kmax) || (b <= breakdown);
    if (exhausted || (j + 1) % 8 == 0) {
      const double theta = smallest_ritz(false, nullptr);
      const double tol = cfg.rel_tol * std::max(theta, 1e-30);
      if (theta_prev >= 0.0 && std::abs(theta - theta_prev) <= 0.25 * tol)
        ++stable;
      else
        stable = 0;
      theta_prev = theta;
      if (exhausted || stable >= 2) {
        double bottom = 0.0;
        const double certified = smallest_ritz(true, &bottom);
        const double residual = b * bottom;
        if (residual <= cfg.rel_tol * std::max(certified, 1e-30))
          return certified;
        if (b <= breakdown) return certified;  // exact invariant subspace
        if (j + 1 == kmax)
          throw SolverNoConvergence(
              "Lanczos residual " + std::to_string(residual) +
              " after " + std::to_string(j + 1) + " iterations");
        stable = 0;  // certificate failed: keep iterating
      }
    }
    if (b <= breakdown) {
      // invariant subspace without a passing certificate cannot happen, but
      // guard against a zero division all the same
      return smallest_ritz(false, nullptr);
    }
    beta.push_back(b);
    basis.push_back(av / b);
  }
  throw SolverNoConvergence("Lanczos failed to converge");
}

}  // namespace

GapReport neumann_gap(const Grid& grid, const Ball& ball, const CellSet& mask,
                      const SolverConfig& cfg) {
  if (mask.size() < 2)
    throw GapUndefined("mask has " + std::to_string(mask.size()) + " cell(s)");
  const NeumannOperator op(grid, mask);

  // the constant vector must be an exact kernel vector of the assembly
  std::vector<double> one(static_cast<size_t>(op.dim()), 1.0);
  std::vector<double> lone(static_cast<size_t>(op.dim()), 0.0);
  op.apply(one, lone);
  double kernel_residual = 0.0;
  for (const double v : lone)
    kernel_residual = std::max(kernel_residual, std::abs(v));
  if (kernel_residual > 1e-8)
    throw SolverNoConvergence("constant-vector residual " +
                              std::to_string(kernel_residual));

  const bool dense =
      cfg.path == SolverConfig::Path::dense ||
      (cfg.path == SolverConfig::Path::automatic && op.dim() <= cfg.dense_max);
  const double gap = dense ? dense_gap(op) : lanczos_gap(op, cfg);

  GapReport report;
  report.ball = ball;
  report.cells = mask.size();
  report.volume = mask.volume(grid);
  report.gap = std::max(gap, 0.0);
  report.gap_times_volume_pow =
      report.gap * std::pow(report.volume, 2.0 / grid.dim());
  report.kernel_residual = kernel_residual;
  return report;
}

GapReport neumann_gap(const Grid& grid, const Ball& ball,
                      const SolverConfig& cfg) {
  const CellSet mask = ball_mask(grid, ball);
  return neumann_gap(grid, ball, mask, cfg);
}

std::vector<NeumannMode> neumann_modes(const Grid& grid, const Ball& ball,
                                       int k) {
  const CellSet mask = ball_mask(grid, ball);
  if (mask.size() > 4096)
    throw InvalidInput("neumann_modes is a dense-path helper; mask has " +
                       std::to_string(mask.size()) + " cells");
  if (k < 1 || k > mask.size())
    throw InvalidInput("requested " + std::to_string(k) + " modes from " +
                       std::to_string(mask.size()) + " cells");
  const NeumannOperator op(grid, mask);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(op));
  if (es.info() != Eigen::Success)
    throw SolverNoConvergence("dense eigensolve failed");

  // eigenvectors have unit Euclidean norm; rescale so the lifted Field has
  // unit discrete L^2 norm
  const double inv_sqrt_vol = 1.0 / std::sqrt(grid.cell_volume());
  std::vector<NeumannMode> modes;
  modes.reserve(static_cast<size_t>(k));
  const auto cells = mask.cells();
  for (int j = 0; j < k; ++j) {
    std::vector<double> values(static_cast<size_t>(grid.cell_count()), 0.0);
    for (std::int64_t li = 0; li < mask.size(); ++li)
      values[static_cast<size_t>(cells[static_cast<size_t>(li)])] =
          es.eigenvectors()(li, j) * inv_sqrt_vol;
    modes.push_back(
        NeumannMode{es.eigenvalues()(j), Field(grid, std::move(values))});
  }
  return modes;
}

HoCheck hoffmann_ostenhof_check(const Ensemble& e) {
  const Field root = sqrt_field(density(e));
  HoCheck out;
  out.lhs = gradient_energy(root);
  out.rhs = kinetic_energy(e);
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

HoCheck hoffmann_ostenhof_check(const Ensemble& e, const CellSet& mask) {
  const Field root = sqrt_field(density(e));
  HoCheck out;
  out.lhs = gradient_energy(root, mask);
  out.rhs = kinetic_energy(e, mask);
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

UncertaintyReport local_uncertainty_measure(const Field& g, const Ball& ball,
                                            const CellSet& mask) {
  const Grid& grid = g.grid();
  std::vector<double> sq;
  sq.reserve(g.values().size());
  for (const auto& v : g.values()) sq.push_back(std::norm(v));
  const Field gg(grid, std::move(sq));

  const double l2 = mass_on(gg, mask);
  if (l2 <= 0.0) throw ZeroOnBall("field vanishes on the ball");

  const double d = grid.dim();
  UncertaintyReport rep;
  rep.region = ball;
  rep.kinetic = gradient_energy(g, mask);
  rep.interaction =
      density_power_integral(gg, mask) / std::pow(l2, 2.0 / d);
  rep.volume_term = l2 / std::pow(mask.volume(grid), 2.0 / d);
  // smallest root of  volume_term C^2 + kinetic C - interaction >= 0,
  // clamped to C >= 1
  const double disc = rep.kinetic * rep.kinetic +
                      4.0 * rep.volume_term * rep.interaction;
  const double root =
      (-rep.kinetic + std::sqrt(disc)) / (2.0 * rep.volume_term);
  rep.fitted_constant = std::max(1.0, root);
  return rep;
}

UncertaintyReport local_uncertainty_measure(const Field& g, const Ball& ball) {
  return local_uncertainty_measure(g, ball, ball_mask(g.grid(), ball));
}

double sobolev_quotient(const Field& g) {
  const Grid& grid = g.grid();
  std::vector<double> sq;
  sq.reserve(g.values().size());
  for (const auto& v : g.values()) sq.push_back(std::norm(v));
  const Field gg(grid, std::move(sq));
  const double l2 = integral(gg);
  if (l2 <= 0.0) throw ZeroField("sobolev_quotient");
  const double denom = density_power_integral(gg);
  return gradient_energy(g) * std::pow(l2, 2.0 / grid.dim()) / denom;
}

}  // namespace lt
