#include "lt/covering.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "lt/parallel.hpp"

namespace lt {

namespace {

double total_mass(const Field& rho) {
  double acc = 0.0;
  for (const auto& v : rho.values()) acc += v.real();
  return acc * rho.grid().cell_volume();
}

// largest center-to-cell-center distance, used to cap the radius search
double max_distance(const Grid& grid, const std::array<double, 3>& center) {
  double acc = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const auto sa = static_cast<size_t>(a);
    const double lo = grid.center(a, 0);
    const double hi = grid.center(a, grid.points(a) - 1);
    const double d = std::max(std::abs(center[sa] - lo),
                              std::abs(center[sa] - hi));
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

std::vector<std::int64_t> support_cells(const Field& rho,
                                        double rel_threshold) {
  double rho_max = 0.0;
  for (const auto& v : rho.values()) rho_max = std::max(rho_max, v.real());
  const double threshold = rel_threshold * rho_max;
  std::vector<std::int64_t> cells;
  const auto v = rho.values();
  for (std::int64_t c = 0; c < rho.grid().cell_count(); ++c)
    if (v[static_cast<size_t>(c)].real() > threshold) cells.push_back(c);
  return cells;
}

double ball_mass(const Field& rho, const Ball& ball) {
  const auto v = rho.values();
  double acc = 0.0;
  for_each_ball_cell(rho.grid(), ball, [&](std::int64_t c) {
    acc += v[static_cast<size_t>(c)].real();
  });
  return acc * rho.grid().cell_volume();
}

double radius_for_mass(const Field& rho, std::int64_t center_cell,
                       double target_mass) {
  if (!(target_mass > 0.0)) throw InvalidInput("target_mass must be positive");
  const Grid& grid = rho.grid();
  if (total_mass(rho) < target_mass)
    throw InsufficientMass("density holds " + std::to_string(total_mass(rho)) +
                           " < target " + std::to_string(target_mass));

  const double step = 0.5 * grid.min_spacing();
  const auto center = grid.cell_center(center_cell);
  // k_max strictly clears the farthest cell so mass(k_max) is the full mass
  const auto k_max = static_cast<std::int64_t>(
                         std::floor(max_distance(grid, center) / step)) +
                     2;

  const auto mass_at = [&](std::int64_t k) {
    return ball_mass(rho, Ball::at_cell(grid, center_cell,
                                        static_cast<double>(k) * step));
  };

  // smallest k with mass(k) >= target on the nondecreasing step map
  std::int64_t lo = 1, hi = k_max;
  if (mass_at(lo) >= target_mass) return step;
  while (lo + 1 < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (mass_at(mid) >= target_mass)
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>(hi) * step;
}

std::vector<Ball> candidate_balls(const Field& rho, double target_mass) {
  const Grid& grid = rho.grid();
  const auto support = support_cells(rho);
  std::vector<Ball> balls(support.size());
  parallel_for(static_cast<std::int64_t>(support.size()),
               [&](std::int64_t i) {
                 const std::int64_t c = support[static_cast<size_t>(i)];
                 const double r = radius_for_mass(rho, c, target_mass);
                 Ball b = Ball::at_cell(grid, c, r);
                 b.mass = ball_mass(rho, b);
                 balls[static_cast<size_t>(i)] = b;
               });
  return balls;
}

Covering besicovitch_select(const Grid& grid,
                            const std::vector<Ball>& candidates,
                            std::span<const std::int64_t> support) {
  // precondition: support cells and candidate centers are the same set
  std::unordered_map<std::int64_t, std::int64_t> slot_of;
  slot_of.reserve(support.size());
  for (size_t i = 0; i < support.size(); ++i) {
    if (!slot_of.emplace(support[i], static_cast<std::int64_t>(i)).second)
      throw MissingCenter("duplicate support cell");
  }
  if (candidates.size() != support.size())
    throw MissingCenter(std::to_string(candidates.size()) +
                        " candidates for " + std::to_string(support.size()) +
                        " support cells");
  for (const auto& b : candidates)
    if (b.center_cell < 0 || slot_of.find(b.center_cell) == slot_of.end())
      throw MissingCenter("candidate centered off the support");
  {
    std::vector<std::int64_t> centers;
    centers.reserve(candidates.size());
    for (const auto& b : candidates) centers.push_back(b.center_cell);
    std::sort(centers.begin(), centers.end());
    if (std::adjacent_find(centers.begin(), centers.end()) != centers.end())
      throw MissingCenter("two candidates share a center");
  }

  // largest radius first, ties by smallest center cell
  std::vector<std::int64_t> order(candidates.size());
  for (size_t i = 0; i < order.size(); ++i)
    order[i] = static_cast<std::int64_t>(i);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const Ball& ba = candidates[static_cast<size_t>(a)];
    const Ball& bb = candidates[static_cast<size_t>(b)];
    if (ba.radius != bb.radius) return ba.radius > bb.radius;
    return ba.center_cell < bb.center_cell;
  });

  Covering cov;
  cov.support.assign(support.begin(), support.end());
  std::vector<std::uint8_t> center_covered(support.size(), 0);
  size_t taken = 0;
  // a center, once covered, stays covered; a single pass over the sorted
  // order therefore reproduces the repeated pick-the-largest rule
  for (const std::int64_t oi : order) {
    const Ball& b = candidates[static_cast<size_t>(oi)];
    const std::int64_t slot = slot_of.at(b.center_cell);
    if (center_covered[static_cast<size_t>(slot)]) continue;
    cov.balls.push_back(b);
    for_each_ball_cell(grid, b, [&](std::int64_t c) {
      const auto it = slot_of.find(c);
      if (it != slot_of.end()) {
        auto& flag = center_covered[static_cast<size_t>(it->second)];
        taken += (flag == 0);
        flag = 1;
      }
    });
    if (taken == support.size()) break;
  }

  // exact verification: count, never assume
  std::vector<std::int64_t> counts(support.size(), 0);
  for (const auto& b : cov.balls)
    for_each_ball_cell(grid, b, [&](std::int64_t c) {
      const auto it = slot_of.find(c);
      if (it != slot_of.end()) ++counts[static_cast<size_t>(it->second)];
    });
  cov.covered = true;
  std::int64_t worst = 0;
  for (const auto n : counts) {
    if (n == 0) cov.covered = false;
    worst = std::max(worst, n);
  }
  cov.multiplicity = static_cast<int>(worst);
  return cov;
}

int multiplicity(const Grid& grid, const Covering& cov) {
  if (cov.support.empty()) return 0;
  std::unordered_map<std::int64_t, std::int64_t> slot_of;
  slot_of.reserve(cov.support.size());
  for (size_t i = 0; i < cov.support.size(); ++i)
    slot_of.emplace(cov.support[i], static_cast<std::int64_t>(i));
  std::vector<std::int64_t> counts(cov.support.size(), 0);
  for (const auto& b : cov.balls)
    for_each_ball_cell(grid, b, [&](std::int64_t c) {
      const auto it = slot_of.find(c);
      if (it != slot_of.end()) ++counts[static_cast<size_t>(it->second)];
    });
  std::int64_t worst = 0;
  for (const auto n : counts) worst = std::max(worst, n);
  return static_cast<int>(worst);
}

Covering build_covering(const Field& rho, double target_mass) {
  const auto support = support_cells(rho);
  const auto candidates = candidate_balls(rho, target_mass);
  return besicovitch_select(rho.grid(), candidates, support);
}

}  // namespace lt
