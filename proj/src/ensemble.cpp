#include "lt/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lt/parallel.hpp"

namespace lt {

namespace {

// exponent 1 + 2/d evaluated without pow() for the integer cases
inline double density_power(double rho, int dim) {
  switch (dim) {
    case 1:
      return rho * rho * rho;
    case 2:
      return rho * rho;
    default:
      return std::pow(rho, 1.0 + 2.0 / 3.0);
  }
}

}  // namespace

double orthonormality_defect(const std::vector<Field>& fields) {
  double worst = 0.0;
  for (size_t m = 0; m < fields.size(); ++m) {
    for (size_t n = m; n < fields.size(); ++n) {
      const Complex g = inner_product(fields[m], fields[n]);
      const double target = (m == n) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g - Complex{target, 0.0}));
    }
  }
  return worst;
}

Ensemble make_ensemble(std::vector<double> weights,
                       std::vector<Field> fields) {
  Ensemble e{std::move(weights), std::move(fields)};
  validate_ensemble(e);
  return e;
}

void validate_ensemble(const Ensemble& e) {
  if (e.fields.empty()) throw InvalidInput("ensemble has no fields");
  if (e.weights.size() != e.fields.size())
    throw InvalidInput("ensemble has " + std::to_string(e.weights.size()) +
                       " weights for " + std::to_string(e.fields.size()) +
                       " fields");
  for (const auto& f : e.fields)
    if (!(f.grid() == e.grid())) throw GridMismatch("ensemble fields");
  for (const double w : e.weights)
    if (!(w >= 0.0 && w <= 1.0))
      throw InvalidInput("weight " + std::to_string(w) + " outside [0, 1]");
  const double defect = orthonormality_defect(e.fields);
  if (defect > kOrthoTolerance)
    throw InvalidInput("orthonormality defect " + std::to_string(defect) +
                       " exceeds tolerance");
}

Field density(const Ensemble& e) {
  const Grid& grid = e.grid();
  std::vector<double> rho(static_cast<size_t>(grid.cell_count()), 0.0);
  for (size_t n = 0; n < e.size(); ++n) {
    const double w = e.weights[n];
    const auto v = e.fields[n].values();
    for (size_t i = 0; i < rho.size(); ++i) rho[i] += w * std::norm(v[i]);
  }
  return Field(grid, std::move(rho));
}

Field sqrt_field(const Field& rho) {
  std::vector<double> out;
  out.reserve(rho.values().size());
  for (const auto& v : rho.values()) out.push_back(std::sqrt(v.real()));
  return Field(rho.grid(), std::move(out));
}

double kinetic_energy(const Ensemble& e) {
  std::vector<double> energies(e.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(e.size()), [&](std::int64_t n) {
    energies[static_cast<size_t>(n)] =
        gradient_energy(e.fields[static_cast<size_t>(n)]);
  });
  double acc = 0.0;
  for (size_t n = 0; n < e.size(); ++n) acc += e.weights[n] * energies[n];
  return acc;
}

double kinetic_energy(const Ensemble& e, const CellSet& mask) {
  std::vector<double> energies(e.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(e.size()), [&](std::int64_t n) {
    energies[static_cast<size_t>(n)] =
        gradient_energy(e.fields[static_cast<size_t>(n)], mask);
  });
  double acc = 0.0;
  for (size_t n = 0; n < e.size(); ++n) acc += e.weights[n] * energies[n];
  return acc;
}

double density_power_integral(const Field& rho) {
  const int d = rho.grid().dim();
  double acc = 0.0;
  for (const auto& v : rho.values()) acc += density_power(v.real(), d);
  return acc * rho.grid().cell_volume();
}

double density_power_integral(const Field& rho, const CellSet& mask) {
  const int d = rho.grid().dim();
  const auto v = rho.values();
  double acc = 0.0;
  for (const std::int64_t c : mask.cells())
    acc += density_power(v[static_cast<size_t>(c)].real(), d);
  return acc * rho.grid().cell_volume();
}

double mass_on(const Field& rho, const CellSet& mask) {
  const auto v = rho.values();
  double acc = 0.0;
  for (const std::int64_t c : mask.cells())
    acc += v[static_cast<size_t>(c)].real();
  return acc * rho.grid().cell_volume();
}

double lt_quotient(const Ensemble& e) {
  const Field rho = density(e);
  const double denom = density_power_integral(rho);
  if (denom <= 0.0) throw ZeroDensity("lt_quotient");
  return kinetic_energy(e) / denom;
}

std::vector<Field> orthonormalize(const std::vector<Field>& fields) {
  if (fields.empty()) return {};
  const Grid& grid = fields.front().grid();
  for (const auto& f : fields)
    if (!(f.grid() == grid)) throw GridMismatch("orthonormalize");

  const double vol = grid.cell_volume();
  const auto cells = static_cast<size_t>(grid.cell_count());
  std::vector<std::vector<Complex>> q;
  q.reserve(fields.size());
  for (const auto& f : fields)
    q.emplace_back(f.values().begin(), f.values().end());

  const auto dot = [&](const std::vector<Complex>& a,
                       const std::vector<Complex>& b) {
    Complex acc{0.0, 0.0};
    for (size_t i = 0; i < cells; ++i) acc += std::conj(a[i]) * b[i];
    return acc * vol;
  };

  for (size_t k = 0; k < q.size(); ++k) {
    // two passes of modified Gram-Schmidt keep the Gram defect near machine
    // precision even for nearly dependent inputs
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t j = 0; j < k; ++j) {
        const Complex c = dot(q[j], q[k]);
        for (size_t i = 0; i < cells; ++i) q[k][i] -= c * q[j][i];
      }
    }
    const double nrm = std::sqrt(dot(q[k], q[k]).real());
    if (nrm < 1e-8)
      throw RankDeficient("pivot " + std::to_string(k) + " has norm " +
                          std::to_string(nrm));
    const double inv = 1.0 / nrm;
    for (size_t i = 0; i < cells; ++i) q[k][i] *= inv;
  }

  std::vector<Field> out;
  out.reserve(q.size());
  for (auto& v : q) out.emplace_back(grid, std::move(v));
  return out;
}

}  // namespace lt
