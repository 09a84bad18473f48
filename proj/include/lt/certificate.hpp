#pragma once

#include <string>
#include <vector>

#include "lt/covering.hpp"
#include "lt/spectral.hpp"

namespace lt {

struct CertificateConfig {
  double target_mass = 2.0;       // per-ball mass and small-mass threshold
  double mass_window_low = 2.0;   // per-ball admissible mass window [a, b];
  double mass_window_high = 3.0;  // a > 1 is what powers the exclusion term
  double rel_slack = 1e-9;        // per-link relative slack of the chain
  SolverConfig solver;
};

struct ExclusionCheck {
  double lhs = 0.0;  // kinetic energy of the ensemble on the ball
  double rhs = 0.0;  // gap * (mass - 1)
  double gap = 0.0;
  double mass = 0.0;
  bool holds = false;
};

// Kinetic energy on the ball dominates gap * (mass - 1). The masked kinetic
// form and the Neumann operator are the same quadratic form, so this is an
// exact discrete statement, checked with 1e-9 absolute slack.
ExclusionCheck verify_exclusion(const Ensemble& e, const Ball& ball,
                                const SolverConfig& solver = {});

struct BallReport {
  Ball ball;
  double mass = 0.0;
  double local_kinetic = 0.0;    // Tr(-Delta_B gamma)
  double local_lhs_lemma = 0.0;  // integral over B of rho^(1+2/d)
  GapReport gap;
  UncertaintyReport uncertainty;  // of sqrt(rho) on the ball
  double epsilon = 0.0;           // combination parameter from measured data
  double ratio = 0.0;             // local_kinetic / local_lhs_lemma
  double apriori_constant = 0.0;  // epsilon/((1+epsilon) C_u M^(2/d))
  bool holds = false;
};

// Replays the per-ball inequality with measured constants: Hoffmann-
// Ostenhof route plus exclusion route combined with the epsilon that makes
// the volume terms cancel exactly. Throws MassOutOfWindow or GapUndefined.
BallReport verify_ball_lemma(const Ensemble& e, const Ball& ball,
                             const CertificateConfig& cfg = {});

struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;  // link asserts lhs >= rhs up to relative slack
  bool holds = false;
};

struct Certificate {
  enum class Mode { small_mass, covering };
  Mode mode = Mode::small_mass;
  double total_mass = 0.0;
  double global_kinetic = 0.0;  // Tr(-Delta gamma)
  double global_rhs = 0.0;      // integral of rho^(1+2/d)
  std::vector<BallReport> ball_reports;
  int multiplicity = 0;
  bool covered = false;
  double min_ratio = 0.0;         // covering branch
  double sobolev_constant = 0.0;  // small-mass branch, measured on sqrt(rho)
  std::vector<ChainLink> chain;
  double effective_constant = 0.0;
  bool verdict = false;
};

// Full replay on one ensemble: small-mass branch when the total mass is at
// most the target, covering branch otherwise. The verdict is true iff every
// chain link holds at the configured slack (and the covering covers).
Certificate build_certificate(const Ensemble& e,
                              const CertificateConfig& cfg = {});

struct FamilyBound {
  double orthogonal_quotient = 0.0;  // quotient of the family as given
  double copies_quotient = 0.0;      // quotient of N copies of the first
  double ratio = 0.0;                // orthogonal / copies
};

// Compares the kinetic quotient of a normalized family against the same
// quotient for N copies of its first member, which collapses by N^(-2/d).
// Orthogonality is deliberately not required here.
FamilyBound normalized_family_bound(const std::vector<Field>& family);

}  // namespace lt
