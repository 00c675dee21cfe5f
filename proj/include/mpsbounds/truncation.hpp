#pragma once

#include <optional>

#include "mpsbounds/canonical.hpp"
#include "mpsbounds/entanglement.hpp"
#include "mpsbounds/types.hpp"

namespace mpsbounds {

// Bond projection of a canonical block onto the leading D~ directions of its
// (descending) fixed point. The projected tensor is stored compressed to
// D~ x D~; delta = tr(Lambda - Lambda~) is the discarded weight.
struct TruncationResult {
  SiteTensor projected;
  RealVec lambda_t;
  double delta = 0.0;
  int bond_dim_t = 0;
};

TruncationResult project_bond(const CanonicalBlock& block, int bond_dim_t);

// Distance bounds for || rho_A^L - rho_A~^L ||:
//   two-norm: 2 tr(Lambda~^{1/2}) sqrt(L) delta^{1/4} + (2L+3) delta
//   one-norm: 2 sqrt(2) D~ sqrt(L) delta^{1/4} + (2L+3) delta
struct TruncationBounds {
  double bound_2 = 0.0;
  double bound_1 = 0.0;
};

TruncationBounds bounds(double delta, int region_len, int bond_dim_t, double tr_sqrt_lambda_t);

struct TruncationReport {
  int bond_dim = 0;
  int bond_dim_t = 0;
  int region_len = 0;
  double delta = 0.0;
  double bound_2 = 0.0;
  double bound_1 = 0.0;
  double actual_2 = 0.0;
  double actual_1 = 0.0;
  // intermediates of the proof chain
  double phi_trace = 0.0;        // tr E~^L(Lambda), >= 1 - 2 L delta
  double lemma9_lhs = 0.0;       // || E~^L(Lambda) - Lambda ||_1
  double lemma9_rhs = 0.0;       // 2 L delta
  double sigma_dist_2 = 0.0;     // || sigma_{A,P} - phi_A~ ||_2
  double sigma_dist_1 = 0.0;
  bool pass_2 = false;
  bool pass_1 = false;
  bool pass_lemma9 = false;
  bool pass_lemma10_2 = false;   // actual <= sigma_dist + (2L+3) delta
  bool pass_lemma10_1 = false;
};

// Builds rho_A^L and rho_A~^L from the fixed-point formula, measures both
// Schatten distances and all intermediate inequalities of the bound chain.
TruncationReport verify_truncation(const CanonicalBlock& block, int bond_dim_t, int region_len,
                                   long cap = kDefaultRegionCap, double slack = 1e-12);

// log delta <= (1-alpha)/alpha (S_alpha - log(D~/(1-alpha))), 0 < alpha < 1.
double log_delta_bound(double s_alpha, double alpha, int bond_dim_t);

struct Theorem2Options {
  double epsilon = 0.5;
  double alpha = 1.0 / 6.0;
  int env_tail = 0;         // extra boundary sites; 0 picks from the channel gap
  std::uint64_t channel_seed = 1234;
  long cap = kDefaultRegionCap;
};

struct Theorem2Report {
  int region_len = 0;
  int bond_dim = 0;
  int bond_dim_t = 0;
  double s_alpha = 0.0;             // Renyi entropy of the asymptotic spectrum
  double hypothesis_rhs = 0.0;      // (4/5) log eps + (1/10)(L log d - log L) - log(d/4)
  bool hypothesis_holds = false;
  double delta = 0.0;
  double epsilon_prime = 0.0;       // 4 sqrt(2) d^{L/2} sqrt(L) delta^{1/4}
  double formula_distance_1 = 0.0;  // || rho_A^L - rho_A~^L ||_1 from the fixed-point formula
  double boundary_distance_1 = 0.0; // same, measured on the constructed boundary state
  double boundary_n_sites = 0.0;
  double log_delta = 0.0;
  double log_delta_rhs = 0.0;
  bool distance_below_bound = false;   // formula_distance_1 <= epsilon_prime
  bool distance_below_epsilon = false; // boundary_distance_1 < epsilon
  bool log_delta_holds = false;
  bool first_term_dominates = false;   // (2L+3) delta <= 2 sqrt(2) d^{L/2} sqrt(L) delta^{1/4}
};

// The low-Renyi-entropy truncation pipeline: evaluate the entropy hypothesis,
// truncate to D~ <= d^{(L-1)/2}, realize the truncated state with a primitive
// boundary and compare every link of the inequality chain.
Theorem2Report theorem2_pipeline(const MPS& mps, int region_len, const Theorem2Options& opts = {});

}  // namespace mpsbounds
