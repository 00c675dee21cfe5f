#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mpsbounds/entanglement.hpp"
#include "mpsbounds/mps.hpp"
#include "mpsbounds/rng.hpp"
#include "mpsbounds/types.hpp"

namespace mpsbounds {

// Primitive unital channel used to cap a chain: V_1 is a scaled diagonal
// unitary with incommensurable phases (square roots of primes mod 2 pi), V_2 a
// scaled dense random unitary, V_i = 0 beyond. Both carry 1/sqrt(2) so that
// sum_i V_i^dag V_i = 1.
struct BoundaryChannel {
  std::vector<Mat> kraus;
  std::uint64_t seed = 0;
  double gap = 0.0;       // 1 - |lambda_2|
  double lambda2 = 0.0;

  int bond_dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }
  int phys_dim() const { return static_cast<int>(kraus.size()); }
};

BoundaryChannel make_boundary_channel(int bond_dim, int phys_dim, std::uint64_t seed,
                                      int max_retries = 20);

// Non-uniform chain whose first-L reduced density converges to the
// fixed-point formula of `a` with middle Lambda: sites 1..L carry `a`,
// the tail carries C_k = V_k, and the final site carries B_j = V_j sqrt(Lambda)
// so that the fixed-point weight enters the region from the left.
struct BoundaryState {
  MPS mps;
  int region_len = 0;
  RealVec lambda;
  BoundaryChannel channel;
};

BoundaryState build_boundary_state(const SiteTensor& a, const RealVec& lambda, int region_len,
                                   int n_sites, const BoundaryChannel& channel);

struct BoundaryDensityCheck {
  double error_1norm = 0.0;
  double predicted_rate = 0.0;  // |lambda_2| of the tail channel
};

// || rho_{1..L}(N) - rho_target ||_1 against the fixed-point formula.
BoundaryDensityCheck verify_boundary_density(const BoundaryState& state,
                                             long cap = kDefaultRegionCap);

struct BoundarySweep {
  std::vector<int> n_values;
  std::vector<double> errors;
  double fitted_rate = 0.0;     // exp(slope) of log error vs N
  double predicted_rate = 0.0;
  double final_error = 0.0;
};

BoundarySweep boundary_error_sweep(const SiteTensor& a, const RealVec& lambda, int region_len,
                                   const BoundaryChannel& channel, const std::vector<int>& n_values,
                                   long cap = kDefaultRegionCap);

// Gram deviation of the boundary-condition map Gamma_n for a Hermitian
// unital channel: || Gamma_n^* Gamma_n - 1/D ||_op and the D |lambda_2|^n
// bound it must obey.
struct GramDeviation {
  int n = 0;
  double deviation = 0.0;
  double bound = 0.0;
  double lambda2 = 0.0;
};

GramDeviation gram_deviation(const SiteTensor& a, int n, double herm_tol = 1e-10);

// Adjoint-closed Kraus set {U, U^dag, V, V^dag}/2 with Haar U, V: a Hermitian
// doubly stochastic channel for the Gram-deviation checks.
SiteTensor random_hermitian_channel(int bond_dim, Rng& rng);

struct InjectivityReport {
  int bond_dim = 0;
  int phys_dim = 0;
  int trials = 0;
  int l_min = 0;                  // ceil(log_d D^2)
  double paper_l = 0.0;           // 2 log D / log d
  std::map<int, int> histogram;   // injectivity length -> count
  std::vector<std::uint64_t> failures;  // seeds that missed l_min
};

InjectivityReport injectivity_survey(int bond_dim, int phys_dim, int trials, std::uint64_t seed);

}  // namespace mpsbounds
