#pragma once

#include <map>
#include <vector>

#include "mpsbounds/canonical.hpp"
#include "mpsbounds/mps.hpp"
#include "mpsbounds/symmetry.hpp"
#include "mpsbounds/types.hpp"

namespace mpsbounds {

struct ReducedDensity {
  Mat matrix;             // Hermitian, PSD, trace one
  int region_len = 0;
  RealVec eigenvalues;    // descending, clipped at zero

  // Validates Hermiticity/trace, clips eigenvalues in [-clip_tol, 0) to zero
  // and rejects anything more negative.
  ReducedDensity(Mat rho, int L, double clip_tol = 1e-10);
};

// Exact reduced density of the first L sites with the environment contracted
// site by site (matrix power of the transfer operator for uniform states).
// No thermodynamic shortcut.
ReducedDensity reduced_density(const MPS& mps, int L, long cap = kDefaultRegionCap);

// Fixed-point environment form: entries tr(A^dag_{j_L} ... A^dag_{j_1} Lambda
// A_{i_1} ... A_{i_L}) for a canonical tensor with left fixed point Lambda,
// trace-normalized. This is exact in the large-N limit of an injective block.
ReducedDensity reduced_density_thermo(const SiteTensor& a, const RealVec& lambda, int L,
                                      long cap = kDefaultRegionCap);

// Same entries, without the final trace normalization (the region weight of a
// truncated tensor is below one and carries information).
Mat region_density_unnormalized(const SiteTensor& a, const Mat& middle, int L,
                                long cap = kDefaultRegionCap);

// Nonzero spectrum of the reduced density without building the d^L-dimensional
// matrix: the eigenvalues of a D^2 x D^2 rearrangement kernel. Works at any L.
RealVec region_spectrum(const MPS& mps, int L);
RealVec region_spectrum_thermo(const SiteTensor& a, const RealVec& lambda, int L);

enum class LogBase { e, two };

struct EntropyReport {
  double von_neumann = 0.0;                // natural log
  std::map<double, double> renyi;          // alpha -> S_alpha, natural log
  LogBase log_base = LogBase::e;
};

double von_neumann_entropy(const RealVec& eigs);
double renyi_entropy(const RealVec& eigs, double alpha);
EntropyReport entropy(const ReducedDensity& rho, const std::vector<double>& alphas = {});

// Descending eigenvalues of Lambda (x) Lambda, the entanglement spectrum an
// injective block approaches for a large region.
RealVec asymptotic_spectrum(const CanonicalBlock& block);

double cross_purity(const ReducedDensity& r, const ReducedDensity& s);

struct Theorem1Options {
  double sym_tol = 1e-8;
  double pass_tol = 1e-6;
  int p_override = 0;          // 0: reconstruct from the magnetization
  const Mat* generator = nullptr;
  long cap = kDefaultRegionCap;
};

struct Theorem1Entry {
  int region_len = 0;
  double entropy = 0.0;
  double margin = 0.0;  // S - log(p)
  bool pass = false;
};

struct Theorem1Report {
  SymmetryReport symmetry;
  double log_p = 0.0;
  std::vector<Theorem1Entry> entries;
  bool all_pass = true;
};

// Fractionalization entropy bound S(rho_L) >= log p for U(1)-symmetric states.
// A state that fails the symmetry test carries no constraint (p = 1) and the
// bound is trivially satisfied; the report says so.
Theorem1Report theorem1_verify(const MPS& mps, Spin j, const std::vector<int>& region_lens,
                               const Theorem1Options& opts = {});

}  // namespace mpsbounds
