#pragma once

#include <vector>

#include "mpsbounds/types.hpp"

namespace mpsbounds {

// One site of an MPS: d Kraus matrices, each D x D.
struct SiteTensor {
  std::vector<Mat> kraus;

  SiteTensor() = default;
  explicit SiteTensor(std::vector<Mat> k);

  int phys_dim() const { return static_cast<int>(kraus.size()); }
  int bond_dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }
  bool is_zero(double tol = 0.0) const;

  const Mat& operator[](int i) const { return kraus[i]; }
};

// Periodic-boundary MPS. A uniform state stores a single site tensor that is
// logically replicated to all N sites.
struct MPS {
  std::vector<SiteTensor> sites;
  int n_sites = 0;
  bool uniform = true;

  const SiteTensor& site(int n) const { return uniform ? sites[0] : sites[n]; }
  int phys_dim() const { return sites[0].phys_dim(); }
  int bond_dim() const { return sites[0].bond_dim(); }
};

inline constexpr long kDefaultStateVectorCap = 1L << 20;
inline constexpr long kDefaultRegionCap = 1L << 14;

MPS build_uniform(const std::vector<Mat>& kraus, int n_sites);
MPS build_site_dependent(std::vector<SiteTensor> sites);

// Coefficient of |i_1 ... i_N> is tr(A_{i_1}[1] ... A_{i_N}[N]); i_1 indexes
// the most significant base-d digit.
Vec to_state_vector(const MPS& mps, long cap = kDefaultStateVectorCap);

// A_i -> X A_i X^{-1} on every site. The contracted state is unchanged.
MPS apply_gauge(const MPS& mps, const Mat& x, double cond_limit = 1e8);

// Group p consecutive sites: physical dimension d^p, Kraus matrices all
// length-p products, blocked index (i_1 ... i_p) base-d with i_1 leading.
MPS block_sites(const MPS& mps, int p);

// Uniform MPS for the fractional-magnetization product of translated period-p
// patterns with q spins down per period. Kraus index 0 is spin up.
// The shift |i><i+1| wraps cyclically (|p><1| included); the open-ended
// variant contracts to zero under the trace.
MPS toy_fractional_mps(int p, int q, int n_sites);

// All d^L ordered Kraus products over sites [first, first+L), string index
// with the first site's index most significant.
std::vector<Mat> region_products(const MPS& mps, int first, int len, long cap = kDefaultRegionCap);

}  // namespace mpsbounds
