#pragma once

#include <vector>

#include "mpsbounds/mps.hpp"
#include "mpsbounds/rng.hpp"
#include "mpsbounds/transfer.hpp"
#include "mpsbounds/types.hpp"

namespace mpsbounds {

struct CanonicalizeOptions {
  double rank_tol = 1e-10;        // support ranks, relative to the top eigenvalue
  double eig_one_tol = 1e-8;      // |lambda - 1| window for fixed-point selection
  double peripheral_tol = 1e-8;   // peripheral band for the block period
  double drop_radius = 1e-12;     // sub-blocks below this relative amplitude are nilpotent junk
  double merge_overlap = 0.99;    // blocks are the same state if |lambda_max|^50 >= this
  int merge_horizon = 50;
};

// One irreducible block of the decomposition:
//   sum_i A_i A_i^dagger = 1,  sum_i A_i^dagger Lambda A_i = Lambda,
// Lambda diagonal positive, descending, trace one. `period` counts the
// peripheral eigenvalues of the block channel. `scale` is the block's
// amplitude relative to the dominant one (1 for every block that survives in
// the large-N limit); `multiplicity` counts repeated copies merged into this
// entry.
struct CanonicalBlock {
  SiteTensor tensor;
  RealVec lambda;
  int period = 1;
  double weight = 0.0;
  double scale = 1.0;
  int multiplicity = 1;

  int bond_dim() const { return tensor.bond_dim(); }
};

struct CanonicalForm {
  std::vector<CanonicalBlock> blocks;
  Mat gauge;            // X with X A_i X^{-1} block-triangular, canonical diagonal blocks
  double residual = 0;  // worst defect of conditions (i) and (ii) over blocks
  int dropped_nilpotent = 0;

  bool injective() const { return blocks.size() == 1 && blocks[0].period == 1; }
};

CanonicalForm canonicalize(const SiteTensor& tensor, const CanonicalizeOptions& opts = {});

// Peripheral count of each block's channel.
std::vector<int> detect_period(const CanonicalForm& cf, double tol = kDefaultPeripheralTol);

// Gaussian tensor pushed through canonicalize; generically a single injective
// block. Throws if the draw is degenerate (measure-zero event).
CanonicalBlock random_injective_block(int bond_dim, int phys_dim, Rng& rng);

}  // namespace mpsbounds
