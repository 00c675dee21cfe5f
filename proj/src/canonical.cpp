#include "mpsbounds/canonical.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "mpsbounds/linalg.hpp"

namespace mpsbounds {

namespace {

using Mats = std::vector<Mat>;

Mat transfer_matrix(const Mats& a) {
  const int bond = static_cast<int>(a[0].rows());
  Mat m = Mat::Zero(bond * bond, bond * bond);
  for (const auto& k : a) m += map_matrix(k, k);
  return m;
}

Mat adjoint_transfer_matrix(const Mats& a) {
  const int bond = static_cast<int>(a[0].rows());
  Mat m = Mat::Zero(bond * bond, bond * bond);
  for (const auto& k : a) m += map_matrix(k.adjoint(), k.adjoint());
  return m;
}

Mat unvec(const Vec& v, int dim) { return Eigen::Map<const Mat>(v.data(), dim, dim); }

// Component of the identity in the eigenvalue-1 spectral subspace of the
// map whose matrix is m. Coincides with the Cesaro mean of E^n(1), so the
// result is positive semidefinite up to roundoff.
Mat fixed_point_projection_of_identity(const Mat& m, int dim, double eig_one_tol) {
  Eigen::ComplexEigenSolver<Mat> es(m, true);
  if (es.info() != Eigen::Success) throw CanonicalizationError("transfer eigensolve failed");
  Vec one = Eigen::Map<const Vec>(Mat::Identity(dim, dim).eval().data(), dim * dim);
  Vec coeffs = es.eigenvectors().partialPivLu().solve(one);
  Vec acc = Vec::Zero(dim * dim);
  for (int k = 0; k < es.eigenvalues().size(); ++k)
    if (std::abs(es.eigenvalues()(k) - Complex(1, 0)) <= eig_one_tol)
      acc += coeffs(k) * es.eigenvectors().col(k);
  return hermitize(unvec(acc, dim));
}

struct EigBasis {
  Mat vectors;  // columns, descending eigenvalue
  RealVec values;
  int rank = 0;
};

EigBasis psd_support(const Mat& h, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw CanonicalizationError("support eigensolve failed");
  EigBasis b;
  const int n = static_cast<int>(h.rows());
  b.vectors = Mat(n, n);
  b.values = RealVec(n);
  for (int i = 0; i < n; ++i) {
    b.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    b.values(i) = es.eigenvalues()(n - 1 - i);
  }
  double top = std::max(0.0, b.values(0));
  for (int i = 0; i < n; ++i)
    if (b.values(i) > rank_tol * top) ++b.rank;
  return b;
}

Mats window(const Mats& a, int offset, int size) {
  Mats out;
  out.reserve(a.size());
  for (const auto& k : a) out.push_back(k.block(offset, offset, size, size));
  return out;
}

Mats conjugate(const Mats& a, const Mat& x, const Mat& xinv) {
  Mats out;
  out.reserve(a.size());
  for (const auto& k : a) out.push_back(x * k * xinv);
  return out;
}

struct RawBlock {
  Mats kraus;
  RealVec lambda;
  int period = 1;
  double amplitude = 1.0;  // product of sqrt(spectral radius) along the splits
};

struct Splitter {
  CanonicalizeOptions opts;
  double top_amplitude = 1.0;
  int dropped = 0;

  // Decomposes `a` into canonical blocks. On return `gauge` satisfies
  // gauge * a_i * gauge^{-1} = hierarchically triangular with the canonical
  // blocks (times their amplitudes) on the diagonal windows.
  std::vector<RawBlock> run(Mats a, double amplitude, Mat& gauge, int depth) {
    const int dim = static_cast<int>(a[0].rows());
    gauge = Mat::Identity(dim, dim);
    if (depth > 4 * dim + 8)
      throw CanonicalizationError("block splitting did not terminate");

    double radius = spectral_radius(transfer_matrix(a));
    double amp = amplitude * std::sqrt(radius);
    if (!(amp > opts.drop_radius * top_amplitude)) {
      ++dropped;
      return {};
    }
    double s = 1.0 / std::sqrt(radius);
    for (auto& k : a) k *= s;

    // Right support: a PSD fixed point of E with maximal support. A strict
    // support makes that subspace invariant, so the tensor is block upper
    // triangular in its eigenbasis.
    Mat m = transfer_matrix(a);
    Mat sr = fixed_point_projection_of_identity(m, dim, opts.eig_one_tol);
    EigBasis br = psd_support(sr, opts.rank_tol);
    if (br.rank == 0) throw CanonicalizationError("vanishing right fixed-point support");
    if (br.rank < dim) return split_two(a, amp, gauge, br.vectors, br.rank, depth);

    // Left support, same reasoning for the adjoint map (lower triangular).
    Mat sl = fixed_point_projection_of_identity(adjoint_transfer_matrix(a), dim, opts.eig_one_tol);
    EigBasis bl = psd_support(sl, opts.rank_tol);
    if (bl.rank == 0) throw CanonicalizationError("vanishing left fixed-point support");
    if (bl.rank < dim) return split_two(a, amp, gauge, bl.vectors, bl.rank, depth);

    // Both supports full: enforce condition (i) with X = S_R^{1/2}.
    Mat x_half = br.vectors * br.values.cwiseMax(0.0).cwiseSqrt().asDiagonal() * br.vectors.adjoint();
    Mat x_half_inv = br.vectors *
                     br.values.cwiseMax(1e-300).cwiseSqrt().cwiseInverse().asDiagonal() *
                     br.vectors.adjoint();
    a = conjugate(a, x_half_inv, x_half);
    Mat accum = x_half_inv;

    // Degenerate fixed-point space means several irreducible components on
    // full support; any non-scalar Hermitian fixed point splits them along
    // its spectral projectors, and there the tensor is exactly block
    // diagonal.
    m = transfer_matrix(a);
    Eigen::ComplexEigenSolver<Mat> es(m, true);
    if (es.info() != Eigen::Success) throw CanonicalizationError("transfer eigensolve failed");
    std::vector<int> fixed_idx;
    for (int k = 0; k < es.eigenvalues().size(); ++k)
      if (std::abs(es.eigenvalues()(k) - Complex(1, 0)) <= opts.eig_one_tol) fixed_idx.push_back(k);
    if (fixed_idx.empty()) throw CanonicalizationError("no fixed point found at unit radius");

    if (fixed_idx.size() > 1) {
      Mat h = pick_nonscalar_fixed_point(es, fixed_idx, dim);
      Eigen::SelfAdjointEigenSolver<Mat> hs(h);
      int cut = largest_gap_cut(hs.eigenvalues());
      Mat u = hs.eigenvectors();
      Mat sub_gauge;
      Mats rotated = conjugate(a, u.adjoint(), u);
      auto blocks = split_two(rotated, amp, sub_gauge, Mat::Identity(dim, dim), cut, depth);
      gauge = sub_gauge * u.adjoint() * accum;
      return blocks;
    }

    // Irreducible: diagonalize the unique left fixed point to get Lambda.
    Mat ml = adjoint_transfer_matrix(a);
    Eigen::ComplexEigenSolver<Mat> esl(ml, true);
    int best = 0;
    for (int k = 1; k < esl.eigenvalues().size(); ++k)
      if (std::abs(esl.eigenvalues()(k) - Complex(1, 0)) <
          std::abs(esl.eigenvalues()(best) - Complex(1, 0)))
        best = k;
    Mat lam = hermitize(unvec(esl.eigenvectors().col(best), dim));
    if (lam.trace().real() < 0) lam = -lam;
    lam /= lam.trace().real();
    Eigen::SelfAdjointEigenSolver<Mat> ls(lam);
    RealVec lvals(dim);
    Mat w(dim, dim);
    for (int i = 0; i < dim; ++i) {
      lvals(i) = ls.eigenvalues()(dim - 1 - i);
      w.col(i) = ls.eigenvectors().col(dim - 1 - i);
    }
    if (lvals(dim - 1) <= opts.rank_tol * lvals(0))
      throw CanonicalizationError("left fixed point of an irreducible block is rank deficient");
    a = conjugate(a, w.adjoint(), w);
    gauge = w.adjoint() * accum;

    RawBlock blk;
    blk.kraus = std::move(a);
    blk.lambda = std::move(lvals);
    blk.amplitude = amp;
    auto evs = sorted_eigenvalues(transfer_matrix(blk.kraus));
    blk.period = 0;
    for (const auto& ev : evs)
      if (std::abs(ev) > 1.0 - opts.peripheral_tol) ++blk.period;
    return {std::move(blk)};
  }

  std::vector<RawBlock> split_two(const Mats& a, double amp, Mat& gauge, const Mat& basis,
                                  int cut, int depth) {
    const int dim = static_cast<int>(a[0].rows());
    Mats rotated = conjugate(a, basis.adjoint(), basis);
    Mat g1, g2;
    auto upper = run(window(rotated, 0, cut), amp, g1, depth + 1);
    auto lower = run(window(rotated, cut, dim - cut), amp, g2, depth + 1);
    Mat blk = Mat::Zero(dim, dim);
    blk.block(0, 0, cut, cut) = g1;
    blk.block(cut, cut, dim - cut, dim - cut) = g2;
    gauge = blk * basis.adjoint();
    upper.insert(upper.end(), std::make_move_iterator(lower.begin()),
                 std::make_move_iterator(lower.end()));
    return upper;
  }

  Mat pick_nonscalar_fixed_point(const Eigen::ComplexEigenSolver<Mat>& es,
                                 const std::vector<int>& fixed_idx, int dim) {
    Mat best;
    double best_dev = -1.0;
    for (int idx : fixed_idx) {
      Mat x = unvec(es.eigenvectors().col(idx), dim);
      for (const Mat& h : {hermitize(x), hermitize(Complex(0, 1) * x)}) {
        double nrm = h.norm();
        if (nrm < 1e-14) continue;
        Mat centered = h - (h.trace() / static_cast<double>(dim)) * Mat::Identity(dim, dim);
        double dev = centered.norm() / nrm;
        if (dev > best_dev) {
          best_dev = dev;
          best = h / nrm;
        }
      }
    }
    if (best_dev < 1e-7)
      throw CanonicalizationError("degenerate fixed space without a splitting fixed point");
    return best;
  }

  static int largest_gap_cut(const Eigen::VectorXd& ascending) {
    int cut = 1;
    double best = -1.0;
    for (int i = 0; i + 1 < ascending.size(); ++i) {
      double gap = ascending(i + 1) - ascending(i);
      if (gap > best) {
        best = gap;
        cut = i + 1;
      }
    }
    return cut;
  }
};

double block_condition_residual(const CanonicalBlock& b) {
  const int dim = b.bond_dim();
  Mat right = Mat::Zero(dim, dim);
  Mat left = Mat::Zero(dim, dim);
  Mat lam = b.lambda.cast<Complex>().asDiagonal();
  for (const auto& k : b.tensor.kraus) {
    right += k * k.adjoint();
    left += k.adjoint() * lam * k;
  }
  return std::max((right - Mat::Identity(dim, dim)).norm(), (left - lam).norm());
}

}  // namespace

CanonicalForm canonicalize(const SiteTensor& tensor, const CanonicalizeOptions& opts) {
  if (tensor.is_zero()) throw InputError("canonicalize: zero tensor");
  double top_radius = spectral_radius(transfer_matrix(tensor.kraus));
  if (!(top_radius > 0))
    throw CanonicalizationError("transfer operator has zero spectral radius (state vanishes)");

  Splitter splitter;
  splitter.opts = opts;
  splitter.top_amplitude = std::sqrt(top_radius);

  Mat gauge;
  auto raw = splitter.run(tensor.kraus, 1.0, gauge, 0);
  if (raw.empty()) throw CanonicalizationError("no blocks survived the decomposition");

  double amp_max = 0.0;
  for (const auto& b : raw) amp_max = std::max(amp_max, b.amplitude);

  CanonicalForm cf;
  cf.gauge = std::move(gauge);
  cf.dropped_nilpotent = splitter.dropped;
  for (auto& b : raw) {
    CanonicalBlock blk;
    blk.tensor = SiteTensor(std::move(b.kraus));
    blk.lambda = std::move(b.lambda);
    blk.period = b.period;
    blk.scale = b.amplitude / amp_max;
    cf.blocks.push_back(std::move(blk));
  }

  // Same-state blocks collapse into one entry; the mixed transfer operator
  // reaching the spectral radius of one flags equality (up to a phase).
  double same_state = std::pow(opts.merge_overlap, 1.0 / opts.merge_horizon);
  for (size_t r = 0; r < cf.blocks.size(); ++r) {
    for (size_t s = r + 1; s < cf.blocks.size();) {
      bool merged = false;
      if (cf.blocks[r].bond_dim() == cf.blocks[s].bond_dim() &&
          std::abs(cf.blocks[r].scale - cf.blocks[s].scale) < 1e-9) {
        auto mixed = transfer_operator(cf.blocks[r].tensor, cf.blocks[s].tensor);
        if (spectral_radius(mixed.matrix) >= same_state) {
          cf.blocks[r].multiplicity += cf.blocks[s].multiplicity;
          cf.blocks.erase(cf.blocks.begin() + static_cast<long>(s));
          merged = true;
        }
      }
      if (!merged) ++s;
    }
  }

  // Thermodynamic mixing weights: among the blocks of maximal amplitude each
  // contributes its peripheral multiplicity, repeated copies included.
  double weight_sum = 0.0;
  for (const auto& b : cf.blocks)
    if (b.scale > 1.0 - 1e-9) weight_sum += static_cast<double>(b.period * b.multiplicity);
  for (auto& b : cf.blocks)
    b.weight = (b.scale > 1.0 - 1e-9) ? b.period * b.multiplicity / weight_sum : 0.0;

  std::stable_sort(cf.blocks.begin(), cf.blocks.end(),
                   [](const CanonicalBlock& x, const CanonicalBlock& y) {
                     if (x.weight != y.weight) return x.weight > y.weight;
                     if (x.period != y.period) return x.period > y.period;
                     return x.bond_dim() > y.bond_dim();
                   });

  cf.residual = 0.0;
  for (const auto& b : cf.blocks) cf.residual = std::max(cf.residual, block_condition_residual(b));
  return cf;
}

std::vector<int> detect_period(const CanonicalForm& cf, double tol) {
  std::vector<int> periods;
  periods.reserve(cf.blocks.size());
  for (const auto& b : cf.blocks)
    periods.push_back(spectrum(transfer_operator(b.tensor), tol).period);
  return periods;
}

CanonicalBlock random_injective_block(int bond_dim, int phys_dim, Rng& rng) {
  std::vector<Mat> kraus;
  kraus.reserve(phys_dim);
  for (int i = 0; i < phys_dim; ++i) kraus.push_back(rng.gaussian(bond_dim, bond_dim));
  CanonicalForm cf = canonicalize(SiteTensor(kraus));
  if (!cf.injective())
    throw CanonicalizationError(
        fmt::format("random tensor (D={}, d={}) failed to give a single injective block",
                    bond_dim, phys_dim));
  return cf.blocks[0];
}

}  // namespace mpsbounds
