#include "mpsbounds/entanglement.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mpsbounds/linalg.hpp"
#include "mpsbounds/transfer.hpp"

namespace mpsbounds {

ReducedDensity::ReducedDensity(Mat rho, int L, double clip_tol) : region_len(L) {
  if (rho.rows() != rho.cols()) throw InputError("reduced density must be square");
  double herm_defect = (rho - rho.adjoint()).norm();
  if (herm_defect > 1e-8 * std::max(1.0, rho.norm()))
    throw InputError("reduced density is not Hermitian");
  matrix = hermitize(std::move(rho));
  double tr = matrix.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) matrix /= tr;
  eigenvalues = hermitian_eigs_desc(matrix);
  for (int i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) < -clip_tol)
      throw InputError(fmt::format("reduced density has eigenvalue {:.3e} below -{:g}",
                                   eigenvalues(i), clip_tol));
    if (eigenvalues(i) < 0) eigenvalues(i) = 0.0;
  }
}

namespace {

Mat site_transfer(const MPS& mps, int n) { return transfer_operator(mps.site(n)).matrix; }

// Product of the transfer matrices of sites [first, last).
Mat environment_matrix(const MPS& mps, int first, int last) {
  const int dim2 = mps.bond_dim() * mps.bond_dim();
  if (mps.uniform) return mat_power(site_transfer(mps, 0), last - first);
  Mat prod = Mat::Identity(dim2, dim2);
  for (int n = first; n < last; ++n) prod = prod * site_transfer(mps, n);
  return prod;
}

Mat products_as_columns(const std::vector<Mat>& prods) {
  const long d2 = prods[0].size();
  Mat phi(d2, static_cast<long>(prods.size()));
  for (size_t i = 0; i < prods.size(); ++i)
    phi.col(static_cast<long>(i)) = Eigen::Map<const Vec>(prods[i].data(), d2);
  return phi;
}

RealVec positive_spectrum(const Mat& kernel, double tol = 1e-13) {
  auto ev = sorted_eigenvalues(kernel);
  std::vector<double> vals;
  for (const auto& z : ev)
    if (z.real() > tol) vals.push_back(z.real());
  RealVec out(static_cast<long>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<long>(i)) = vals[i];
  return out;
}

}  // namespace

ReducedDensity reduced_density(const MPS& mps, int L, long cap) {
  if (L < 0 || L > mps.n_sites) throw InputError("region length out of range");
  if (L == 0) return ReducedDensity(Mat::Identity(1, 1), 0);
  const int bond = mps.bond_dim();
  auto prods = region_products(mps, 0, L, cap);
  Mat phi = products_as_columns(prods);
  Mat env = environment_matrix(mps, L, mps.n_sites);
  Mat kernel = env_rearrange(env, bond);
  Mat rho = phi.transpose() * kernel * phi.conjugate();
  double tr = rho.trace().real();
  if (!(std::abs(tr) > 0)) throw InputError("reduced density of a vanishing state");
  return ReducedDensity(rho / tr, L);
}

Mat region_density_unnormalized(const SiteTensor& a, const Mat& middle, int L, long cap) {
  MPS chain = build_uniform(a.kraus, std::max(L, 1));
  auto prods = region_products(chain, 0, L, cap);
  // entries tr(P_j^dag M P_i) = <M^{dag/2}... : Gram with rows vec(sqrt(M) P_i)
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(middle));
  Mat sqrt_m = es.eigenvectors() *
               es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
               es.eigenvectors().adjoint();
  const long d2 = a.bond_dim() * a.bond_dim();
  Mat y(d2, static_cast<long>(prods.size()));
  for (size_t i = 0; i < prods.size(); ++i) {
    Mat scaled = sqrt_m * prods[i];
    y.col(static_cast<long>(i)) = Eigen::Map<const Vec>(scaled.data(), d2);
  }
  return (y.adjoint() * y).transpose();
}

ReducedDensity reduced_density_thermo(const SiteTensor& a, const RealVec& lambda, int L, long cap) {
  if (L < 1) throw InputError("region length must be >= 1");
  Mat lam = lambda.cast<Complex>().asDiagonal();
  Mat rho = region_density_unnormalized(a, lam, L, cap);
  double tr = rho.trace().real();
  return ReducedDensity(rho / tr, L);
}

RealVec region_spectrum(const MPS& mps, int L) {
  if (!mps.uniform && L > mps.n_sites) throw InputError("region length out of range");
  const int bond = mps.bond_dim();
  Mat env = environment_matrix(mps, L, mps.n_sites);
  Mat c = env_rearrange(env, bond);
  Mat ml = environment_matrix(mps, 0, L);
  Mat g = gram_rearrange(ml, bond);
  // rho = Phi^T C conj(Phi); its nonzero spectrum equals that of
  // conj(G) C with G = Phi Phi^dagger.
  Mat kernel = g.conjugate() * c;
  RealVec eigs = positive_spectrum(kernel);
  double total = eigs.sum();
  return eigs / total;
}

RealVec region_spectrum_thermo(const SiteTensor& a, const RealVec& lambda, int L) {
  const int bond = a.bond_dim();
  Mat lam = lambda.cast<Complex>().asDiagonal();
  Vec one = Eigen::Map<const Vec>(Mat::Identity(bond, bond).eval().data(), bond * bond);
  Vec lvec = Eigen::Map<const Vec>(lam.data(), bond * bond);
  Mat env = one * lvec.adjoint();  // rank-one fixed-point environment
  Mat c = env_rearrange(env, bond);
  MPS chain = build_uniform(a.kraus, std::max(L, 1));
  Mat ml = environment_matrix(chain, 0, L);
  Mat g = gram_rearrange(ml, bond);
  Mat kernel = g.conjugate() * c;
  RealVec eigs = positive_spectrum(kernel);
  double total = eigs.sum();
  return eigs / total;
}

double von_neumann_entropy(const RealVec& eigs) {
  double s = 0.0;
  for (int i = 0; i < eigs.size(); ++i)
    if (eigs(i) > 0) s -= eigs(i) * std::log(eigs(i));
  return s;
}

double renyi_entropy(const RealVec& eigs, double alpha) {
  if (!(alpha > 0) || alpha == 1.0) throw InputError("Renyi entropy needs alpha > 0, alpha != 1");
  double sum = 0.0;
  for (int i = 0; i < eigs.size(); ++i)
    if (eigs(i) > 0) sum += std::pow(eigs(i), alpha);
  return std::log(sum) / (1.0 - alpha);
}

EntropyReport entropy(const ReducedDensity& rho, const std::vector<double>& alphas) {
  EntropyReport rep;
  rep.von_neumann = von_neumann_entropy(rho.eigenvalues);
  for (double a : alphas) rep.renyi[a] = renyi_entropy(rho.eigenvalues, a);
  return rep;
}

RealVec asymptotic_spectrum(const CanonicalBlock& block) {
  const int dim = block.bond_dim();
  RealVec out(dim * dim);
  int k = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(k++) = block.lambda(i) * block.lambda(j);
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

double cross_purity(const ReducedDensity& r, const ReducedDensity& s) {
  if (r.matrix.rows() != s.matrix.rows()) throw InputError("cross_purity: dimension mismatch");
  return (r.matrix * s.matrix).trace().real();
}

Theorem1Report theorem1_verify(const MPS& mps, Spin j, const std::vector<int>& region_lens,
                               const Theorem1Options& opts) {
  Theorem1Report rep;
  rep.symmetry = symmetry_report(mps, j, opts.sym_tol);
  if (opts.p_override > 0) {
    rep.symmetry.p = opts.p_override;
    rep.symmetry.q = 0;
  } else if (opts.generator != nullptr) {
    // re-run the symmetry pieces against the supplied generator
    double m = magnetization(mps, j, opts.generator);
    double res = u1_invariance(mps, j, default_g_samples(), opts.generator);
    rep.symmetry.m = m;
    rep.symmetry.invariance_residual = res;
    rep.symmetry.symmetric = res <= opts.sym_tol;
    if (rep.symmetry.symmetric) {
      Fraction f = fractionalize(m, j);
      rep.symmetry.p = f.p;
      rep.symmetry.q = f.q;
    } else {
      rep.symmetry.p = 1;
      rep.symmetry.q = 0;
    }
  }
  const int p = rep.symmetry.p;
  const int gp = std::max(1, rep.symmetry.gamma * p);
  rep.log_p = std::log(static_cast<double>(p));

  for (int L : region_lens) {
    if (L % gp != 0)
      throw InputError(fmt::format("region length {} is not a multiple of gamma*p = {}", L, gp));
    RealVec eigs = region_spectrum(mps, L);
    Theorem1Entry e;
    e.region_len = L;
    e.entropy = von_neumann_entropy(eigs);
    e.margin = e.entropy - rep.log_p;
    e.pass = e.margin >= -opts.pass_tol;
    rep.entries.push_back(e);
    rep.all_pass = rep.all_pass && e.pass;
  }
  return rep;
}

}  // namespace mpsbounds
