#include "mpsbounds/truncation.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mpsbounds/expander.hpp"
#include "mpsbounds/linalg.hpp"
#include "mpsbounds/transfer.hpp"

namespace mpsbounds {

TruncationResult project_bond(const CanonicalBlock& block, int bond_dim_t) {
  const int bond = block.bond_dim();
  if (bond_dim_t < 1 || bond_dim_t > bond)
    throw InputError(fmt::format("target bond dimension {} outside [1, {}]", bond_dim_t, bond));

  TruncationResult out;
  out.bond_dim_t = bond_dim_t;
  std::vector<Mat> projected;
  projected.reserve(block.tensor.phys_dim());
  for (const auto& k : block.tensor.kraus)
    projected.push_back(k.topLeftCorner(bond_dim_t, bond_dim_t));
  out.projected = SiteTensor(std::move(projected));
  out.lambda_t = block.lambda.head(bond_dim_t);
  out.delta = block.lambda.tail(bond - bond_dim_t).sum();
  return out;
}

TruncationBounds bounds(double delta, int region_len, int bond_dim_t, double tr_sqrt_lambda_t) {
  if (delta < 0 || region_len < 0 || bond_dim_t < 0 || tr_sqrt_lambda_t < 0)
    throw InputError("bounds: inputs must be nonnegative");
  double head = std::sqrt(static_cast<double>(region_len)) * std::pow(delta, 0.25);
  double tail = (2.0 * region_len + 3.0) * delta;
  TruncationBounds b;
  b.bound_2 = 2.0 * tr_sqrt_lambda_t * head + tail;
  b.bound_1 = 2.0 * std::sqrt(2.0) * bond_dim_t * head + tail;
  return b;
}

namespace {

// One application of the left-action map X -> sum_i A_i^dag X A_i.
Mat left_action(const std::vector<Mat>& kraus, const Mat& x) {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const auto& k : kraus) out += k.adjoint() * x * k;
  return out;
}

Mat embed(const Mat& small, int dim) {
  Mat out = Mat::Zero(dim, dim);
  out.topLeftCorner(small.rows(), small.cols()) = small;
  return out;
}

}  // namespace

TruncationReport verify_truncation(const CanonicalBlock& block, int bond_dim_t, int region_len,
                                   long cap, double slack) {
  if (region_len < 1) throw InputError("verify_truncation: region length must be >= 1");
  const int bond = block.bond_dim();
  TruncationReport rep;
  rep.bond_dim = bond;
  rep.bond_dim_t = bond_dim_t;
  rep.region_len = region_len;

  TruncationResult trunc = project_bond(block, bond_dim_t);
  rep.delta = trunc.delta;
  double tr_sqrt = trunc.lambda_t.cwiseMax(0.0).cwiseSqrt().sum();
  TruncationBounds b = bounds(trunc.delta, region_len, bond_dim_t, tr_sqrt);
  rep.bound_2 = b.bound_2;
  rep.bound_1 = b.bound_1;

  Mat lam_full = block.lambda.cast<Complex>().asDiagonal();
  Mat lam_t_small = trunc.lambda_t.cast<Complex>().asDiagonal();

  // rho_A^L from (A, Lambda); phi_A~ from (A~, Lambda~), kept unnormalized.
  Mat rho = region_density_unnormalized(block.tensor, lam_full, region_len, cap);
  Mat phi_small = region_density_unnormalized(trunc.projected, lam_t_small, region_len, cap);
  rep.phi_trace = phi_small.trace().real();
  Mat rho_t = phi_small / rep.phi_trace;

  Mat diff = rho - rho_t;
  rep.actual_2 = frobenius_norm(diff);
  rep.actual_1 = trace_norm(diff);
  rep.pass_2 = rep.actual_2 <= rep.bound_2 + slack;
  rep.pass_1 = rep.actual_1 <= rep.bound_1 + slack;

  // || E~^L(Lambda) - Lambda ||_1 <= 2 L delta, E~ the projected left action.
  Mat x = embed(lam_t_small, bond);  // first application of P . P on Lambda
  std::vector<Mat> proj_embedded;
  for (const auto& k : trunc.projected.kraus) proj_embedded.push_back(embed(k, bond));
  for (int step = 0; step < region_len; ++step) x = left_action(proj_embedded, x);
  rep.lemma9_lhs = trace_norm(x - lam_full);
  rep.lemma9_rhs = 2.0 * region_len * trunc.delta;
  rep.pass_lemma9 = rep.lemma9_lhs <= rep.lemma9_rhs + slack;

  // sigma_{A,P}: full products, truncated middle, projected ends.
  Mat proj = Mat::Zero(bond, bond);
  proj.topLeftCorner(bond_dim_t, bond_dim_t) = Mat::Identity(bond_dim_t, bond_dim_t);
  MPS chain = build_uniform(block.tensor.kraus, std::max(region_len, 1));
  auto prods = region_products(chain, 0, region_len, cap);
  Mat lam_t_embedded = embed(lam_t_small, bond);
  Eigen::SelfAdjointEigenSolver<Mat> es(lam_t_embedded);
  Mat sqrt_lt = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                es.eigenvectors().adjoint();
  const long d2 = bond * bond;
  Mat y(d2, static_cast<long>(prods.size()));
  for (size_t i = 0; i < prods.size(); ++i) {
    Mat scaled = sqrt_lt * prods[i] * proj;
    y.col(static_cast<long>(i)) = Eigen::Map<const Vec>(scaled.data(), d2);
  }
  Mat sigma_ap = (y.adjoint() * y).transpose();
  Mat sigma_diff = sigma_ap - phi_small;
  rep.sigma_dist_2 = frobenius_norm(sigma_diff);
  rep.sigma_dist_1 = trace_norm(sigma_diff);
  double lemma10_tail = (2.0 * region_len + 3.0) * trunc.delta;
  rep.pass_lemma10_2 = rep.actual_2 <= rep.sigma_dist_2 + lemma10_tail + slack;
  rep.pass_lemma10_1 = rep.actual_1 <= rep.sigma_dist_1 + lemma10_tail + slack;
  return rep;
}

double log_delta_bound(double s_alpha, double alpha, int bond_dim_t) {
  if (!(alpha > 0) || !(alpha < 1)) throw InputError("log_delta_bound: need 0 < alpha < 1");
  return (1.0 - alpha) / alpha *
         (s_alpha - std::log(static_cast<double>(bond_dim_t) / (1.0 - alpha)));
}

Theorem2Report theorem2_pipeline(const MPS& mps, int region_len, const Theorem2Options& opts) {
  if (!mps.uniform) throw InputError("theorem2_pipeline: uniform input required");
  CanonicalForm cf = canonicalize(mps.site(0));
  if (!cf.injective())
    throw InputError("theorem2_pipeline: input is not an injective MPS");
  const CanonicalBlock& block = cf.blocks[0];
  const int d = mps.phys_dim();
  const int bond = block.bond_dim();
  const double ld = std::log(static_cast<double>(d));

  Theorem2Report rep;
  rep.region_len = region_len;
  rep.bond_dim = bond;

  // Entropy hypothesis at the asymptotic spectrum (large reference region).
  RealVec spec_inf = asymptotic_spectrum(block);
  rep.s_alpha = renyi_entropy(spec_inf, opts.alpha);
  rep.hypothesis_rhs = 0.8 * std::log(opts.epsilon) +
                       0.1 * (region_len * ld - std::log(static_cast<double>(region_len))) -
                       std::log(d / 4.0);
  rep.hypothesis_holds = rep.s_alpha <= rep.hypothesis_rhs;

  // D~ <= d^{(L-1)/2}, as large as the block allows.
  double dt_max = std::pow(static_cast<double>(d), 0.5 * (region_len - 1));
  rep.bond_dim_t = std::max(1, std::min(bond, static_cast<int>(std::floor(dt_max + 1e-9))));

  TruncationResult trunc = project_bond(block, rep.bond_dim_t);
  rep.delta = trunc.delta;
  rep.epsilon_prime = 4.0 * std::sqrt(2.0) * std::pow(static_cast<double>(d), 0.5 * region_len) *
                      std::sqrt(static_cast<double>(region_len)) * std::pow(trunc.delta, 0.25);
  rep.first_term_dominates =
      (2.0 * region_len + 3.0) * trunc.delta <=
      2.0 * std::sqrt(2.0) * std::pow(static_cast<double>(d), 0.5 * region_len) *
              std::sqrt(static_cast<double>(region_len)) * std::pow(trunc.delta, 0.25) +
          1e-15;

  // Distance of the fixed-point formulas; this is the quantity the bound
  // chain controls.
  Mat lam_full = block.lambda.cast<Complex>().asDiagonal();
  Mat lam_t = trunc.lambda_t.cast<Complex>().asDiagonal();
  Mat rho = region_density_unnormalized(block.tensor, lam_full, region_len, opts.cap);
  Mat phi = region_density_unnormalized(trunc.projected, lam_t, region_len, opts.cap);
  double phi_tr = phi.trace().real();
  rep.formula_distance_1 = trace_norm(rho - (phi_tr > 0 ? (phi / phi_tr).eval() : phi));
  rep.distance_below_bound = rep.formula_distance_1 <= rep.epsilon_prime + 1e-12;

  // Realize the truncated state with a primitive boundary and measure there.
  // The channel construction needs at least two bond directions; at D~ = 1
  // the truncated state is a product state and the formula distance is final.
  if (rep.bond_dim_t >= 2) {
    BoundaryChannel ch = make_boundary_channel(rep.bond_dim_t, d, opts.channel_seed);
    int tail = opts.env_tail;
    if (tail <= 0)
      tail = std::max(20, static_cast<int>(std::ceil(40.0 / std::max(ch.gap, 0.05))));
    int n_sites = region_len + 1 + tail;
    auto bstate = build_boundary_state(trunc.projected, trunc.lambda_t, region_len, n_sites, ch);
    ReducedDensity realized = reduced_density(bstate.mps, region_len, opts.cap);
    rep.boundary_distance_1 = trace_norm(rho - realized.matrix);
    rep.boundary_n_sites = n_sites;
  } else {
    rep.boundary_distance_1 = rep.formula_distance_1;
  }
  rep.distance_below_epsilon = rep.boundary_distance_1 < opts.epsilon;

  rep.log_delta = trunc.delta > 0 ? std::log(trunc.delta) : -std::numeric_limits<double>::infinity();
  rep.log_delta_rhs = log_delta_bound(rep.s_alpha, opts.alpha, rep.bond_dim_t);
  rep.log_delta_holds = rep.log_delta <= rep.log_delta_rhs + 1e-12;
  return rep;
}

}  // namespace mpsbounds
