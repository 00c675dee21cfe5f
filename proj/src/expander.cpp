#include "mpsbounds/expander.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mpsbounds/linalg.hpp"
#include "mpsbounds/transfer.hpp"

namespace mpsbounds {

namespace {

// sqrt(p_k) mod 2 pi for the first primes: numerically incommensurable phases
// whose k-th powers stay distinct.
std::vector<double> incommensurable_phases(int count) {
  std::vector<int> primes;
  for (int n = 2; static_cast<int>(primes.size()) < count; ++n) {
    bool is_prime = true;
    for (int p : primes) {
      if (p * p > n) break;
      if (n % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(n);
  }
  std::vector<double> phases(count);
  for (int k = 0; k < count; ++k)
    phases[k] = std::fmod(std::sqrt(static_cast<double>(primes[k])), 2.0 * M_PI);
  return phases;
}

bool all_entries_nonzero(const Mat& m, double tol) {
  return m.cwiseAbs().minCoeff() > tol;
}

}  // namespace

BoundaryChannel make_boundary_channel(int bond_dim, int phys_dim, std::uint64_t seed,
                                      int max_retries) {
  if (bond_dim < 2) throw InputError("boundary channel needs bond dimension >= 2");
  if (phys_dim < 2) throw InputError("boundary channel needs physical dimension >= 2");

  auto phases = incommensurable_phases(bond_dim);
  Mat v1 = Mat::Zero(bond_dim, bond_dim);
  for (int k = 0; k < bond_dim; ++k) v1(k, k) = std::exp(Complex(0, phases[k])) * M_SQRT1_2;

  Rng rng(seed);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Mat u = rng.haar_unitary(bond_dim);
    if (!all_entries_nonzero(u, 1e-12)) continue;
    Mat v2 = u * M_SQRT1_2;

    std::vector<Mat> kraus{v1, v2};
    for (int i = 2; i < phys_dim; ++i) kraus.push_back(Mat::Zero(bond_dim, bond_dim));

    BoundaryChannel ch;
    ch.kraus = kraus;
    ch.seed = seed;
    auto spec = spectrum(transfer_operator(SiteTensor(kraus)));
    ch.lambda2 = spec.eigenvalues.size() > 1 ? std::abs(spec.eigenvalues[1]) : 0.0;
    ch.gap = 1.0 - ch.lambda2;
    bool primitive = spec.period == 1 && std::abs(spec.eigenvalues[0] - Complex(1, 0)) < 1e-9 &&
                     ch.gap > 1e-9;
    if (primitive) return ch;
  }
  throw std::runtime_error(
      fmt::format("boundary channel generation exhausted {} retries (seed {})", max_retries, seed));
}

BoundaryState build_boundary_state(const SiteTensor& a, const RealVec& lambda, int region_len,
                                   int n_sites, const BoundaryChannel& channel) {
  if (channel.bond_dim() != a.bond_dim())
    throw InputError("channel bond dimension does not match the site tensor");
  if (channel.phys_dim() != a.phys_dim())
    throw InputError("channel physical dimension does not match the site tensor");
  if (n_sites <= region_len + 1) throw InputError("need n_sites > region_len + 1");
  if (lambda.size() != a.bond_dim()) throw InputError("fixed point has wrong dimension");

  Mat sqrt_lam = lambda.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal();
  std::vector<Mat> b_kraus;
  b_kraus.reserve(channel.kraus.size());
  for (const auto& v : channel.kraus) b_kraus.push_back(v * sqrt_lam);

  std::vector<SiteTensor> sites;
  sites.reserve(n_sites);
  for (int n = 0; n < region_len; ++n) sites.push_back(a);
  for (int n = region_len; n < n_sites - 1; ++n) sites.push_back(SiteTensor(channel.kraus));
  sites.push_back(SiteTensor(b_kraus));

  BoundaryState state;
  state.mps = build_site_dependent(std::move(sites));
  state.region_len = region_len;
  state.lambda = lambda;
  state.channel = channel;
  return state;
}

BoundaryDensityCheck verify_boundary_density(const BoundaryState& state, long cap) {
  BoundaryDensityCheck check;
  check.predicted_rate = state.channel.lambda2;
  if (state.region_len == 0) {
    check.error_1norm = 0.0;
    return check;
  }
  ReducedDensity actual = reduced_density(state.mps, state.region_len, cap);
  ReducedDensity target =
      reduced_density_thermo(state.mps.site(0), state.lambda, state.region_len, cap);
  check.error_1norm = trace_norm(actual.matrix - target.matrix);
  return check;
}

BoundarySweep boundary_error_sweep(const SiteTensor& a, const RealVec& lambda, int region_len,
                                   const BoundaryChannel& channel, const std::vector<int>& n_values,
                                   long cap) {
  BoundarySweep sweep;
  sweep.n_values = n_values;
  sweep.predicted_rate = channel.lambda2;
  std::vector<double> xs, ys;
  for (int n : n_values) {
    auto state = build_boundary_state(a, lambda, region_len, n, channel);
    double err = verify_boundary_density(state, cap).error_1norm;
    sweep.errors.push_back(err);
    if (err > 1e-13) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(err));
    }
  }
  if (xs.size() >= 2) sweep.fitted_rate = std::exp(fit_line(xs, ys).slope);
  sweep.final_error = sweep.errors.empty() ? 0.0 : sweep.errors.back();
  return sweep;
}

GramDeviation gram_deviation(const SiteTensor& a, int n, double herm_tol) {
  if (n < 1) throw InputError("gram_deviation: n must be >= 1");
  const int bond = a.bond_dim();
  Mat k = transfer_operator(a).matrix;
  if ((k - k.adjoint()).norm() > herm_tol * std::max(1.0, k.norm()))
    throw InputError("gram_deviation: channel is not Hermitian");

  auto evs = hermitian_eigs_desc(hermitize(k));
  std::vector<double> mods;
  mods.reserve(evs.size());
  for (int i = 0; i < evs.size(); ++i) mods.push_back(std::abs(evs(i)));
  std::sort(mods.begin(), mods.end(), std::greater<double>());
  double lambda2 = mods.size() > 1 ? mods[1] : 0.0;

  // Gram operator of Gamma_n as a rearrangement of the n-step transfer matrix:
  // G[(a + D b), (c + D d)] = K^n[(d + D b), (c + D a)].
  Mat kn = mat_power(k, n);
  Mat gram(bond * bond, bond * bond);
  for (int ia = 0; ia < bond; ++ia)
    for (int ib = 0; ib < bond; ++ib)
      for (int ic = 0; ic < bond; ++ic)
        for (int id = 0; id < bond; ++id)
          gram(ia + bond * ib, ic + bond * id) = kn(id + bond * ib, ic + bond * ia);

  GramDeviation out;
  out.n = n;
  out.lambda2 = lambda2;
  out.bound = bond * std::pow(lambda2, n);
  out.deviation = operator_norm_hermitian(
      gram - Mat::Identity(bond * bond, bond * bond) / static_cast<double>(bond));
  return out;
}

SiteTensor random_hermitian_channel(int bond_dim, Rng& rng) {
  Mat u = rng.haar_unitary(bond_dim);
  Mat v = rng.haar_unitary(bond_dim);
  std::vector<Mat> kraus{0.5 * u, 0.5 * u.adjoint(), 0.5 * v, 0.5 * v.adjoint()};
  return SiteTensor(std::move(kraus));
}

InjectivityReport injectivity_survey(int bond_dim, int phys_dim, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("injectivity_survey: trials must be >= 1");
  InjectivityReport rep;
  rep.bond_dim = bond_dim;
  rep.phys_dim = phys_dim;
  rep.trials = trials;
  rep.l_min = static_cast<int>(
      std::ceil(2.0 * std::log(static_cast<double>(bond_dim)) / std::log(static_cast<double>(phys_dim)) -
                1e-12));
  rep.l_min = std::max(rep.l_min, 1);
  rep.paper_l = 2.0 * std::log(static_cast<double>(bond_dim)) / std::log(static_cast<double>(phys_dim));

  const int l_max = rep.l_min + 3;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    Rng rng(trial_seed);
    std::vector<Mat> kraus;
    for (int i = 0; i < phys_dim; ++i) kraus.push_back(rng.gaussian(bond_dim, bond_dim));
    auto len = injectivity_length(SiteTensor(kraus), l_max);
    int key = len ? *len : -1;  // -1: not reached by l_max
    rep.histogram[key] += 1;
    if (!len || *len > rep.l_min) rep.failures.push_back(trial_seed);
  }
  return rep;
}

}  // namespace mpsbounds
