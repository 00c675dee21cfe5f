#include "mpsbounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "mpsbounds/canonical.hpp"
#include "mpsbounds/entanglement.hpp"
#include "mpsbounds/expander.hpp"
#include "mpsbounds/linalg.hpp"
#include "mpsbounds/mps.hpp"
#include "mpsbounds/symmetry.hpp"
#include "mpsbounds/transfer.hpp"
#include "mpsbounds/truncation.hpp"

namespace mpsbounds {

namespace {

std::vector<int> filtered_dims(const VerifyConfig& cfg, std::vector<int> dims) {
  if (cfg.restrict_bond_dim > 0) {
    dims.erase(std::remove_if(dims.begin(), dims.end(),
                              [&](int d) { return d != cfg.restrict_bond_dim; }),
               dims.end());
  }
  return dims;
}

// Two canonical injective blocks guaranteed distinct as states.
std::pair<CanonicalBlock, CanonicalBlock> distinct_pair(int bond_dim, int phys_dim, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    CanonicalBlock a = random_injective_block(bond_dim, phys_dim, rng);
    CanonicalBlock b = random_injective_block(bond_dim, phys_dim, rng);
    double top = spectral_radius(transfer_operator(a.tensor, b.tensor).matrix);
    if (top < 1.0 - 1e-4) return {std::move(a), std::move(b)};
  }
  throw std::runtime_error("could not draw a distinct canonical pair");
}

// Brute-force partial trace of the first L sites from the state vector.
Mat brute_force_reduced(const Vec& psi, int d, int n, int L) {
  long dl = 1, denv = 1;
  for (int k = 0; k < L; ++k) dl *= d;
  for (int k = L; k < n; ++k) denv *= d;
  Mat rho = Mat::Zero(dl, dl);
  for (long r = 0; r < dl; ++r)
    for (long c = 0; c < dl; ++c) {
      Complex acc(0, 0);
      for (long e = 0; e < denv; ++e) acc += psi(r * denv + e) * std::conj(psi(c * denv + e));
      rho(r, c) = acc;
    }
  double tr = rho.trace().real();
  return rho / tr;
}

MPS ghz_mps(int n) {
  Mat a0 = Mat::Zero(2, 2), a1 = Mat::Zero(2, 2);
  a0(0, 0) = 1.0;
  a1(1, 1) = 1.0;
  return build_uniform({a0, a1}, n);
}

struct Failures {
  int count = 0;
  std::string first;
  void add(bool ok, const std::string& what) {
    if (!ok) {
      ++count;
      if (first.empty()) first = what;
    }
  }
};

std::string verdict(const Failures& f, const std::string& summary) {
  if (f.count == 0) return summary;
  return fmt::format("{} [{} failures, first: {}]", summary, f.count, f.first);
}

}  // namespace

CheckResult check_lemma3(const VerifyConfig& cfg) {
  CheckResult res{"lemma3", "distinct injective states: mixed spectrum inside the disk, overlap decay", false, ""};
  Rng rng(cfg.seed + 3);
  Failures fails;

  // (a) 100 random distinct canonical pairs: max eigenvalue modulus < 1 - 1e-6.
  double worst_modulus = 0.0;
  for (int t = 0; t < 100; ++t) {
    int bond = 2 + static_cast<int>(rng.integer() % 2);
    auto [a, b] = distinct_pair(bond, 2, rng);
    double top = spectral_radius(transfer_operator(a.tensor, b.tensor).matrix);
    worst_modulus = std::max(worst_modulus, top);
  }
  fails.add(worst_modulus < 1.0 - 1e-6, fmt::format("mixed modulus {:.6f}", worst_modulus));

  // (b) 20 pairs: |<psi_B|psi_A>| over N = 10..40 fits a rate within 5% of
  // log |lambda_max|.
  double worst_ratio_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    int bond = 2 + static_cast<int>(rng.integer() % 2);
    auto [a, b] = distinct_pair(bond, 2, rng);
    auto evs = sorted_eigenvalues(transfer_operator(a.tensor, b.tensor).matrix);
    double rate_expected = std::log(std::abs(evs[0]));
    std::vector<double> xs, ys;
    for (int n = 10; n <= 40; ++n) {
      Complex ov(0, 0);
      for (const auto& ev : evs) ov += std::pow(ev, n);
      double mag = std::abs(ov);
      if (mag > 1e-280) {
        xs.push_back(n);
        ys.push_back(std::log(mag));
      }
    }
    double rate_fit = fit_line(xs, ys).slope;
    double ratio_err = std::abs(rate_fit / rate_expected - 1.0);
    worst_ratio_err = std::max(worst_ratio_err, ratio_err);
  }
  fails.add(worst_ratio_err <= 0.05, fmt::format("decay rate off by {:.3%}", worst_ratio_err));

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format("max mixed modulus {:.8f} < 1-1e-6; worst rate mismatch {:.3%} <= 5%",
                                          worst_modulus, worst_ratio_err));
  return res;
}

CheckResult check_lemma4(const VerifyConfig& cfg) {
  CheckResult res{"lemma4", "cross purity of distinct blocks vanishes with the region", false, ""};
  Rng rng(cfg.seed + 4);
  Failures fails;

  // Disjoint-support case: the split components of the blocked toy state.
  MPS toy = toy_fractional_mps(3, 1, 12);
  CanonicalForm blocked_cf = canonicalize(block_sites(toy, 3).site(0));
  double exact_cross = -1.0;
  if (blocked_cf.blocks.size() == 3) {
    auto r0 = reduced_density_thermo(blocked_cf.blocks[0].tensor, blocked_cf.blocks[0].lambda, 1);
    auto r1 = reduced_density_thermo(blocked_cf.blocks[1].tensor, blocked_cf.blocks[1].lambda, 1);
    exact_cross = cross_purity(r0, r1);
    fails.add(std::abs(exact_cross) < 1e-14, fmt::format("toy cross purity {:.2e}", exact_cross));
  } else {
    fails.add(false, fmt::format("blocked toy gave {} blocks", blocked_cf.blocks.size()));
  }

  // Exponential decay for two generic blocks.
  auto [a, b] = distinct_pair(2, 2, rng);
  std::vector<double> xs, ys;
  for (int L = 2; L <= 8; ++L) {
    auto ra = reduced_density_thermo(a.tensor, a.lambda, L, cfg.region_cap);
    auto rb = reduced_density_thermo(b.tensor, b.lambda, L, cfg.region_cap);
    double purity = cross_purity(ra, rb);
    fails.add(purity > -1e-12, fmt::format("negative purity {:.2e}", purity));
    xs.push_back(L);
    ys.push_back(std::log(std::max(purity, 1e-300)));
  }
  double slope = fit_line(xs, ys).slope;
  fails.add(slope < -0.05, fmt::format("cross purity slope {:.3f} not decaying", slope));
  fails.add(ys.back() < ys.front(), "cross purity not decreasing");

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format("disjoint-support purity {:.1e} = 0; generic decay slope {:.3f}/site",
                                          exact_cross, slope));
  return res;
}

CheckResult check_lemma5(const VerifyConfig& cfg) {
  CheckResult res{"lemma5", "peripheral period: splitting under blocking and N-divisibility", false, ""};
  Failures fails;

  // Period detection on the toy models.
  for (int p : {2, 3, 4}) {
    CanonicalForm cf = canonicalize(toy_fractional_mps(p, 1, 4 * p).site(0),
                                    CanonicalizeOptions{.peripheral_tol = cfg.peripheral_tol});
    fails.add(cf.blocks.size() == 1, fmt::format("toy p={} not a single block", p));
    fails.add(cf.blocks[0].period == p,
              fmt::format("toy p={} period {} != {}", p, cf.blocks[0].period, p));
  }

  // Blocking a beta-periodic block splits it into beta distinct injective ones.
  MPS toy = toy_fractional_mps(3, 1, 12);
  CanonicalForm split_cf = canonicalize(block_sites(toy, 3).site(0));
  bool split_ok = split_cf.blocks.size() == 3;
  int bond_sum = 0;
  for (const auto& blk : split_cf.blocks) {
    split_ok = split_ok && blk.period == 1;
    bond_sum += blk.bond_dim() * blk.multiplicity;
  }
  split_ok = split_ok && bond_sum == 3;
  fails.add(split_ok, fmt::format("blocked toy split: {} blocks, bond sum {}",
                                  split_cf.blocks.size(), bond_sum));

  // Eigenvalues of the blocked transfer operator are p-th powers.
  auto base_evs = sorted_eigenvalues(transfer_operator(toy.site(0)).matrix);
  auto blocked_evs = sorted_eigenvalues(transfer_operator(block_sites(toy, 3).site(0)).matrix);
  std::vector<Complex> powered;
  for (const auto& ev : base_evs) powered.push_back(std::pow(ev, 3));
  double worst_match = 0.0;
  std::vector<bool> used(blocked_evs.size(), false);
  for (const auto& pw : powered) {
    double best = 1e300;
    int best_i = -1;
    for (size_t i = 0; i < blocked_evs.size(); ++i) {
      if (used[i]) continue;
      double dist = std::abs(blocked_evs[i] - pw);
      if (dist < best) {
        best = dist;
        best_i = static_cast<int>(i);
      }
    }
    if (best_i >= 0) used[best_i] = true;
    worst_match = std::max(worst_match, best);
  }
  fails.add(worst_match < 1e-8, fmt::format("blocked spectrum mismatch {:.2e}", worst_match));

  // If the period does not divide N the state vanishes.
  double bad_norm = 0.0;
  auto toy_tensors = toy.site(0).kraus;
  for (int n : {4, 5, 7}) {
    Vec psi = to_state_vector(build_uniform(toy_tensors, n), cfg.state_cap);
    bad_norm = std::max(bad_norm, psi.norm());
  }
  fails.add(bad_norm < 1e-10, fmt::format("nonzero state at bad N, norm {:.2e}", bad_norm));

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format(
      "toy periods detected; blocked split into 3 injective blocks; spectrum-power match {:.1e}; "
      "norm at non-multiple N {:.1e}", worst_match, bad_norm));
  return res;
}

CheckResult check_lemma6(const VerifyConfig& cfg) {
  CheckResult res{"lemma6", "p (J - m) is an integer for states of two commensurate sizes", false, ""};
  Failures fails;
  double worst = 0.0;
  for (int p = 2; p <= 6; ++p) {
    for (int q = 1; q < p; ++q) {
      if (gcd_ll(p, q) != 1) continue;
      // same magnetization at sizes pN and p(N+1), then p (J - m) = q
      double m1 = magnetization(toy_fractional_mps(p, q, 2 * p), Spin::half());
      double m2 = magnetization(toy_fractional_mps(p, q, 3 * p), Spin::half());
      fails.add(std::abs(m1 - m2) < 1e-10, fmt::format("m differs across sizes p={} q={}", p, q));
      double val = p * (0.5 - m1);
      worst = std::max(worst, std::abs(val - std::llround(val)));
      fails.add(std::abs(val - q) < 1e-9, fmt::format("p(J-m) = {:.9f} != q = {}", val, q));
      fails.add(lsm_check(Spin::half(), Rational(p - 2 * q, 2 * p), p),
                fmt::format("rational arithmetic check failed p={} q={}", p, q));
    }
  }
  // contrapositive spot check: p = 2 cannot host m = 1/6 at J = 1/2
  fails.add(!lsm_check(Spin::half(), Rational(1, 6), 2), "2 (1/2 - 1/6) is not an integer");

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format("p(J-m) integer over coprime p<=6, worst defect {:.1e}", worst));
  return res;
}

CheckResult check_lemma8(const VerifyConfig& cfg) {
  CheckResult res{"lemma8", "every block period of a symmetric state is a multiple of p", false, ""};
  Rng rng(cfg.seed + 8);
  Failures fails;

  for (int p : {2, 3, 4}) {
    for (int q = 1; q < p; ++q) {
      if (gcd_ll(p, q) != 1) continue;
      MPS toy = toy_fractional_mps(p, q, 4 * p);
      SymmetryReport sym = symmetry_report(toy, Spin::half(), cfg.sym_tol);
      fails.add(sym.symmetric, fmt::format("toy p={} q={} not symmetric", p, q));
      fails.add(sym.p == p && sym.q == q,
                fmt::format("reconstructed ({},{}) != ({},{})", sym.p, sym.q, p, q));
      CanonicalForm cf = canonicalize(toy.site(0));
      auto pc = period_consistency(cf, sym.p);
      fails.add(pc.all_multiples, fmt::format("period not multiple of p={}", p));
    }
  }

  // Direct sum of period-2 and period-4 toy blocks, p = 2: gamma = 2.
  auto t2 = toy_fractional_mps(2, 1, 8).site(0);
  auto t4 = toy_fractional_mps(4, 1, 8).site(0);
  std::vector<Mat> joined;
  for (int i = 0; i < 2; ++i) {
    Mat m = Mat::Zero(6, 6);
    m.topLeftCorner(2, 2) = t2.kraus[i];
    m.bottomRightCorner(4, 4) = t4.kraus[i];
    joined.push_back(m);
  }
  CanonicalForm cf_sum = canonicalize(SiteTensor(joined));
  auto pc = period_consistency(cf_sum, 2);
  fails.add(pc.gamma == 2 && pc.all_multiples,
            fmt::format("direct sum gamma {} (expected 2)", pc.gamma));

  // A gauged symmetric state keeps the arithmetic.
  Mat x = Mat::Identity(3, 3) + 0.3 * rng.gaussian(3, 3);
  MPS gauged = apply_gauge(toy_fractional_mps(3, 1, 12), x);
  SymmetryReport sym_g = symmetry_report(gauged, Spin::half(), cfg.sym_tol);
  fails.add(sym_g.symmetric && sym_g.p == 3, "gauged toy lost its symmetry arithmetic");

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format("toy and direct-sum periods all multiples of p; gamma(sum) = {}",
                                          pc.gamma));
  return res;
}

namespace {

struct SweepOutcome {
  int instances = 0;
  int violations_1 = 0;
  int violations_2 = 0;
  int violations_l9 = 0;
  int violations_l10 = 0;
  double worst_margin_1 = 1e300;  // bound - actual
  double worst_margin_2 = 1e300;
};

SweepOutcome truncation_sweep(const VerifyConfig& cfg, int instances) {
  SweepOutcome out;
  Rng rng(cfg.seed + 1066);
  while (out.instances < instances) {
    int bond = 2 + static_cast<int>(rng.integer() % 5);      // 2..6
    int d = 2 + static_cast<int>(rng.integer() % 2);         // 2..3
    int region = 1 + static_cast<int>(rng.integer() % 6);    // 1..6
    int bond_t = 1 + static_cast<int>(rng.integer() % (bond - 1));
    CanonicalBlock block = random_injective_block(bond, d, rng);
    TruncationReport rep = verify_truncation(block, bond_t, region, cfg.region_cap);
    ++out.instances;
    if (!rep.pass_1) ++out.violations_1;
    if (!rep.pass_2) ++out.violations_2;
    if (!rep.pass_lemma9) ++out.violations_l9;
    if (!(rep.pass_lemma10_1 && rep.pass_lemma10_2)) ++out.violations_l10;
    out.worst_margin_1 = std::min(out.worst_margin_1, rep.bound_1 - rep.actual_1);
    out.worst_margin_2 = std::min(out.worst_margin_2, rep.bound_2 - rep.actual_2);
  }
  return out;
}

}  // namespace

CheckResult check_lemma9(const VerifyConfig& cfg) {
  CheckResult res{"lemma9", "projected channel moves the fixed point by at most 2 L delta", false, ""};
  SweepOutcome out = truncation_sweep(cfg, 60);
  res.pass = out.violations_l9 == 0;
  res.detail = fmt::format("{} instances, {} violations of the 2 L delta drift bound",
                           out.instances, out.violations_l9);
  return res;
}

CheckResult check_lemma10(const VerifyConfig& cfg) {
  CheckResult res{"lemma10", "distance factors through sigma_{A,P} plus (2L+3) delta", false, ""};
  SweepOutcome out = truncation_sweep(cfg, 60);
  res.pass = out.violations_l10 == 0;
  res.detail = fmt::format("{} instances, {} violations of the intermediate chain",
                           out.instances, out.violations_l10);
  return res;
}

CheckResult check_lemma11(const VerifyConfig& cfg) {
  CheckResult res{"lemma11", "random tensors reach injectivity at the counting length", false, ""};
  Failures fails;
  std::string parts;
  std::vector<std::pair<int, int>> dims{{4, 2}, {8, 2}, {9, 3}};
  for (auto [bond, d] : dims) {
    if (cfg.restrict_bond_dim > 0 && bond != cfg.restrict_bond_dim) continue;
    InjectivityReport rep = injectivity_survey(bond, d, 100, cfg.seed + 11);
    int at_lmin = 0;
    auto it = rep.histogram.find(rep.l_min);
    if (it != rep.histogram.end()) at_lmin = it->second;
    fails.add(rep.failures.empty() && at_lmin == rep.trials,
              fmt::format("(D={}, d={}): {}/{} at L_min={}", bond, d, at_lmin, rep.trials, rep.l_min));
    parts += fmt::format("(D={},d={}): {}/{} at L={}; ", bond, d, at_lmin, rep.trials, rep.l_min);
  }
  res.pass = fails.count == 0;
  res.detail = verdict(fails, parts);
  return res;
}

CheckResult check_lemma13(const VerifyConfig& cfg) {
  CheckResult res{"lemma13", "Gram deviation of hermitian channels obeys D |lambda_2|^n", false, ""};
  Failures fails;
  double worst_excess = -1e300;
  int checked = 0;
  int inj_checked = 0;
  for (int bond : filtered_dims(cfg, {2, 3, 4, 6})) {
    for (int s = 0; s < 50; ++s) {
      Rng rng(cfg.seed + 13 + 1000 * bond + static_cast<std::uint64_t>(s));
      SiteTensor channel = random_hermitian_channel(bond, rng);
      double lambda2 = 0.0;
      for (int n = 1; n <= 10; ++n) {
        GramDeviation g = gram_deviation(channel, n);
        lambda2 = g.lambda2;
        ++checked;
        worst_excess = std::max(worst_excess, g.deviation - g.bound);
        fails.add(g.deviation <= g.bound + 1e-8,
                  fmt::format("D={} seed={} n={}: dev {:.3e} > bound {:.3e}", bond, s, n,
                              g.deviation, g.bound));
      }
      // Deviation below 1/D^2 certifies injectivity at that many sites.
      if (s < 5 && lambda2 > 0 && lambda2 < 1) {
        double thresh = 1.0 / (static_cast<double>(bond) * bond);
        int n_star = static_cast<int>(std::ceil(std::log(thresh / bond) / std::log(lambda2)));
        n_star = std::max(n_star, 1);
        auto len = injectivity_length(channel, std::min(n_star, 8));
        ++inj_checked;
        fails.add(len.has_value() && *len <= n_star,
                  fmt::format("D={} seed={}: injectivity {} not within n* = {}", bond, s,
                              len ? *len : -1, n_star));
      }
    }
  }
  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format(
      "{} (D, seed, n) points, worst deviation-bound excess {:.2e}; {} injectivity thresholds held",
      checked, worst_excess, inj_checked));
  return res;
}

CheckResult check_lemma14(const VerifyConfig& cfg) {
  CheckResult res{"lemma14", "boundary channel is primitive and reproduces the fixed-point density", false, ""};
  Rng rng(cfg.seed + 14);
  Failures fails;

  // Primitivity of generated channels across dimensions and seeds.
  for (int bond : filtered_dims(cfg, {2, 3, 4, 6})) {
    for (int s = 0; s < 5; ++s) {
      BoundaryChannel ch = make_boundary_channel(bond, 2, cfg.seed + 140 + 10 * bond + s);
      Mat sum = Mat::Zero(bond, bond);
      Mat unital = Mat::Zero(bond, bond);
      for (const auto& v : ch.kraus) {
        sum += v.adjoint() * v;
        unital += v * v.adjoint();
      }
      fails.add((sum - Mat::Identity(bond, bond)).norm() < 1e-10, "not trace preserving");
      fails.add((unital - Mat::Identity(bond, bond)).norm() < 1e-10, "not unital");
      fails.add(ch.gap > 1e-6, fmt::format("D={} seed={} gap {:.2e}", bond, s, ch.gap));
    }
  }

  // Density convergence and rate fit, the acceptance setting: D in {2,3}, L=4.
  double worst_rate_err = 0.0;
  double worst_final = 0.0;
  for (int bond : {2, 3}) {
    if (cfg.restrict_bond_dim > 0 && bond != cfg.restrict_bond_dim) continue;
    CanonicalBlock blk = random_injective_block(bond, 2, rng);
    BoundaryChannel ch = make_boundary_channel(bond, 2, cfg.seed + 141 + bond);
    // N window sized by the channel gap so the error spans a clean decade range
    int reach = static_cast<int>(std::ceil(std::log(1e-8) / std::log(ch.lambda2)));
    std::vector<int> ns;
    for (int k = 2; k <= 10; ++k) ns.push_back(4 + 1 + (reach * k) / 10);
    BoundarySweep sweep = boundary_error_sweep(blk.tensor, blk.lambda, 4, ch, ns, cfg.region_cap);
    double rate_err = std::abs(sweep.fitted_rate - sweep.predicted_rate) / sweep.predicted_rate;
    worst_rate_err = std::max(worst_rate_err, rate_err);
    // push N far enough for the 1e-6 target
    auto far = build_boundary_state(blk.tensor, blk.lambda, 4, 4 + 1 + reach, ch);
    double far_err = verify_boundary_density(far, cfg.region_cap).error_1norm;
    worst_final = std::max(worst_final, far_err);
    fails.add(rate_err <= 0.10,
              fmt::format("D={} fitted rate {:.4f} vs |lambda2| {:.4f}", bond, sweep.fitted_rate,
                          sweep.predicted_rate));
    fails.add(far_err < 1e-6, fmt::format("D={} residual error {:.2e} at N={}", bond, far_err,
                                          4 + 1 + reach));
  }

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format(
      "channels primitive; decay rate within {:.2%} of |lambda2|; far-boundary error <= {:.1e}",
      worst_rate_err, worst_final));
  return res;
}

CheckResult check_thm1(const VerifyConfig& cfg) {
  CheckResult res{"thm1", "fractional magnetization forces entropy >= log p", false, ""};
  Rng rng(cfg.seed + 1);
  Failures fails;

  double worst_s_err = 0.0, worst_m_err = 0.0, worst_margin = 1e300;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 1}}) {
    MPS toy = toy_fractional_mps(p, q, 4 * p);
    double m = magnetization(toy, Spin::half());
    worst_m_err = std::max(worst_m_err, std::abs(m - (0.5 - static_cast<double>(q) / p)));

    Theorem1Report rep = theorem1_verify(toy, Spin::half(), {p, 2 * p},
                                         Theorem1Options{.sym_tol = cfg.sym_tol,
                                                         .pass_tol = cfg.pass_tol,
                                                         .cap = cfg.region_cap});
    fails.add(rep.symmetry.p == p && rep.symmetry.q == q,
              fmt::format("toy ({},{}) reconstructed as ({},{})", p, q, rep.symmetry.p, rep.symmetry.q));
    for (const auto& e : rep.entries) {
      worst_s_err = std::max(worst_s_err, std::abs(e.entropy - std::log(static_cast<double>(p))));
      fails.add(std::abs(e.entropy - std::log(static_cast<double>(p))) < 1e-9,
                fmt::format("toy ({},{}) L={}: S = {:.12f}", p, q, e.region_len, e.entropy));
    }

    // random gauge: same bound within the pass tolerance
    Mat x = Mat::Identity(p, p) + 0.25 * rng.gaussian(p, p);
    Theorem1Report rep_g = theorem1_verify(apply_gauge(toy, x), Spin::half(), {p, 2 * p},
                                           Theorem1Options{.sym_tol = 1e-7,
                                                           .pass_tol = cfg.pass_tol,
                                                           .cap = cfg.region_cap});
    for (const auto& e : rep_g.entries) {
      worst_margin = std::min(worst_margin, e.margin);
      fails.add(e.pass, fmt::format("gauged toy ({},{}) L={} margin {:.2e}", p, q, e.region_len, e.margin));
    }

    // blocking by p: region of one or two blocked sites, same log p bound
    MPS blocked = block_sites(toy, p);
    for (int blocks_in_region : {1, 2}) {
      RealVec eigs = region_spectrum(blocked, blocks_in_region);
      double s = von_neumann_entropy(eigs);
      double margin = s - std::log(static_cast<double>(p));
      worst_margin = std::min(worst_margin, margin);
      fails.add(margin >= -cfg.pass_tol,
                fmt::format("blocked toy ({},{}) {} blocks margin {:.2e}", p, q, blocks_in_region, margin));
    }
  }

  // GHZ: two equal-weight blocks; S(rho_L) = log 2 for all cuts; trivial
  // bound without the U(1) eigenstate property.
  MPS ghz = ghz_mps(8);
  CanonicalForm cf = canonicalize(ghz.site(0));
  fails.add(cf.blocks.size() == 2, fmt::format("GHZ gave {} blocks", cf.blocks.size()));
  double mu_err = 0.0;
  for (const auto& b : cf.blocks) mu_err = std::max(mu_err, std::abs(b.weight - 0.5));
  fails.add(mu_err < 1e-12, fmt::format("GHZ weights off by {:.2e}", mu_err));
  double ghz_s_err = 0.0;
  for (int L = 1; L <= 7; ++L) {
    RealVec eigs = region_spectrum(ghz, L);
    ghz_s_err = std::max(ghz_s_err, std::abs(von_neumann_entropy(eigs) - std::log(2.0)));
  }
  fails.add(ghz_s_err < 1e-9, fmt::format("GHZ entropy error {:.2e}", ghz_s_err));
  Theorem1Report ghz_rep = theorem1_verify(ghz, Spin::half(), {4},
                                           Theorem1Options{.cap = cfg.region_cap});
  fails.add(!ghz_rep.symmetry.symmetric && ghz_rep.symmetry.p == 1 && ghz_rep.all_pass,
            "GHZ should fall back to the trivial p = 1 bound");

  // Entropy concavity on an explicit orthogonal mixture, and the Jensen step.
  {
    MPS toy = toy_fractional_mps(3, 1, 12);
    ReducedDensity rho = reduced_density(toy, 3, cfg.region_cap);
    double s = von_neumann_entropy(rho.eigenvalues);
    double purity = (rho.matrix * rho.matrix).trace().real();
    fails.add(s >= -std::log(purity) - 1e-10,
              fmt::format("Jensen step violated: S={:.6f} < -log tr rho^2 = {:.6f}", s, -std::log(purity)));

    CanonicalForm split_cf = canonicalize(block_sites(toy, 3).site(0));
    if (split_cf.blocks.size() == 3) {
      std::vector<ReducedDensity> parts;
      for (const auto& b : split_cf.blocks)
        parts.push_back(reduced_density_thermo(b.tensor, b.lambda, 2, cfg.region_cap));
      Mat mix = (parts[0].matrix + parts[1].matrix + parts[2].matrix) / 3.0;
      double s_mix = von_neumann_entropy(hermitian_eigs_desc(mix).cwiseMax(0.0));
      double s_min = 1e300;
      for (const auto& part : parts) s_min = std::min(s_min, von_neumann_entropy(part.eigenvalues));
      fails.add(s_mix >= s_min - 1e-8,
                fmt::format("concavity violated: S(mix) = {:.6f} < min S_i = {:.6f}", s_mix, s_min));
    }
  }

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format(
      "toy S = log p within {:.1e}; m within {:.1e}; gauged/blocked margin >= {:.1e}; GHZ blocks (1/2, 1/2), "
      "S error {:.1e}", worst_s_err, worst_m_err, worst_margin, ghz_s_err));
  return res;
}

CheckResult check_appendix_b(const VerifyConfig& cfg) {
  CheckResult res{"appB", "bond truncation distance bounds, both Schatten norms", false, ""};
  SweepOutcome out = truncation_sweep(cfg, 200);
  Failures fails;
  fails.add(out.violations_1 == 0, fmt::format("{} one-norm violations", out.violations_1));
  fails.add(out.violations_2 == 0, fmt::format("{} two-norm violations", out.violations_2));
  fails.add(out.violations_l9 == 0, fmt::format("{} fixed-point drift violations", out.violations_l9));

  // delta ordering against the large-region spectrum, and monotonicity in D~.
  Rng rng(cfg.seed + 42);
  double worst_order = -1e300;
  for (int t = 0; t < 10; ++t) {
    int bond = 3 + static_cast<int>(rng.integer() % 3);
    CanonicalBlock block = random_injective_block(bond, 2, rng);
    RealVec rho_r_eigs = region_spectrum_thermo(block.tensor, block.lambda, 40);
    double prev_delta = 1e300;
    for (int bond_t = 1; bond_t < bond; ++bond_t) {
      double delta = project_bond(block, bond_t).delta;
      fails.add(delta <= prev_delta + 1e-12, "delta not monotone in D~");
      prev_delta = delta;
      double tail = 0.0;
      for (int i = bond_t; i < rho_r_eigs.size(); ++i) tail += rho_r_eigs(i);
      worst_order = std::max(worst_order, delta - (tail + 1e-6));
      fails.add(delta <= tail + 1e-6,
                fmt::format("Lambda tail {:.3e} above rho_R tail {:.3e}", delta, tail));
    }
  }

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format(
      "{} instances, 0 violations; slimmest margins: one-norm {:.2e}, two-norm {:.2e}; "
      "delta ordering margin {:.1e}", out.instances, out.worst_margin_1, out.worst_margin_2,
      -worst_order));
  return res;
}

CheckResult check_thm2(const VerifyConfig& cfg) {
  CheckResult res{"thm2", "low-entropy truncation pipeline and its inequality chain", false, ""};
  Rng rng(cfg.seed + 2);
  Failures fails;

  CanonicalBlock block = random_injective_block(2, 2, rng);
  MPS mps = build_uniform(block.tensor.kraus, 64);
  Theorem2Report rep = theorem2_pipeline(mps, 8, Theorem2Options{.epsilon = 0.5,
                                                                 .channel_seed = cfg.seed + 21,
                                                                 .cap = cfg.region_cap});
  fails.add(rep.distance_below_bound,
            fmt::format("formula distance {:.3e} above epsilon' {:.3e}", rep.formula_distance_1,
                        rep.epsilon_prime));
  fails.add(rep.distance_below_epsilon,
            fmt::format("boundary distance {:.3e} above epsilon", rep.boundary_distance_1));
  fails.add(rep.log_delta_holds, "log delta bound failed");
  fails.add(rep.first_term_dominates, "(2L+3) delta exceeds the leading term");

  // Nonzero-delta path: force D~ = 1 via a short region.
  Theorem2Report rep2 = theorem2_pipeline(mps, 3, Theorem2Options{.epsilon = 0.9,
                                                                  .channel_seed = cfg.seed + 22,
                                                                  .cap = cfg.region_cap});
  fails.add(rep2.distance_below_bound,
            fmt::format("short-region distance {:.3e} above epsilon' {:.3e}", rep2.formula_distance_1,
                        rep2.epsilon_prime));
  fails.add(rep2.log_delta_holds, "short-region log delta bound failed");

  // The truncation inequality used in the proof, measured on a wider block.
  CanonicalBlock wide = random_injective_block(6, 2, rng);
  double delta = project_bond(wide, 3).delta;
  double s_alpha = renyi_entropy(asymptotic_spectrum(wide), 1.0 / 6.0);
  double rhs = log_delta_bound(s_alpha, 1.0 / 6.0, 3);
  fails.add(std::log(delta) <= rhs,
            fmt::format("log delta {:.4f} above bound {:.4f}", std::log(delta), rhs));

  // non-injective input is rejected
  bool threw = false;
  try {
    theorem2_pipeline(ghz_mps(8), 4, Theorem2Options{});
  } catch (const InputError&) {
    threw = true;
  }
  fails.add(threw, "pipeline accepted a non-injective state");

  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format(
      "L=8: distance {:.2e} <= eps' {:.2e}, boundary distance {:.2e} < 0.5; log-delta slack {:.3f}",
      rep.formula_distance_1, rep.epsilon_prime, rep.boundary_distance_1,
      rep2.log_delta_rhs - rep2.log_delta));
  return res;
}

CheckResult check_oracle(const VerifyConfig& cfg) {
  CheckResult res{"oracle", "transfer-contracted reduced densities match the state-vector partial trace", false, ""};
  Rng rng(cfg.seed + 50);
  Failures fails;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    int bond = 2 + static_cast<int>(rng.integer() % 3);  // 2..4
    int n = 6 + static_cast<int>(rng.integer() % 7);     // 6..12
    int region = 1 + static_cast<int>(rng.integer() % std::min(6, n - 1));
    std::vector<Mat> kraus{rng.gaussian(bond, bond), rng.gaussian(bond, bond)};
    MPS mps = build_uniform(kraus, n);
    ReducedDensity rho = reduced_density(mps, region, cfg.region_cap);
    Vec psi = to_state_vector(mps, cfg.state_cap);
    psi /= psi.norm();
    Mat brute = brute_force_reduced(psi, 2, n, region);
    double err = (rho.matrix - brute).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    fails.add(err < 1e-10, fmt::format("seed-{} D={} N={} L={}: entry error {:.2e}", t, bond, n, region, err));
  }
  res.pass = fails.count == 0;
  res.detail = verdict(fails, fmt::format("50 random states, worst entrywise difference {:.2e}", worst));
  return res;
}

std::vector<std::string> verify_section_keys() {
  return {"lemma3", "lemma4", "lemma5", "lemma6", "lemma8", "lemma9", "lemma10",
          "lemma11", "lemma13", "lemma14", "thm1", "appB", "thm2", "oracle"};
}

std::vector<CheckResult> run_verify_suite(const VerifyConfig& cfg,
                                          const std::vector<std::string>& only) {
  using Section = CheckResult (*)(const VerifyConfig&);
  const std::vector<std::pair<std::string, Section>> sections{
      {"lemma3", check_lemma3},   {"lemma4", check_lemma4},   {"lemma5", check_lemma5},
      {"lemma6", check_lemma6},   {"lemma8", check_lemma8},   {"lemma9", check_lemma9},
      {"lemma10", check_lemma10}, {"lemma11", check_lemma11}, {"lemma13", check_lemma13},
      {"lemma14", check_lemma14}, {"thm1", check_thm1},       {"appB", check_appendix_b},
      {"thm2", check_thm2},       {"oracle", check_oracle}};

  std::vector<CheckResult> results;
  for (const auto& [key, fn] : sections) {
    if (!only.empty() && std::find(only.begin(), only.end(), key) == only.end()) continue;
    try {
      results.push_back(fn(cfg));
    } catch (const std::exception& e) {
      results.push_back(CheckResult{key, "section aborted", false, e.what()});
    }
  }
  return results;
}

std::string format_results(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results)
    out += fmt::format("[{}] {:7} {} -- {}\n", r.pass ? "PASS" : "FAIL", r.key, r.name, r.detail);
  return out;
}

}  // namespace mpsbounds
