#include "mpsbounds/symmetry.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mpsbounds/linalg.hpp"
#include "mpsbounds/rng.hpp"
#include "mpsbounds/transfer.hpp"

namespace mpsbounds {

Mat spin_z_generator(Spin j) {
  const int d = j.dim();
  Mat g = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) g(i, i) = j.value() - i;
  return g;
}

namespace {

Mat site_transfer(const MPS& mps, int n) { return transfer_operator(mps.site(n)).matrix; }

// tr[prod_n M_n] with the matrix at `insert_at` replaced by `inserted`.
Complex chain_trace_with_insertion(const MPS& mps, const Mat& inserted, int insert_at) {
  const int dim2 = mps.bond_dim() * mps.bond_dim();
  Mat prod = Mat::Identity(dim2, dim2);
  for (int n = 0; n < mps.n_sites; ++n)
    prod = prod * (n == insert_at ? inserted : site_transfer(mps, n));
  return prod.trace();
}

Complex norm_squared(const MPS& mps) {
  if (mps.uniform) {
    auto ev = sorted_eigenvalues(site_transfer(mps, 0));
    Complex z(0, 0);
    for (const auto& lambda : ev) z += std::pow(lambda, mps.n_sites);
    return z;
  }
  return chain_trace_with_insertion(mps, site_transfer(mps, 0), -1);
}

}  // namespace

double magnetization(const MPS& mps, Spin j, const Mat* generator) {
  if (mps.phys_dim() != j.dim())
    throw InputError(fmt::format("physical dimension {} does not equal 2J+1 = {}",
                                 mps.phys_dim(), j.dim()));
  Mat sz = generator ? *generator : spin_z_generator(j);
  double z = norm_squared(mps).real();
  if (!(z > 0)) throw InputError("magnetization: state has vanishing norm");

  if (mps.uniform) {
    Mat m = site_transfer(mps, 0);
    Mat ins = transfer_with_operator(mps.site(0), mps.site(0), sz);
    Complex val = (ins * mat_power(m, mps.n_sites - 1)).trace();
    return val.real() / z;
  }
  Complex total(0, 0);
  for (int n = 0; n < mps.n_sites; ++n) {
    Mat ins = transfer_with_operator(mps.site(n), mps.site(n), sz);
    total += chain_trace_with_insertion(mps, ins, n);
  }
  return total.real() / (z * mps.n_sites);
}

double u1_invariance(const MPS& mps, Spin j, const std::vector<double>& g_samples,
                     const Mat* generator) {
  Mat sz = generator ? *generator : spin_z_generator(j);
  double m = magnetization(mps, j, generator);
  double z = norm_squared(mps).real();
  const int d = mps.phys_dim();

  double worst = 0.0;
  for (double g : g_samples) {
    Mat ug = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) ug(i, i) = std::exp(Complex(0, g * sz(i, i).real()));
    // ||u_g psi - e^{igNm} psi||^2 = 2||psi||^2 - 2 Re[e^{-igNm} <psi|u_g|psi>]
    Complex tg;
    if (mps.uniform) {
      Mat mg = transfer_with_operator(mps.site(0), mps.site(0), ug);
      tg = mat_power(mg, mps.n_sites).trace();
    } else {
      const int dim2 = mps.bond_dim() * mps.bond_dim();
      Mat prod = Mat::Identity(dim2, dim2);
      for (int n = 0; n < mps.n_sites; ++n)
        prod = prod * transfer_with_operator(mps.site(n), mps.site(n), ug);
      tg = prod.trace();
    }
    Complex phase = std::exp(Complex(0, -g * mps.n_sites * m));
    double r2 = 2.0 - 2.0 * (phase * tg).real() / z;
    worst = std::max(worst, std::sqrt(std::max(0.0, r2)));
  }
  return worst;
}

std::vector<double> default_g_samples(int count, std::uint64_t seed) {
  // quasi-uniform over (0, 2 pi), jittered so no sample hits a rational angle
  Rng rng(seed);
  std::vector<double> g(count);
  for (int k = 0; k < count; ++k)
    g[k] = 2.0 * M_PI * (k + 0.5 + 0.2 * (rng.uniform() - 0.5)) / count;
  return g;
}

Fraction fractionalize(double m, Spin j, int max_den, double tol) {
  double x = j.value() - m;
  if (x < -tol || x > 2.0 * j.value() + tol)
    throw InputError("fractionalize: J - m outside [0, 2J]");
  x = std::max(0.0, x);

  // best convergent q/p with denominator p <= max_den
  long long num_prev = 1, den_prev = 0;
  long long num_pp = 0, den_pp = 1;
  double rem = x;
  long long best_p = 1, best_q = std::llround(x);
  double best_err = std::abs(x - static_cast<double>(best_q));
  for (int it = 0; it < 64; ++it) {
    long long a = static_cast<long long>(std::floor(rem));
    long long num = a * num_prev + num_pp;
    long long den = a * den_prev + den_pp;
    if (den > max_den) break;
    double err = std::abs(x - static_cast<double>(num) / static_cast<double>(den));
    if (err < best_err) {
      best_err = err;
      best_p = den;
      best_q = num;
    }
    num_pp = num_prev;
    den_pp = den_prev;
    num_prev = num;
    den_prev = den;
    double frac = rem - static_cast<double>(a);
    if (frac < 1e-15) break;
    rem = 1.0 / frac;
  }
  if (best_err > tol)
    throw InputError(fmt::format(
        "fractionalize: no rational with denominator <= {} within {:g} of {:.12g}", max_den, tol, x));
  long long g = gcd_ll(best_p, best_q);
  if (g > 1) {
    best_p /= g;
    best_q /= g;
  }
  if (best_q == 0) best_p = 1;
  return Fraction{static_cast<int>(best_p), static_cast<int>(best_q), best_err};
}

bool lsm_check(Spin j, const Rational& m, int p) {
  // p (J - m) = p (twice_j * den - 2 num) / (2 den)
  long long num = static_cast<long long>(p) * (j.twice * m.den - 2 * m.num);
  long long den = 2 * m.den;
  return num % den == 0;
}

PeriodConsistency period_consistency(const CanonicalForm& cf, int p) {
  if (p < 1) throw InputError("period_consistency: p must be >= 1");
  PeriodConsistency out;
  out.periods = detect_period(cf);
  long long l = p;
  for (int beta : out.periods) {
    if (beta % p != 0) out.all_multiples = false;
    l = lcm_ll(l, beta);
  }
  out.gamma = static_cast<int>(l / p);
  return out;
}

SymmetryReport symmetry_report(const MPS& mps, Spin j, double sym_tol, int max_den) {
  SymmetryReport rep;
  rep.j = j.value();
  rep.m = magnetization(mps, j);
  rep.invariance_residual = u1_invariance(mps, j, default_g_samples());
  rep.symmetric = rep.invariance_residual <= sym_tol;
  if (rep.symmetric) {
    Fraction f = fractionalize(rep.m, j, max_den);
    rep.p = f.p;
    rep.q = f.q;
  } else {
    // no U(1) eigenstate, no fractionalization constraint: trivial bound
    rep.p = 1;
    rep.q = 0;
  }
  if (mps.uniform) {
    CanonicalForm cf = canonicalize(mps.site(0));
    rep.gamma = period_consistency(cf, rep.p).gamma;
  }
  return rep;
}

}  // namespace mpsbounds
