#pragma once

#include <optional>
#include <vector>

#include "mpsbounds/canonical.hpp"
#include "mpsbounds/mps.hpp"
#include "mpsbounds/types.hpp"

namespace mpsbounds {

// Canonical spin-z generator diag(J, J-1, ..., -J); basis index 0 is the
// highest weight.
Mat spin_z_generator(Spin j);

// <J_z>/N with J_z = sum_n s_z^(n), evaluated with one generator insertion in
// the transfer contraction. Requires d = 2J+1 and a nonvanishing state.
double magnetization(const MPS& mps, Spin j, const Mat* generator = nullptr);

// max_g || u_g^N |psi> - e^{igNm} |psi> || / || |psi> || over the sampled
// angles, with u_g = exp(i g s_z) and m from magnetization.
double u1_invariance(const MPS& mps, Spin j, const std::vector<double>& g_samples,
                     const Mat* generator = nullptr);

std::vector<double> default_g_samples(int count = 20, std::uint64_t seed = 71);

struct Fraction {
  int p = 1;
  int q = 0;
  double error = 0.0;
};

// Continued-fraction reconstruction of J - m = q/p with p <= max_den and
// |J - m - q/p| <= tol. The default gate admits one-ulp-scale noise in m
// while still rejecting non-fractional values.
Fraction fractionalize(double m, Spin j, int max_den = 64, double tol = 1e-8);

// p(J - m) integer test, exact rational arithmetic.
bool lsm_check(Spin j, const Rational& m, int p);

struct PeriodConsistency {
  int gamma = 1;
  bool all_multiples = true;
  std::vector<int> periods;
};

// Smallest gamma with every block period dividing gamma*p; flags any period
// that is not a multiple of p.
PeriodConsistency period_consistency(const CanonicalForm& cf, int p);

struct SymmetryReport {
  double j = 0.5;
  double m = 0.0;
  int p = 1;
  int q = 0;
  int gamma = 1;
  double invariance_residual = 0.0;
  bool symmetric = true;
};

SymmetryReport symmetry_report(const MPS& mps, Spin j, double sym_tol = 1e-8,
                               int max_den = 64);

}  // namespace mpsbounds
