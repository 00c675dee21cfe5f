#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mpsbounds {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Input that violates a documented precondition (bad shapes, bad flags, ...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (state-vector or region dimension) would be exceeded.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The block decomposition could not be completed on this input.
struct CanonicalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Half-integer spin; stored as 2J so that J=1/2 is exact.
struct Spin {
  int twice = 1;

  constexpr Spin() = default;
  constexpr explicit Spin(int twice_j) : twice(twice_j) {
    if (twice_j < 0) throw InputError("spin must be nonnegative");
  }

  static constexpr Spin half() { return Spin(1); }
  static Spin from_dim(int d) {
    if (d < 1) throw InputError("physical dimension must be positive");
    return Spin(d - 1);
  }

  double value() const { return 0.5 * twice; }
  int dim() const { return twice + 1; }
};

// Exact rational, used for the arithmetic symmetry checks.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);

}  // namespace mpsbounds
