#include "mpsbounds/rng.hpp"

#include <cmath>

namespace mpsbounds {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = gcd_ll(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return (a / gcd_ll(a, b)) * b;
}

double Rng::uniform() {
  // 53-bit mantissa in [0, 1)
  return (eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::cnormal() {
  double re = normal();
  double im = normal();
  return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
}

Mat Rng::gaussian(int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cnormal();
  return m;
}

Mat Rng::haar_unitary(int n) {
  Mat g = gaussian(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex rii = r(i, i);
    double a = std::abs(rii);
    Complex phase = a > 0 ? rii / a : Complex(1, 0);
    q.col(i) *= phase;
  }
  return q;
}

}  // namespace mpsbounds
