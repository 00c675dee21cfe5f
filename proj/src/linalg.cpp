#include "mpsbounds/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace mpsbounds {

Mat map_matrix(const Mat& a, const Mat& b) {
  return Eigen::kroneckerProduct(b.conjugate(), a);
}

Mat mat_power(const Mat& m, long n) {
  if (n < 0) throw InputError("mat_power: negative exponent");
  Mat result = Mat::Identity(m.rows(), m.cols());
  Mat base = m;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::vector<Complex> sorted_eigenvalues(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::stable_sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
    double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax > ay;
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return ev;
}

double spectral_radius(const Mat& m) {
  auto ev = sorted_eigenvalues(m);
  return ev.empty() ? 0.0 : std::abs(ev.front());
}

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

RealVec hermitian_eigs_desc(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return es.eigenvalues().reverse();
}

double trace_norm(const Mat& h) {
  RealVec ev = hermitian_eigs_desc(hermitize(h));
  return ev.cwiseAbs().sum();
}

double frobenius_norm(const Mat& m) { return m.norm(); }

double operator_norm_hermitian(const Mat& h) {
  RealVec ev = hermitian_eigs_desc(hermitize(h));
  double top = 0.0;
  for (int i = 0; i < ev.size(); ++i) top = std::max(top, std::abs(ev(i)));
  return top;
}

Mat env_rearrange(const Mat& env, int dim) {
  const int d2 = dim * dim;
  if (env.rows() != d2 || env.cols() != d2) throw InputError("env_rearrange: size mismatch");
  Mat c(d2, d2);
  for (int a = 0; a < dim; ++a)
    for (int ap = 0; ap < dim; ++ap)
      for (int cc = 0; cc < dim; ++cc)
        for (int cp = 0; cp < dim; ++cp)
          c(a + dim * ap, cc + dim * cp) = env(ap + dim * cp, a + dim * cc);
  return c;
}

Mat gram_rearrange(const Mat& ml, int dim) {
  const int d2 = dim * dim;
  if (ml.rows() != d2 || ml.cols() != d2) throw InputError("gram_rearrange: size mismatch");
  Mat g(d2, d2);
  for (int a = 0; a < dim; ++a)
    for (int ap = 0; ap < dim; ++ap)
      for (int cc = 0; cc < dim; ++cc)
        for (int cp = 0; cp < dim; ++cp)
          g(a + dim * ap, cc + dim * cp) = ml(a + dim * cc, ap + dim * cp);
  return g;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_line: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace mpsbounds
