#include "mpsbounds/transfer.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "mpsbounds/linalg.hpp"

namespace mpsbounds {

TransferOperator transfer_operator(const SiteTensor& a) { return transfer_operator(a, a); }

TransferOperator transfer_operator(const SiteTensor& a, const SiteTensor& b) {
  if (a.phys_dim() != b.phys_dim())
    throw InputError("transfer_operator: physical dimensions differ");
  const int da = a.bond_dim();
  const int db = b.bond_dim();
  Mat m = Mat::Zero(da * db, da * db);
  for (int i = 0; i < a.phys_dim(); ++i) m += map_matrix(a[i], b[i]);
  return TransferOperator{std::move(m), da, db};
}

Mat transfer_with_operator(const SiteTensor& a, const SiteTensor& b, const Mat& op) {
  const int d = a.phys_dim();
  if (b.phys_dim() != d || op.rows() != d || op.cols() != d)
    throw InputError("transfer_with_operator: dimension mismatch");
  Mat m = Mat::Zero(a.bond_dim() * b.bond_dim(), a.bond_dim() * b.bond_dim());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex w = op(j, i);
      if (w != Complex(0, 0)) m += w * map_matrix(a[i], b[j]);
    }
  return m;
}

TransferSpectrum spectrum(const TransferOperator& t, double tol) {
  TransferSpectrum s;
  s.peripheral_tol = tol;
  s.eigenvalues = sorted_eigenvalues(t.matrix);
  double radius = s.eigenvalues.empty() ? 0.0 : std::abs(s.eigenvalues.front());
  for (const auto& ev : s.eigenvalues)
    if (std::abs(ev) > radius * (1.0 - tol) && radius > 0.0) s.peripheral.push_back(ev);
  s.period = static_cast<int>(s.peripheral.size());
  double lambda2 = s.eigenvalues.size() > 1 ? std::abs(s.eigenvalues[1]) : 0.0;
  s.gap = 1.0 - lambda2;
  return s;
}

Complex overlap(const MPS& a, const MPS& b) {
  if (a.n_sites != b.n_sites) throw InputError("overlap: states have different length");
  if (a.phys_dim() != b.phys_dim()) throw InputError("overlap: physical dimensions differ");
  if (a.uniform && b.uniform) {
    auto ev = sorted_eigenvalues(transfer_operator(a.site(0), b.site(0)).matrix);
    Complex sum(0, 0);
    for (const auto& lambda : ev) sum += std::pow(lambda, a.n_sites);
    return sum;
  }
  Mat prod = Mat::Identity(a.bond_dim() * b.bond_dim(), a.bond_dim() * b.bond_dim());
  for (int n = 0; n < a.n_sites; ++n)
    prod = prod * transfer_operator(a.site(n), b.site(n)).matrix;
  return prod.trace();
}

std::optional<int> injectivity_length(const SiteTensor& a, int l_max, double rank_tol, long cap) {
  if (l_max < 1) throw InputError("injectivity_length: l_max must be >= 1");
  const int bond = a.bond_dim();
  const int d = a.phys_dim();
  const int d2 = bond * bond;
  std::vector<Mat> prods{Mat::Identity(bond, bond)};
  for (int len = 1; len <= l_max; ++len) {
    if (static_cast<long>(prods.size()) * d > cap)
      throw CapExceeded("injectivity_length: product count exceeds cap");
    std::vector<Mat> next;
    next.reserve(prods.size() * d);
    for (const auto& p : prods)
      for (int i = 0; i < d; ++i) next.push_back(p * a[i]);
    prods = std::move(next);

    Mat span(static_cast<long>(prods.size()), d2);
    for (size_t r = 0; r < prods.size(); ++r)
      span.row(static_cast<long>(r)) = Eigen::Map<const Vec>(prods[r].data(), d2).transpose();
    Eigen::JacobiSVD<Mat> svd(span);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > rank_tol * smax) ++rank;
    if (rank == d2) return len;
  }
  return std::nullopt;
}

}  // namespace mpsbounds
