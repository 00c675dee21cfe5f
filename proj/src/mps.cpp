#include "mpsbounds/mps.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mpsbounds/linalg.hpp"

namespace mpsbounds {

SiteTensor::SiteTensor(std::vector<Mat> k) : kraus(std::move(k)) {
  if (kraus.empty()) throw InputError("site tensor needs at least one Kraus matrix");
  const auto rows = kraus[0].rows();
  const auto cols = kraus[0].cols();
  if (rows < 1 || rows != cols) throw InputError("Kraus matrices must be square and nonempty");
  for (const auto& m : kraus)
    if (m.rows() != rows || m.cols() != cols)
      throw InputError("all Kraus matrices of a site must share one shape");
}

bool SiteTensor::is_zero(double tol) const {
  for (const auto& m : kraus)
    if (m.cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

MPS build_uniform(const std::vector<Mat>& kraus, int n_sites) {
  if (n_sites < 1) throw InputError("n_sites must be >= 1");
  SiteTensor t(kraus);
  if (t.is_zero()) throw InputError("site tensor is identically zero");
  MPS mps;
  mps.sites.push_back(std::move(t));
  mps.n_sites = n_sites;
  mps.uniform = true;
  return mps;
}

MPS build_site_dependent(std::vector<SiteTensor> sites) {
  if (sites.empty()) throw InputError("need at least one site");
  const int d = sites[0].phys_dim();
  const int bond = sites[0].bond_dim();
  for (const auto& s : sites) {
    if (s.phys_dim() != d) throw InputError("sites disagree on physical dimension");
    if (s.bond_dim() != bond) throw InputError("adjacent bond dimensions must match");
  }
  MPS mps;
  mps.n_sites = static_cast<int>(sites.size());
  mps.sites = std::move(sites);
  mps.uniform = false;
  return mps;
}

namespace {

void state_vector_rec(const MPS& mps, int site, const Mat& prefix, long index, long stride, Vec& out) {
  const SiteTensor& t = mps.site(site);
  const int d = t.phys_dim();
  const long sub = stride / d;
  if (site + 1 == mps.n_sites) {
    for (int i = 0; i < d; ++i) out(index + i * sub) = (prefix * t[i]).trace();
    return;
  }
  for (int i = 0; i < d; ++i)
    state_vector_rec(mps, site + 1, prefix * t[i], index + i * sub, sub, out);
}

}  // namespace

Vec to_state_vector(const MPS& mps, long cap) {
  const int d = mps.phys_dim();
  double logdim = mps.n_sites * std::log2(static_cast<double>(d));
  if (logdim > std::log2(static_cast<double>(cap)) + 1e-9)
    throw CapExceeded(fmt::format("state vector dimension {}^{} exceeds cap {}", d, mps.n_sites, cap));
  long dim = 1;
  for (int n = 0; n < mps.n_sites; ++n) dim *= d;
  Vec out(dim);
  state_vector_rec(mps, 0, Mat::Identity(mps.bond_dim(), mps.bond_dim()), 0, dim, out);
  return out;
}

MPS apply_gauge(const MPS& mps, const Mat& x, double cond_limit) {
  const int bond = mps.bond_dim();
  if (x.rows() != bond || x.cols() != bond) throw InputError("gauge matrix has wrong shape");
  double cond = condition_number(x);
  if (!(cond < cond_limit))
    throw InputError(fmt::format("gauge matrix is singular or ill-conditioned (cond = {:.3e})", cond));
  Mat xinv = x.partialPivLu().solve(Mat::Identity(bond, bond));
  MPS out = mps;
  for (auto& site : out.sites)
    for (auto& m : site.kraus) m = x * m * xinv;
  return out;
}

MPS block_sites(const MPS& mps, int p) {
  if (p < 1) throw InputError("block size must be >= 1");
  if (mps.n_sites % p != 0) throw InputError("block size must divide the number of sites");
  if (p == 1) return mps;
  const int d = mps.phys_dim();
  long dp = 1;
  for (int k = 0; k < p; ++k) {
    dp *= d;
    if (dp > (1L << 24)) throw CapExceeded("blocked physical dimension too large");
  }

  auto block_at = [&](int first) {
    std::vector<Mat> prods = region_products(mps, first, p, dp);
    return SiteTensor(std::move(prods));
  };

  MPS out;
  out.n_sites = mps.n_sites / p;
  if (mps.uniform) {
    out.uniform = true;
    out.sites.push_back(block_at(0));
  } else {
    out.uniform = false;
    for (int b = 0; b < out.n_sites; ++b) out.sites.push_back(block_at(b * p));
  }
  return out;
}

MPS toy_fractional_mps(int p, int q, int n_sites) {
  if (p < 2 || q < 1 || q >= p) throw InputError("need 1 <= q < p");
  if (gcd_ll(p, q) != 1) throw InputError("p and q must be coprime");
  if (n_sites % p != 0) throw InputError("p must divide the number of sites");
  Mat up = Mat::Zero(p, p);
  Mat down = Mat::Zero(p, p);
  for (int i = 0; i < q; ++i) down(i, (i + 1) % p) = 1.0;
  for (int i = q; i < p; ++i) up(i, (i + 1) % p) = 1.0;
  return build_uniform({up, down}, n_sites);
}

std::vector<Mat> region_products(const MPS& mps, int first, int len, long cap) {
  if (len < 0 || first < 0 || first + len > mps.n_sites) throw InputError("region out of range");
  const int bond = mps.bond_dim();
  const int d = mps.phys_dim();
  std::vector<Mat> prods{Mat::Identity(bond, bond)};
  for (int n = first; n < first + len; ++n) {
    if (static_cast<long>(prods.size()) * d > cap)
      throw CapExceeded(fmt::format("region dimension {}^{} exceeds cap {}", d, len, cap));
    const SiteTensor& t = mps.site(n);
    std::vector<Mat> next;
    next.reserve(prods.size() * d);
    for (const auto& pmat : prods)
      for (int i = 0; i < d; ++i) next.push_back(pmat * t[i]);
    prods = std::move(next);
  }
  return prods;
}

}  // namespace mpsbounds
