#pragma once

#include <vector>

#include "mpsbounds/types.hpp"

namespace mpsbounds {

// Matrix of the map X -> A X B^dagger acting on column-major vec(X).
// vec(X)[r + rows*c] = X(r, c); the matrix is kron(conj(B), A).
Mat map_matrix(const Mat& a, const Mat& b);

// M^n by binary exponentiation (n >= 0).
Mat mat_power(const Mat& m, long n);

// Eigenvalues sorted by descending modulus; ties broken by descending real
// part, then descending imaginary part, so output order is reproducible.
std::vector<Complex> sorted_eigenvalues(const Mat& m);

double spectral_radius(const Mat& m);

// Hermitian part (m + m^dagger)/2.
Mat hermitize(const Mat& m);

// Eigenvalues of a Hermitian matrix, descending.
RealVec hermitian_eigs_desc(const Mat& h);

// Schatten norms of a Hermitian matrix.
double trace_norm(const Mat& h);      // sum of |eigenvalues|
double frobenius_norm(const Mat& m);  // entrywise 2-norm
double operator_norm_hermitian(const Mat& h);

// Rearrangement taking the matrix of an environment map (a product of
// chain transfer matrices, D^2 x D^2) to the kernel C with
//   rho = Phi^T * C * conj(Phi),
// where Phi has vec(P_i) as columns. Index identity:
//   C[(a + D a'), (c + D c')] = env[(a' + D c'), (a + D c)].
Mat env_rearrange(const Mat& env, int dim);

// Rearrangement taking a region transfer-matrix product ML = sum_i kron(conj
// P_i, P_i) to the Gram matrix G = Phi Phi^dagger:
//   G[(a + D a'), (c + D c')] = ML[(a + D c), (a' + D c')].
Mat gram_rearrange(const Mat& ml, int dim);

// Least-squares slope/intercept of y against x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double condition_number(const Mat& m);

}  // namespace mpsbounds
