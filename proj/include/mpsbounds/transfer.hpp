#pragma once

#include <optional>
#include <vector>

#include "mpsbounds/mps.hpp"
#include "mpsbounds/types.hpp"

namespace mpsbounds {

inline constexpr double kDefaultPeripheralTol = 1e-8;

// Matrix of X -> sum_i A_i X B_i^dagger on column-major vec(X).
// The diagonal case (B = A) is the usual channel; the mixed case drives
// overlaps between different states.
struct TransferOperator {
  Mat matrix;
  int left_dim = 0;   // bond dimension of A
  int right_dim = 0;  // bond dimension of B
};

struct TransferSpectrum {
  std::vector<Complex> eigenvalues;  // descending modulus
  std::vector<Complex> peripheral;   // modulus within tol of the spectral radius
  double gap = 0.0;                  // 1 - |lambda_2|
  int period = 0;                    // peripheral count
  double peripheral_tol = kDefaultPeripheralTol;
};

TransferOperator transfer_operator(const SiteTensor& a);
TransferOperator transfer_operator(const SiteTensor& a, const SiteTensor& b);

// Transfer matrix with a single-site operator inserted on the ket leg:
// sum_{ij} <j|op|i> kron(conj(B_j), A_i).
Mat transfer_with_operator(const SiteTensor& a, const SiteTensor& b, const Mat& op);

TransferSpectrum spectrum(const TransferOperator& t, double tol = kDefaultPeripheralTol);

// <psi_b | psi_a> for equal length and physical dimension. Uniform pairs use
// tr(E_{A,B}^N) through the spectrum; site-dependent ones contract the chain
// of mixed transfer matrices, which is the same inner product evaluated
// site by site.
Complex overlap(const MPS& a, const MPS& b);

// Smallest L <= l_max with span{A_{i_1}...A_{i_L}} of full dimension D^2
// (singular-value rank of the d^L x D^2 matrix of vectorized products).
// Empty optional: not reached.
std::optional<int> injectivity_length(const SiteTensor& a, int l_max,
                                      double rank_tol = 1e-10, long cap = 1L << 20);

}  // namespace mpsbounds
