#pragma once

#include <cstdint>
#include <random>

#include "mpsbounds/types.hpp"

namespace mpsbounds {

// Deterministic random source. Gaussian samples are produced by an explicit
// Box-Muller transform so that a given seed yields the same stream on every
// platform (std::normal_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();                  // [0, 1)
  double normal();                   // standard normal
  Complex cnormal();                 // complex standard normal, E|z|^2 = 1
  std::uint64_t integer() { return eng_(); }

  Mat gaussian(int rows, int cols);  // i.i.d. complex standard normal entries

  // Haar-distributed unitary: QR of a Gaussian matrix with the R diagonal
  // phase-fixed.
  Mat haar_unitary(int n);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mpsbounds
