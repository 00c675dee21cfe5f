#pragma once

#include <string>
#include <vector>

#include "mpsbounds/types.hpp"

namespace mpsbounds {

struct VerifyConfig {
  std::uint64_t seed = 2025;
  double peripheral_tol = 1e-8;
  double sym_tol = 1e-8;
  double pass_tol = 1e-6;
  long region_cap = 1L << 14;
  long state_cap = 1L << 20;
  int restrict_bond_dim = 0;  // 0: run every configured dimension
};

struct CheckResult {
  std::string key;     // stable identifier, e.g. "lemma9"
  std::string name;    // what the check measures
  bool pass = false;
  std::string detail;  // measured vs bound, deterministic formatting
};

// One section per verified statement. Keys:
//   lemma3  orthogonality decay of distinct injective states
//   lemma4  cross purity of block reduced densities
//   lemma5  peripheral period divides N; blocking splits the block
//   lemma6  fractional magnetization arithmetic
//   lemma8  block periods are multiples of p
//   lemma9  projected-channel fixed-point drift <= 2 L delta
//   lemma10 distance chain through sigma_{A,P}
//   lemma11 random tensors reach injectivity at the counting length
//   lemma13 Gram deviation <= D |lambda_2|^n
//   lemma14 boundary channel primitivity and density convergence
//   thm1    fractionalization entropy bound (toys, gauge, blocking, GHZ)
//   appB    truncation distance bounds, both norms, 200-instance sweep
//   thm2    low-entropy truncation pipeline
//   oracle  transfer-contracted reduced densities vs state-vector partial trace
std::vector<std::string> verify_section_keys();

std::vector<CheckResult> run_verify_suite(const VerifyConfig& cfg,
                                          const std::vector<std::string>& only = {});

// Deterministic plain-text rendering, one line per section.
std::string format_results(const std::vector<CheckResult>& results);

CheckResult check_lemma3(const VerifyConfig& cfg);
CheckResult check_lemma4(const VerifyConfig& cfg);
CheckResult check_lemma5(const VerifyConfig& cfg);
CheckResult check_lemma6(const VerifyConfig& cfg);
CheckResult check_lemma8(const VerifyConfig& cfg);
CheckResult check_lemma9(const VerifyConfig& cfg);
CheckResult check_lemma10(const VerifyConfig& cfg);
CheckResult check_lemma11(const VerifyConfig& cfg);
CheckResult check_lemma13(const VerifyConfig& cfg);
CheckResult check_lemma14(const VerifyConfig& cfg);
CheckResult check_thm1(const VerifyConfig& cfg);
CheckResult check_appendix_b(const VerifyConfig& cfg);
CheckResult check_thm2(const VerifyConfig& cfg);
CheckResult check_oracle(const VerifyConfig& cfg);

}  // namespace mpsbounds
