#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace subfourier::cli {

struct VerifyOptions {
  std::uint64_t seed = 20070209;
  /// Test hook: every closed-form value is scaled by (1 + kernel_perturbation)
  /// before it is compared with the oracle.
  double kernel_perturbation = 0.0;
};

struct CheckResult {
  std::string name;
  double value = 0.0;      ///< worst error (or the quantity being bounded)
  double threshold = 0.0;
  bool lower_bound = false;  ///< pass iff value > threshold instead of value <= threshold
  bool passed = false;
};

/// Wavenumber widths for one cat under the three competing closed forms. A
/// negative variance is recorded as NaN.
struct DeltaKComparison {
  double alpha_over_sigma = 0.0;
  double sigma = 1.0;
  double quadrature = 0.0;
  double kernel_form = 0.0;
  double printed_second_moment = 0.0;
  double printed_width = 0.0;
  double printed_product = 0.0;
  double kernel_product = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<DeltaKComparison> delta_k_table;
  std::vector<std::string> surviving_variants;

  bool all_passed() const;
};

VerifyReport run_verification(const VerifyOptions& options);
void print_verification(const VerifyReport& report, std::ostream& out);

}  // namespace subfourier::cli
