#pragma once

#include <string_view>

namespace subfourier {

/// Report-layer relabeling. Natural: (x, k) with hbar = 1. TimeFrequency:
/// x read as time in ps and k as angular frequency in rad/ps, quoted as THz.
/// Ratios are identical in every profile.
enum class UnitProfile { Natural, TimeFrequency };

struct UnitOptions {
  UnitProfile profile = UnitProfile::Natural;
  bool cyclic = false;  ///< divide frequencies by 2 pi (TimeFrequency only)
};

double length_factor(const UnitOptions& units);
double wavenumber_factor(const UnitOptions& units);
std::string_view profile_name(UnitProfile profile);
std::string_view length_unit(const UnitOptions& units);
std::string_view wavenumber_unit(const UnitOptions& units);

/// A measured shift compared with a measured spectral width, both already
/// in the same unit (e.g. the 3.3 THz / 4.0 THz pair of a pulse experiment).
struct MeasuredComparison {
  double delta = 0.0;
  double width = 0.0;
  double ratio = 0.0;
  bool subfourier = false;
};

/// Throws InvalidRange unless both values are positive.
MeasuredComparison compare_measured(double delta, double width);

}  // namespace subfourier
