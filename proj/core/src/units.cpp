#include "subfourier/units.hpp"

#include <cmath>
#include <numbers>

#include "subfourier/errors.hpp"

namespace subfourier {

double length_factor(const UnitOptions&) { return 1.0; }

double wavenumber_factor(const UnitOptions& units) {
  if (units.profile == UnitProfile::TimeFrequency && units.cyclic) {
    return 1.0 / (2.0 * std::numbers::pi);
  }
  return 1.0;
}

std::string_view profile_name(UnitProfile profile) {
  return profile == UnitProfile::Natural ? "natural" : "thz";
}

std::string_view length_unit(const UnitOptions& units) {
  return units.profile == UnitProfile::Natural ? "length" : "ps";
}

std::string_view wavenumber_unit(const UnitOptions& units) {
  if (units.profile == UnitProfile::Natural) return "1/length";
  return units.cyclic ? "THz (cyclic)" : "THz (angular, rad/ps)";
}

MeasuredComparison compare_measured(double delta, double width) {
  if (!(delta > 0.0) || !(width > 0.0) || !std::isfinite(delta) || !std::isfinite(width)) {
    throw Error(ErrorKind::InvalidRange, "measured shift and width must be positive");
  }
  const double ratio = delta / width;
  return {delta, width, ratio, ratio < 1.0};
}

}  // namespace subfourier
