#pragma once

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

namespace subfourier::testing {

inline ::testing::AssertionResult RelNear(double expected, double actual, double rel) {
  const double err = std::abs(expected - actual);
  if (err <= rel * std::abs(expected)) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "expected " << expected << " got " << actual
                                       << " (rel err " << err / std::abs(expected) << ")";
}

inline ::testing::AssertionResult ComplexNear(std::complex<double> expected,
                                              std::complex<double> actual, double rel,
                                              double abs_floor) {
  const double err = std::abs(expected - actual);
  if (err <= rel * std::abs(expected) + abs_floor) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "expected " << expected << " got " << actual
                                       << " (abs err " << err << ")";
}

}  // namespace subfourier::testing
