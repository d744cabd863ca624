// Property self-test: runs the invariants of every module on seeded random
// inputs and reports the worst residual seen for each property.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndlid/bloch.hpp"

namespace ndlid {

enum class SelftestLevel { quick, full };

SelftestLevel parse_selftest_level(const std::string& name);

struct PropertyCheck {
  std::string name;
  std::string relation;  // "<=" or ">": how measured compares to threshold when passing
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

struct SelftestReport {
  std::vector<PropertyCheck> checks;
  double seconds = 0.0;

  bool passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

struct SelftestOptions {
  SelftestLevel level = SelftestLevel::quick;
  std::uint64_t seed = 0;
  // When set, the p = 2 closed form is evaluated with these qubit algebra
  // data instead of the built-in ones (mutation testing).
  const SuAlgebra* qubitAlgebraOverride = nullptr;
  // Runs only the properties whose name contains this text (empty: all).
  std::string filter;
};

SelftestReport run_selftest(const SelftestOptions& options);

/// One line per property: PASS/FAIL, name, measured relation threshold.
std::string format_report(const SelftestReport& report);

}  // namespace ndlid
