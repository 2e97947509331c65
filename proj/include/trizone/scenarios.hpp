#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trizone/melnikov.hpp"

namespace trizone {

struct WronskianReference {
  double h = 0.0;
  double value = 0.0;
  /// Half a unit in the last printed digit.
  double tolerance = 0.0;
  std::vector<BasisFunction> funcs;
};

struct Scenario {
  std::string name;
  std::string description;
  ThreeZoneSystem system;
  ClassLabel label = ClassLabel::CCC;
  /// Number of limit cycles the configuration is known to admit.
  int cycles = 3;
  std::vector<double> targets;
  WronskianReference wronskian;
};

const std::vector<Scenario>& scenarios();
std::optional<Scenario> find_scenario(const std::string& name);

}  // namespace trizone
