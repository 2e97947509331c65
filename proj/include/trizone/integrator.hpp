#pragma once

#include <vector>

#include "trizone/analysis.hpp"
#include "trizone/model.hpp"

namespace trizone {

struct StepControl {
  double rtol = 1e-13;
  double atol = 1e-14;
  double initial_step = 1e-3;
  double max_step = 0.05;
  long max_steps = 2000000;
};

struct CrossingEvent {
  /// -1 or +1: the switching line x = line.
  int line = 1;
  /// +1 rightward, -1 leftward.
  int direction = 1;
  double time = 0.0;
  Point point;
};

struct TrajectorySample {
  double t = 0.0;
  Point p;
  Side zone = Side::Center;
};

enum class TrajectoryStatus { TimeLimit, EventLimit, Tangency, Escaped };

const char* to_string(TrajectoryStatus s);

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<CrossingEvent> events;
  Point final_point;
  double final_time = 0.0;
  Side final_zone = Side::Center;
  TrajectoryStatus status = TrajectoryStatus::TimeLimit;
  long steps = 0;
};

struct IntegrateOptions {
  StepControl control;
  /// Stop after this many crossings; negative means unlimited.
  int max_events = -1;
  bool record = false;
  double escape_radius = 1e6;
};

/// Event-located Dormand-Prince 5(4) integration of the piecewise field.
/// A start on a switching line selects the zone the flow enters.
Trajectory integrate_crossing(const ThreeZoneSystem& sys, Point start, double t_max,
                              const IntegrateOptions& opt = {});

struct PoincareSample {
  double h = 0.0;
  double epsilon = 0.0;
  double d_return = 0.0;
  double h_energy_diff = 0.0;
  long steps = 0;
  std::vector<CrossingEvent> events;
};

/// One revolution from (1, h) back to x = 1.
PoincareSample poincare_sample(const ThreeZoneSystem& sys, double h, double epsilon,
                               const StepControl& control = {});

struct CycleCertificate {
  double h_star = 0.0;
  double epsilon = 0.0;
  double fixed_point_residual = 0.0;
  double multiplier_estimate = 0.0;
  double predicted_h = 0.0;
};

struct CycleSearch {
  std::vector<CycleCertificate> certificates;
  /// Melnikov zeros with no return-map sign change nearby.
  std::vector<double> not_found;
};

inline constexpr double kEpsilonMax = 1e-2;

CycleSearch locate_limit_cycles(const ThreeZoneSystem& sys, double epsilon, const ZeroSet& zeros,
                                const StepControl& control = {});

}  // namespace trizone
