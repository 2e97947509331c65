#include "trizone/integrator.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>

#include "trizone/report.hpp"
#include "trizone/unperturbed.hpp"

namespace trizone {

const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::TimeLimit: return "time-limit";
    case TrajectoryStatus::EventLimit: return "event-limit";
    case TrajectoryStatus::Tangency: return "tangency";
    case TrajectoryStatus::Escaped: return "escaped";
  }
  return "?";
}

namespace {

constexpr double kTangencyTol = 1e-10;
constexpr double kOnLineTol = 1e-12;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Step {
  Point y;
  Point err;
};

// Linear fields are autonomous; time does not enter the stages.
Step dp5(const ThreeZoneSystem& sys, Side zone, Point y, double h) {
  auto F = [&](Point p) { return sys.field(zone, p); };
  const Point k1 = F(y);
  const Point k2 = F(Point{y.x + h * a21 * k1.x, y.y + h * a21 * k1.y});
  const Point k3 = F(Point{y.x + h * (a31 * k1.x + a32 * k2.x), y.y + h * (a31 * k1.y + a32 * k2.y)});
  const Point k4 = F(Point{y.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
                           y.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y)});
  const Point k5 = F(Point{y.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                           y.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y)});
  const Point k6 = F(Point{y.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x + a65 * k5.x),
                           y.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y)});
  Point yn{y.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x),
           y.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y)};
  const Point k7 = F(yn);
  Point err{h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x),
            h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y)};
  return {yn, err};
}

// Crossing a zone can end on: line value and the sign of x - line before it.
struct Exit {
  int line;
  int direction;
};

int exits(Side zone, Exit out[2]) {
  switch (zone) {
    case Side::Right: out[0] = {1, -1}; return 1;
    case Side::Left: out[0] = {-1, 1}; return 1;
    case Side::Center: out[0] = {1, 1}; out[1] = {-1, -1}; return 2;
  }
  return 0;
}

Side next_zone(Side zone, const Exit& e) {
  if (zone == Side::Center) return e.line > 0 ? Side::Right : Side::Left;
  return Side::Center;
}

bool crosses(const Exit& e, double x0, double x1) {
  const double g0 = x0 - e.line;
  const double g1 = x1 - e.line;
  return e.direction > 0 ? (g0 < 0.0 && g1 >= 0.0) : (g0 > 0.0 && g1 <= 0.0);
}

}  // namespace

Trajectory integrate_crossing(const ThreeZoneSystem& sys, Point start, double t_max,
                              const IntegrateOptions& opt) {
  Trajectory tr;
  const StepControl& ctl = opt.control;
  Side zone = zone_of(start.x);
  for (int line : {-1, 1}) {
    if (std::abs(start.x - line) > kOnLineTol) continue;
    const Side outer = line > 0 ? Side::Right : Side::Left;
    const double vo = sys.field(outer, start).x;
    const double vc = sys.field(Side::Center, start).x;
    if (std::abs(vo) < kTangencyTol || std::abs(vc) < kTangencyTol) {
      tr.status = TrajectoryStatus::Tangency;
      tr.final_point = start;
      tr.final_zone = zone;
      return tr;
    }
    if (vo * vc <= 0.0) throw Error(ErrorKind::SlidingDetected, "start on a sliding or escaping segment");
    // Flow pointing outward (away from the center strip) enters the outer zone.
    zone = (vo * line > 0.0) ? outer : Side::Center;
  }

  double t = 0.0;
  Point y = start;
  double h = std::min(ctl.initial_step, ctl.max_step);
  if (opt.record) tr.samples.push_back({t, y, zone});
  Exit ex[2];

  while (t < t_max) {
    if (tr.steps >= ctl.max_steps) throw Error(ErrorKind::StepFailure, "step budget exhausted");
    h = std::min(h, t_max - t);
    const Step s = dp5(sys, zone, y, h);
    const double sx = ctl.atol + ctl.rtol * std::max(std::abs(y.x), std::abs(s.y.x));
    const double sy = ctl.atol + ctl.rtol * std::max(std::abs(y.y), std::abs(s.y.y));
    const double err = std::sqrt(0.5 * ((s.err.x / sx) * (s.err.x / sx) + (s.err.y / sy) * (s.err.y / sy)));
    if (!std::isfinite(err)) throw Error(ErrorKind::StepFailure, "non-finite step error");
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err > 1.0) {
      h *= fac;
      if (h < 1e-14 * std::max(1.0, t)) throw Error(ErrorKind::StepFailure, "step size underflow");
      continue;
    }
    ++tr.steps;

    // Earliest exit crossed within this step.
    const int ne = exits(zone, ex);
    int hit = -1;
    double t_hit = h;
    Point y_hit = s.y;
    for (int k = 0; k < ne; ++k) {
      if (!crosses(ex[k], y.x, s.y.x)) continue;
      const Exit e = ex[k];
      const auto g = [&](double tau) { return dp5(sys, zone, y, tau).y.x - e.line; };
      std::uintmax_t iters = 100;
      const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::max(1.0, std::abs(b)); };
      const auto r = boost::math::tools::toms748_solve(g, 0.0, h, y.x - e.line, s.y.x - e.line, tol, iters);
      if (r.second <= t_hit) {
        hit = k;
        t_hit = r.second;
        y_hit = dp5(sys, zone, y, r.second).y;
      }
    }

    if (hit < 0) {
      t += h;
      y = s.y;
      if (opt.record) tr.samples.push_back({t, y, zone});
    } else {
      const Exit e = ex[hit];
      t += t_hit;
      y = y_hit;
      const Side nz = next_zone(zone, e);
      const double v_old = sys.field(zone, y).x;
      const double v_new = sys.field(nz, y).x;
      if (opt.record) tr.samples.push_back({t, y, zone});
      if (std::abs(v_old) < kTangencyTol) {
        tr.status = TrajectoryStatus::Tangency;
        tr.final_point = y;
        tr.final_time = t;
        tr.final_zone = zone;
        return tr;
      }
      if (v_old * v_new <= 0.0) {
        throw Error(ErrorKind::SlidingDetected, "crossing condition fails at x = " + format_number(e.line) +
                                                    ", y = " + format_number(y.y));
      }
      tr.events.push_back({e.line, e.direction, t, y});
      zone = nz;
      if (opt.max_events >= 0 && static_cast<int>(tr.events.size()) >= opt.max_events) {
        tr.status = TrajectoryStatus::EventLimit;
        tr.final_point = y;
        tr.final_time = t;
        tr.final_zone = zone;
        return tr;
      }
    }
    if (std::abs(y.x) > opt.escape_radius || std::abs(y.y) > opt.escape_radius) {
      tr.status = TrajectoryStatus::Escaped;
      tr.final_point = y;
      tr.final_time = t;
      tr.final_zone = zone;
      return tr;
    }
    h = std::min(h * fac, ctl.max_step);
  }
  tr.status = TrajectoryStatus::TimeLimit;
  tr.final_point = y;
  tr.final_time = t;
  tr.final_zone = zone;
  return tr;
}

PoincareSample poincare_sample(const ThreeZoneSystem& sys, double h, double epsilon,
                               const StepControl& control) {
  if (!(epsilon >= 0.0) || epsilon > kEpsilonMax) {
    throw Error(ErrorKind::InvalidArgument, "epsilon " + format_number(epsilon) + " outside [0, eps_max]");
  }
  ThreeZoneSystem s = sys;
  s.epsilon = epsilon;
  IntegrateOptions opt;
  opt.control = control;
  opt.max_events = 4;
  const Point A{1.0, h};
  const Trajectory tr = integrate_crossing(s, A, 1e4, opt);
  static constexpr int kLines[4] = {1, -1, -1, 1};
  static constexpr int kDirs[4] = {-1, -1, 1, 1};
  bool ok = tr.status == TrajectoryStatus::EventLimit && tr.events.size() == 4;
  for (std::size_t i = 0; ok && i < 4; ++i) {
    ok = tr.events[i].line == kLines[i] && tr.events[i].direction == kDirs[i];
  }
  if (!ok) {
    throw Error(ErrorKind::OrbitEscaped, "orbit through h = " + format_number(h) + " did not complete a revolution (" +
                                             to_string(tr.status) + ")");
  }
  PoincareSample ps;
  ps.h = h;
  ps.epsilon = epsilon;
  ps.steps = tr.steps;
  ps.events = tr.events;
  const Point D = tr.final_point;
  ps.d_return = D.y - h;
  ps.h_energy_diff = sys.right.energy(D) - sys.right.energy(A);
  return ps;
}

CycleSearch locate_limit_cycles(const ThreeZoneSystem& sys, double epsilon, const ZeroSet& zeros,
                                const StepControl& control) {
  if (!(epsilon > 0.0) || epsilon > kEpsilonMax) {
    throw Error(ErrorKind::InvalidArgument, "epsilon " + format_number(epsilon) + " outside (0, eps_max]");
  }
  CycleSearch out;
  const AnnulusInterval J = annulus_interval(sys);
  const double span = J.bounded() ? J.upper - J.lower : zeros.scan_hi - zeros.scan_lo;
  const double guard = 1e-6 * span;
  const double lo_lim = J.lower + guard;
  const double hi_lim = J.bounded() ? J.upper - guard : std::numeric_limits<double>::infinity();
  const auto d = [&](double h) { return poincare_sample(sys, h, epsilon, control).d_return; };

  for (std::size_t i = 0; i < zeros.zeros.size(); ++i) {
    const double hz = zeros.zeros[i].h;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < zeros.zeros.size(); ++j) {
      if (j != i) nearest = std::min(nearest, std::abs(zeros.zeros[j].h - hz));
    }
    double delta = std::min(0.05 * span, 0.45 * nearest);
    bool found = false;
    try {
      for (int widen = 0; widen <= 4 && !found; ++widen, delta *= 2.0) {
        const double a = std::max(hz - delta, lo_lim);
        const double b = std::min(hz + delta, hi_lim);
        const double da = d(a);
        const double db = d(b);
        if (da * db > 0.0) continue;
        std::uintmax_t iters = 80;
        const auto tol = [](double u, double v) { return std::abs(v - u) <= 1e-12 * std::max(1.0, std::abs(u)); };
        const auto r = boost::math::tools::toms748_solve(d, a, b, da, db, tol, iters);
        const double hs = 0.5 * (r.first + r.second);
        CycleCertificate c;
        c.h_star = hs;
        c.epsilon = epsilon;
        c.fixed_point_residual = std::abs(d(hs));
        const double st = 1e-5 * std::max(1.0, hs);
        c.multiplier_estimate = 1.0 + (d(hs + st) - d(hs - st)) / (2.0 * st);
        c.predicted_h = hz;
        out.certificates.push_back(c);
        found = true;
      }
    } catch (const Error&) {
      found = false;
    }
    if (!found) out.not_found.push_back(hz);
  }
  return out;
}

}  // namespace trizone
