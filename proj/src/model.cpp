#include "trizone/model.hpp"

#include <cmath>
#include <cstdio>

#include "trizone/normal_form.hpp"
#include "trizone/unperturbed.hpp"

namespace trizone {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateZone: return "DegenerateZone";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::OutOfAnnulus: return "OutOfAnnulus";
    case ErrorKind::NotASaddle: return "NotASaddle";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::NonInvertibleConvention: return "NonInvertibleConvention";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::SlidingDetected: return "SlidingDetected";
    case ErrorKind::OrbitEscaped: return "OrbitEscaped";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Center: return "center";
    case Side::Right: return "right";
  }
  return "?";
}

const char* to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::SCS: return "SCS";
    case ClassLabel::CCS: return "CCS";
    case ClassLabel::CCC: return "CCC";
  }
  return "?";
}

double ZoneHamiltonian::energy(Point p) const {
  return 0.5 * b * p.y * p.y - 0.5 * c * p.x * p.x + a * p.x * p.y + alpha * p.y - beta * p.x;
}

Point ZoneHamiltonian::field(Point p) const {
  return {a * p.x + b * p.y + alpha, c * p.x - a * p.y + beta};
}

const ZoneHamiltonian& ThreeZoneSystem::zone(Side side) const {
  switch (side) {
    case Side::Left: return left;
    case Side::Center: return center;
    default: return right;
  }
}

const ZonePerturbation& ThreeZoneSystem::perturbation(Side side) const {
  switch (side) {
    case Side::Left: return left_pert;
    case Side::Center: return center_pert;
    default: return right_pert;
  }
}

Point ThreeZoneSystem::field(Side side, Point p) const {
  Point v = zone(side).field(p);
  if (epsilon != 0.0) {
    const ZonePerturbation& q = perturbation(side);
    v.x += epsilon * q.f(p);
    v.y += epsilon * q.g(p);
  }
  return v;
}

ThreeZoneSystem ThreeZoneSystem::with_perturbation(const ZonePerturbation& l,
                                                   const ZonePerturbation& c,
                                                   const ZonePerturbation& r) const {
  ThreeZoneSystem out = *this;
  out.left_pert = l;
  out.center_pert = c;
  out.right_pert = r;
  return out;
}

Side zone_of(double x) {
  if (x < -1.0) return Side::Left;
  if (x > 1.0) return Side::Right;
  return Side::Center;
}

namespace {

Point equilibrium(const ZoneHamiltonian& z) {
  // a x + b y = -alpha, c x - a y = -beta; determinant -(a^2 + b c).
  const double det = -z.discriminant();
  const double x = (-z.alpha * -z.a - z.b * -z.beta) / det;
  const double y = (z.a * -z.beta - z.c * -z.alpha) / det;
  return {x, y};
}

Placement place(double x, Side side) {
  constexpr double tol = 1e-12;
  switch (side) {
    case Side::Left:
      if (std::abs(x + 1.0) <= tol) return Placement::Boundary;
      return x < -1.0 ? Placement::Real : Placement::Virtual;
    case Side::Right:
      if (std::abs(x - 1.0) <= tol) return Placement::Boundary;
      return x > 1.0 ? Placement::Real : Placement::Virtual;
    case Side::Center:
      if (std::abs(std::abs(x) - 1.0) <= tol) return Placement::Boundary;
      return std::abs(x) < 1.0 ? Placement::Real : Placement::Virtual;
  }
  return Placement::Virtual;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace

ZoneKind classify_zone(const ZoneHamiltonian& z, Side side) {
  const double d = z.discriminant();
  if (!std::isfinite(d) || std::abs(d) < kDegeneracyTol) {
    throw Error(ErrorKind::DegenerateZone,
                std::string(to_string(side)) + " zone has a^2 + b c = 0");
  }
  ZoneKind k;
  k.type = d < 0.0 ? EquilibriumType::Center : EquilibriumType::Saddle;
  k.equilibrium = equilibrium(z);
  k.placement = place(k.equilibrium.x, side);
  return k;
}

SystemClass classify_system(const ThreeZoneSystem& sys) {
  const ZoneKind c = classify_zone(sys.center, Side::Center);
  if (c.type != EquilibriumType::Center || c.placement != Placement::Real) {
    throw Error(ErrorKind::HypothesisViolation, "(H1) central subsystem is not a real center");
  }
  const bool ls = classify_zone(sys.left, Side::Left).type == EquilibriumType::Saddle;
  const bool rs = classify_zone(sys.right, Side::Right).type == EquilibriumType::Saddle;
  SystemClass out;
  if (ls && rs) {
    out.label = ClassLabel::SCS;
    // Binding separatrix on the left when its ordinate is strictly smaller.
    const auto tau = [](const ZoneHamiltonian& z, double sign) {
      const double w = std::sqrt(z.discriminant());
      return (z.a * z.a + sign * z.b * z.beta - w * w) / (z.b * w);
    };
    out.reflected = tau(sys.left, +1.0) < tau(sys.right, -1.0) - 1e-10;
  } else if (ls || rs) {
    out.label = ClassLabel::CCS;
    out.reflected = ls;
  } else {
    out.label = ClassLabel::CCC;
  }
  return out;
}

std::array<Point, 4> tangent_points(const ThreeZoneSystem& sys) {
  if (sys.center.b == 0.0 || sys.left.b == 0.0 || sys.right.b == 0.0) {
    throw Error(ErrorKind::DegenerateZone, "tangent points need b != 0 in every zone");
  }
  const ZoneHamiltonian& C = sys.center;
  const ZoneHamiltonian& L = sys.left;
  const ZoneHamiltonian& R = sys.right;
  return {Point{1.0, -(C.a + C.alpha) / C.b}, Point{1.0, -(R.a + R.alpha) / R.b},
          Point{-1.0, (C.a - C.alpha) / C.b}, Point{-1.0, (L.a - L.alpha) / L.b}};
}

HypothesisReport check_hypotheses(const ThreeZoneSystem& sys) {
  HypothesisReport rep;
  try {
    const ZoneKind c = classify_zone(sys.center, Side::Center);
    rep.h1 = c.type == EquilibriumType::Center && c.placement == Placement::Real;
    if (!rep.h1) rep.details.emplace_back("H1: central subsystem is not a real center");
  } catch (const Error& e) {
    rep.details.emplace_back(std::string("H1: ") + e.what());
  }

  bool outer_ok = true;
  for (Side s : {Side::Left, Side::Right}) {
    try {
      const ZoneKind k = classify_zone(sys.zone(s), s);
      if (k.placement == Placement::Boundary) {
        outer_ok = false;
        rep.details.emplace_back(std::string("H3: ") + to_string(s) +
                                 " equilibrium lies on the switching line");
      }
    } catch (const Error& e) {
      outer_ok = false;
      rep.details.emplace_back(std::string("H1: ") + e.what());
    }
  }

  rep.h2 = true;
  if (!(sys.left.b * sys.center.b > 0.0)) {
    rep.h2 = false;
    rep.details.emplace_back(fmt("H2: b_L b_C = %.12g * %.12g is not positive", sys.left.b, sys.center.b));
  }
  if (!(sys.right.b * sys.center.b > 0.0)) {
    rep.h2 = false;
    rep.details.emplace_back(fmt("H2: b_R b_C = %.12g * %.12g is not positive", sys.right.b, sys.center.b));
  }
  if (rep.h2) {
    const auto P = tangent_points(sys);
    if (std::abs(P[0].y - P[1].y) > 1e-10) {
      rep.h2 = false;
      rep.details.emplace_back(fmt("H2: tangent points on x = 1 differ (%.12g vs %.12g)", P[0].y, P[1].y));
    }
    if (std::abs(P[2].y - P[3].y) > 1e-10) {
      rep.h2 = false;
      rep.details.emplace_back(fmt("H2: tangent points on x = -1 differ (%.12g vs %.12g)", P[2].y, P[3].y));
    }
  }

  if (rep.h1 && rep.h2 && outer_ok) {
    try {
      const ThreeZoneSystem nf = to_normal_form(sys).system;
      const AnnulusInterval J = annulus_interval(nf);
      const double probe = std::isinf(J.upper) ? 0.5 : 0.5 * J.upper;
      const auto arcs = orbit_arcs(nf, probe);
      rep.h3 = true;
      for (const OrbitArc& arc : arcs) {
        const Point mid = arc.at(0.5 * arc.flight_time);
        bool ok = false;
        switch (arc.zone) {
          case ArcZone::Right: ok = mid.x > 1.0; break;
          case ArcZone::CenterLower: ok = mid.y < 0.0 && std::abs(mid.x) < 1.0; break;
          case ArcZone::Left: ok = mid.x < -1.0; break;
          case ArcZone::CenterUpper: ok = mid.y > 0.0 && std::abs(mid.x) < 1.0; break;
        }
        const Point end = arc.at(arc.flight_time);
        if (!ok || std::hypot(end.x - arc.end.x, end.y - arc.end.y) > 1e-8) {
          rep.h3 = false;
          rep.details.emplace_back(std::string("H3: probe orbit fails on the ") + to_string(arc.zone) +
                                   " arc");
        }
      }
    } catch (const Error& e) {
      rep.details.emplace_back(std::string("H3: ") + e.what());
    }
  } else if (rep.h1 && rep.h2) {
    rep.details.emplace_back("H3: outer zones not admissible");
  }
  return rep;
}

ZoneHamiltonian reflect(const ZoneHamiltonian& z) { return {z.a, z.b, z.c, -z.alpha, -z.beta}; }

ZonePerturbation reflect(const ZonePerturbation& p) { return {p.p, p.q, -p.r, p.s, p.u, -p.v}; }

ThreeZoneSystem reflect(const ThreeZoneSystem& sys) {
  ThreeZoneSystem out;
  out.left = reflect(sys.right);
  out.center = reflect(sys.center);
  out.right = reflect(sys.left);
  out.left_pert = reflect(sys.right_pert);
  out.center_pert = reflect(sys.center_pert);
  out.right_pert = reflect(sys.left_pert);
  out.epsilon = sys.epsilon;
  return out;
}

}  // namespace trizone
