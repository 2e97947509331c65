#include "trizone/unperturbed.hpp"

#include <cmath>

#include "trizone/normal_form.hpp"
#include "trizone/report.hpp"

namespace trizone {

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::HomoclinicLoop: return "homoclinic";
    case BoundaryKind::HeteroclinicOrbit: return "heteroclinic";
    case BoundaryKind::Unbounded: return "unbounded";
  }
  return "?";
}

const char* to_string(ArcZone zone) {
  switch (zone) {
    case ArcZone::Right: return "R";
    case ArcZone::CenterLower: return "C_lower";
    case ArcZone::Left: return "L";
    case ArcZone::CenterUpper: return "C_upper";
  }
  return "?";
}

LinearFlow::LinearFlow(const ZoneHamiltonian& z) : zone_(z), lambda_(z.discriminant()) {
  if (std::abs(lambda_) < kDegeneracyTol) {
    throw Error(ErrorKind::DegenerateZone, "flow of a degenerate zone");
  }
  w_ = std::sqrt(std::abs(lambda_));
  const double det = -lambda_;
  eq_ = {(z.a * z.alpha + z.b * z.beta) / det, (z.c * z.alpha - z.a * z.beta) / det};
}

Point LinearFlow::at(Point z0, double t) const {
  double C, S;
  if (lambda_ < 0.0) {
    C = std::cos(w_ * t);
    S = std::sin(w_ * t) / w_;
  } else {
    C = std::cosh(w_ * t);
    S = std::sinh(w_ * t) / w_;
  }
  const double dx = z0.x - eq_.x;
  const double dy = z0.y - eq_.y;
  const ZoneHamiltonian& z = zone_;
  return {eq_.x + C * dx + S * (z.a * dx + z.b * dy), eq_.y + C * dy + S * (z.c * dx - z.a * dy)};
}

double separatrix_ordinate(const ZoneHamiltonian& z, Side side) {
  const double lam = z.discriminant();
  if (!(lam > kDegeneracyTol)) throw Error(ErrorKind::NotASaddle, std::string(to_string(side)) + " zone is not a saddle");
  const double w = std::sqrt(lam);
  const double sgn = side == Side::Left ? 1.0 : -1.0;
  return (z.a * z.a + sgn * z.b * z.beta - w * w) / (z.b * w);
}

SeparatrixPoints separatrix_points(const ThreeZoneSystem& sys) {
  SeparatrixPoints sp;
  sp.has_left = sys.left.discriminant() > kDegeneracyTol;
  sp.has_right = sys.right.discriminant() > kDegeneracyTol;
  if (!sp.has_left && !sp.has_right) {
    throw Error(ErrorKind::NotASaddle, "no outer zone is a saddle");
  }
  if (sp.has_left) {
    const double t = separatrix_ordinate(sys.left, Side::Left);
    sp.PLu = {-1.0, t};
    sp.PLs = {-1.0, -t};
  }
  if (sp.has_right) {
    const double t = separatrix_ordinate(sys.right, Side::Right);
    sp.PRs = {1.0, t};
    sp.PRu = {1.0, -t};
  }
  return sp;
}

AnnulusInterval annulus_interval(const ThreeZoneSystem& sys) {
  classify_system(sys);
  AnnulusInterval J;
  double taus[2];
  int ns = 0;
  int real_centers = 0;
  for (Side s : {Side::Left, Side::Right}) {
    const ZoneHamiltonian& z = sys.zone(s);
    const ZoneKind k = classify_zone(z, s);
    if (k.placement == Placement::Boundary) {
      throw Error(ErrorKind::HypothesisViolation,
                  std::string(to_string(s)) + " equilibrium lies on the switching line");
    }
    if (k.type == EquilibriumType::Saddle) {
      const double t = separatrix_ordinate(z, s);
      if (!(t > 0.0)) {
        throw Error(ErrorKind::HypothesisViolation,
                    std::string(to_string(s)) + " separatrix ordinate is not positive");
      }
      taus[ns++] = t;
    } else if (k.placement == Placement::Real) {
      ++real_centers;
    }
  }
  J.tangency_count_at_zero = 1 + real_centers;
  if (ns == 0) return J;
  J.upper = ns == 1 ? taus[0] : std::min(taus[0], taus[1]);
  J.boundary_kind = (ns == 2 && std::abs(taus[0] - taus[1]) <= 1e-10) ? BoundaryKind::HeteroclinicOrbit
                                                                      : BoundaryKind::HomoclinicLoop;
  return J;
}

CrossingQuad crossing_quad(const ThreeZoneSystem& sys, double h) {
  const AnnulusInterval J = annulus_interval(sys);
  if (!J.contains(h)) {
    throw Error(ErrorKind::OutOfAnnulus, "h = " + format_number(h) + " outside J");
  }
  CrossingQuad q{{1.0, h}, {1.0, -h}, {-1.0, -h}, {-1.0, h}, h};
  const auto same = [](double u, double v) { return std::abs(u - v) <= 1e-12 * (1.0 + std::abs(u)); };
  if (!same(sys.right.energy(q.A), sys.right.energy(q.A1)) ||
      !same(sys.center.energy(q.A1), sys.center.energy(q.A2)) ||
      !same(sys.left.energy(q.A2), sys.left.energy(q.A3)) ||
      !same(sys.center.energy(q.A3), sys.center.energy(q.A))) {
    throw Error(ErrorKind::HypothesisViolation, "crossing energies do not match; system not in normal form");
  }
  return q;
}

double center_flight_time(double h) { return std::acos((h * h - 1.0) / (h * h + 1.0)); }

double outer_flight_time(const ZoneHamiltonian& z, Side side, double h) {
  const double lam = z.discriminant();
  const double w = std::sqrt(std::abs(lam));
  const double sgn = side == Side::Left ? 1.0 : -1.0;
  if (lam > 0.0) {
    const double tau = separatrix_ordinate(z, side);
    if (!(h < tau)) throw Error(ErrorKind::OutOfAnnulus, "orbit does not return to the switching line");
    return 2.0 * std::atanh(h / tau) / w;
  }
  const double X = z.a * z.a + sgn * z.b * z.beta + w * w;
  return 2.0 * std::atan2(z.b * w * h, X) / w;
}

std::array<OrbitArc, 4> orbit_arcs(const ThreeZoneSystem& sys, double h) {
  const CrossingQuad q = crossing_quad(sys, h);
  const double tc = center_flight_time(h);
  return {OrbitArc{ArcZone::Right, Side::Right, q.A, q.A1, outer_flight_time(sys.right, Side::Right, h),
                   LinearFlow(sys.right)},
          OrbitArc{ArcZone::CenterLower, Side::Center, q.A1, q.A2, tc, LinearFlow(sys.center)},
          OrbitArc{ArcZone::Left, Side::Left, q.A2, q.A3, outer_flight_time(sys.left, Side::Left, h),
                   LinearFlow(sys.left)},
          OrbitArc{ArcZone::CenterUpper, Side::Center, q.A3, q.A, tc, LinearFlow(sys.center)}};
}

void write_portrait_csv(std::ostream& os, const ThreeZoneSystem& sys,
                        const std::vector<double>& levels, int n) {
  os << "h,zone,t,x,y\n";
  for (double h : levels) {
    for (const OrbitArc& arc : orbit_arcs(sys, h)) {
      for (int i = 0; i < n; ++i) {
        const double t = arc.flight_time * i / (n - 1);
        const Point p = i == n - 1 ? arc.end : arc.at(t);
        os << format_number(h) << ',' << to_string(arc.zone) << ',' << format_number(t) << ','
           << format_number(p.x) << ',' << format_number(p.y) << '\n';
      }
    }
  }
}

}  // namespace trizone
