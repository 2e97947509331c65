#pragma once

#include <array>
#include <string>
#include <vector>

#include "trizone/error.hpp"

namespace trizone {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Side { Left, Center, Right };

const char* to_string(Side side);

/// Quadratic Hamiltonian of one zone:
///   H(x, y) = b/2 y^2 - c/2 x^2 + a x y + alpha y - beta x
/// generating x' = H_y = a x + b y + alpha, y' = -H_x = c x - a y + beta.
struct ZoneHamiltonian {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// a^2 + b c; negative for a center, positive for a saddle.
  double discriminant() const { return a * a + b * c; }
  double energy(Point p) const;
  Point field(Point p) const;
};

/// Linear perturbation f = p x + q y + r, g = s x + u y + v of one zone.
struct ZonePerturbation {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;
  double u = 0.0;
  double v = 0.0;

  double f(Point pt) const { return p * pt.x + q * pt.y + r; }
  double g(Point pt) const { return s * pt.x + u * pt.y + v; }
  ZonePerturbation scaled(double k) const { return {k * p, k * q, k * r, k * s, k * u, k * v}; }
};

/// Three-zone system separated by x = -1 and x = +1.
struct ThreeZoneSystem {
  ZoneHamiltonian left;
  ZoneHamiltonian center;
  ZoneHamiltonian right;
  ZonePerturbation left_pert;
  ZonePerturbation center_pert;
  ZonePerturbation right_pert;
  double epsilon = 0.0;

  const ZoneHamiltonian& zone(Side side) const;
  const ZonePerturbation& perturbation(Side side) const;

  /// Perturbed vector field of the given zone (epsilon applied).
  Point field(Side side, Point p) const;
  ThreeZoneSystem with_perturbation(const ZonePerturbation& l, const ZonePerturbation& c,
                                    const ZonePerturbation& r) const;
};

/// Zone of the plane containing x; points on a line belong to no open zone,
/// callers decide by flow direction.
Side zone_of(double x);

enum class EquilibriumType { Center, Saddle };
enum class Placement { Real, Virtual, Boundary };

struct ZoneKind {
  EquilibriumType type = EquilibriumType::Center;
  Placement placement = Placement::Real;
  Point equilibrium;
};

enum class ClassLabel { SCS, CCS, CCC };

const char* to_string(ClassLabel label);

struct SystemClass {
  ClassLabel label = ClassLabel::CCC;
  /// True when the binding saddle sits on the left, i.e. the canonical
  /// orientation is obtained through reflect().
  bool reflected = false;
};

struct HypothesisReport {
  bool h1 = false;
  bool h2 = false;
  bool h3 = false;
  std::vector<std::string> details;

  bool all() const { return h1 && h2 && h3; }
};

inline constexpr double kDegeneracyTol = 1e-12;

ZoneKind classify_zone(const ZoneHamiltonian& z, Side side);
SystemClass classify_system(const ThreeZoneSystem& sys);
HypothesisReport check_hypotheses(const ThreeZoneSystem& sys);

/// P1, P2 on x = 1 (central and right tangencies), P3, P4 on x = -1
/// (central and left tangencies).
std::array<Point, 4> tangent_points(const ThreeZoneSystem& sys);

/// Point reflection (x, y) -> (-x, -y) with the left and right zones
/// exchanged. Keeps the lines x = +/-1 and the clockwise orientation.
ThreeZoneSystem reflect(const ThreeZoneSystem& sys);
ZoneHamiltonian reflect(const ZoneHamiltonian& z);
ZonePerturbation reflect(const ZonePerturbation& p);

}  // namespace trizone
