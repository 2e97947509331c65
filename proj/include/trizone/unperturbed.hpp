#pragma once

#include <array>
#include <limits>
#include <ostream>
#include <vector>

#include "trizone/model.hpp"

namespace trizone {

struct CrossingQuad {
  Point A, A1, A2, A3;
  double h = 0.0;
};

enum class BoundaryKind { HomoclinicLoop, HeteroclinicOrbit, Unbounded };

const char* to_string(BoundaryKind kind);

struct AnnulusInterval {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  BoundaryKind boundary_kind = BoundaryKind::Unbounded;
  int tangency_count_at_zero = 1;

  bool bounded() const { return upper < std::numeric_limits<double>::infinity(); }
  bool contains(double h) const { return h > lower && h < upper; }
};

struct SeparatrixPoints {
  bool has_left = false;
  bool has_right = false;
  Point PLu, PLs, PRu, PRs;
};

/// Exact flow of one linear zone: z(t) = e + (C(t) I + S(t) A)(z0 - e).
class LinearFlow {
 public:
  explicit LinearFlow(const ZoneHamiltonian& z);

  Point at(Point z0, double t) const;
  const ZoneHamiltonian& zone() const { return zone_; }
  Point equilibrium() const { return eq_; }
  bool is_center() const { return lambda_ < 0.0; }
  /// Rotation (center) or hyperbolic (saddle) rate.
  double rate() const { return w_; }

 private:
  ZoneHamiltonian zone_;
  Point eq_;
  double lambda_;
  double w_;
};

enum class ArcZone { Right, CenterLower, Left, CenterUpper };

const char* to_string(ArcZone zone);

struct OrbitArc {
  ArcZone zone = ArcZone::Right;
  Side side = Side::Right;
  Point start, end;
  double flight_time = 0.0;
  LinearFlow flow;

  Point at(double t) const { return flow.at(start, t); }
};

/// Ordinate of the separatrix point P_R^s (right) or P_L^u (left).
double separatrix_ordinate(const ZoneHamiltonian& z, Side side);

CrossingQuad crossing_quad(const ThreeZoneSystem& sys, double h);
AnnulusInterval annulus_interval(const ThreeZoneSystem& sys);
SeparatrixPoints separatrix_points(const ThreeZoneSystem& sys);
/// Flight time in an outer zone from (+/-1, +/-h) back to its line.
double outer_flight_time(const ZoneHamiltonian& z, Side side, double h);
double center_flight_time(double h);
/// R, lower C, L, upper C arcs of the orbit through (1, h).
std::array<OrbitArc, 4> orbit_arcs(const ThreeZoneSystem& sys, double h);

/// Samples each arc with n points; rows "h,zone,t,x,y".
void write_portrait_csv(std::ostream& os, const ThreeZoneSystem& sys,
                        const std::vector<double>& levels, int n);

}  // namespace trizone
