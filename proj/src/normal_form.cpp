#include "trizone/normal_form.hpp"

#include <cmath>

namespace trizone {

Point AffineMap::inverse(Point q) const {
  const double d = det();
  const double x = q.x - tx;
  const double y = q.y - ty;
  return {(m22 * x - m12 * y) / d, (-m21 * x + m11 * y) / d};
}

namespace {

// A u^2 + B u v + C v^2 + D u + E v (constant dropped).
struct Quadratic {
  double A = 0, B = 0, C = 0, D = 0, E = 0;
};

Quadratic as_quadratic(const ZoneHamiltonian& z) {
  return {-0.5 * z.c, z.a, 0.5 * z.b, -z.beta, z.alpha};
}

ZoneHamiltonian from_quadratic(const Quadratic& q) {
  return {q.B, 2.0 * q.C, -2.0 * q.A, q.E, -q.D};
}

Quadratic compose(const Quadratic& q, const AffineMap& m) {
  // x = m11 u + m12 v + tx, y = m21 u + m22 v + ty.
  Quadratic r;
  r.A = q.A * m.m11 * m.m11 + q.B * m.m11 * m.m21 + q.C * m.m21 * m.m21;
  r.B = 2.0 * q.A * m.m11 * m.m12 + q.B * (m.m11 * m.m22 + m.m12 * m.m21) + 2.0 * q.C * m.m21 * m.m22;
  r.C = q.A * m.m12 * m.m12 + q.B * m.m12 * m.m22 + q.C * m.m22 * m.m22;
  const double dx = 2.0 * q.A * m.tx + q.B * m.ty + q.D;  // partial in x at the offset
  const double dy = q.B * m.tx + 2.0 * q.C * m.ty + q.E;
  r.D = dx * m.m11 + dy * m.m21;
  r.E = dx * m.m12 + dy * m.m22;
  return r;
}

// New perturbation (f~, g~) = M^{-1} (f, g) / w composed with the map.
ZonePerturbation transform(const ZonePerturbation& p, const AffineMap& m, double a, double b,
                           double w) {
  auto lin = [&](double cx, double cy, double c0, double& nu, double& nv, double& n0) {
    nu = cx * m.m11 + cy * m.m21;
    nv = cx * m.m12 + cy * m.m22;
    n0 = cx * m.tx + cy * m.ty + c0;
  };
  double fu, fv, f0, gu, gv, g0;
  lin(p.p, p.q, p.r, fu, fv, f0);
  lin(p.s, p.u, p.v, gu, gv, g0);
  ZonePerturbation out;
  out.p = fu / w;
  out.q = fv / w;
  out.r = f0 / w;
  out.s = (a * fu + b * gu) / (w * w);
  out.u = (a * fv + b * gv) / (w * w);
  out.v = (a * f0 + b * g0) / (w * w);
  return out;
}

double clean(double v) { return std::abs(v) < 1e-14 ? 0.0 : v; }

ZoneHamiltonian clean(ZoneHamiltonian z) {
  return {clean(z.a), clean(z.b), clean(z.c), clean(z.alpha), clean(z.beta)};
}

}  // namespace

ZoneHamiltonian pull_back(const ZoneHamiltonian& z, const AffineMap& m, double k) {
  Quadratic q = compose(as_quadratic(z), m);
  q.A *= k;
  q.B *= k;
  q.C *= k;
  q.D *= k;
  q.E *= k;
  return from_quadratic(q);
}

NormalFormResult to_normal_form(const ThreeZoneSystem& sys) {
  const ZoneHamiltonian& C = sys.center;
  const ZoneKind ck = classify_zone(C, Side::Center);
  if (ck.type != EquilibriumType::Center) {
    throw Error(ErrorKind::HypothesisViolation, "(H1) central subsystem is not a center");
  }
  if (!(C.b > 0.0) || !(sys.left.b > 0.0) || !(sys.right.b > 0.0)) {
    throw Error(ErrorKind::HypothesisViolation, "normal form needs b > 0 in every zone");
  }
  const auto P = tangent_points(sys);
  if (std::abs(P[0].y - P[1].y) > 1e-10 || std::abs(P[2].y - P[3].y) > 1e-10) {
    throw Error(ErrorKind::HypothesisViolation, "tangent points do not coincide");
  }
  if (std::abs(ck.equilibrium.x) > 1e-10) {
    throw Error(ErrorKind::HypothesisViolation,
                "central equilibrium is off x = 0; no translation fixing x = +/-1 centers it");
  }

  const double w = std::sqrt(-C.discriminant());
  AffineMap m;
  m.m11 = 1.0;
  m.m12 = 0.0;
  m.m21 = -C.a / C.b;
  m.m22 = w / C.b;
  m.tx = 0.0;
  m.ty = ck.equilibrium.y;

  const double k = C.b / (w * w);
  NormalFormResult res;
  res.transform = m;
  res.time_scale = w;
  ThreeZoneSystem& out = res.system;
  out.left = clean(pull_back(sys.left, m, k));
  out.center = clean(pull_back(C, m, k));
  out.right = clean(pull_back(sys.right, m, k));
  out.left_pert = transform(sys.left_pert, m, C.a, C.b, w);
  out.center_pert = transform(sys.center_pert, m, C.a, C.b, w);
  out.right_pert = transform(sys.right_pert, m, C.a, C.b, w);
  out.epsilon = sys.epsilon;
  return res;
}

bool verify_normal_form(const ThreeZoneSystem& sys, double tol) {
  const ZoneHamiltonian& C = sys.center;
  const bool center = std::abs(C.a) <= tol && std::abs(C.b - 1.0) <= tol &&
                      std::abs(C.c + 1.0) <= tol && std::abs(C.alpha) <= tol &&
                      std::abs(C.beta) <= tol;
  return center && std::abs(sys.left.alpha - sys.left.a) <= tol &&
         std::abs(sys.right.alpha + sys.right.a) <= tol && sys.left.b > 0.0 && sys.right.b > 0.0;
}

}  // namespace trizone
