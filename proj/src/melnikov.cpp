#include "trizone/melnikov.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "trizone/normal_form.hpp"
#include "trizone/report.hpp"

namespace trizone {

const char* to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::F0: return "f0";
    case BasisKind::FCC: return "fCC";
    case BasisKind::FRC: return "fRC";
    case BasisKind::FLC: return "fLC";
    case BasisKind::FRS: return "fRS";
    case BasisKind::FLS: return "fLS";
  }
  return "?";
}

BasisFunction BasisFunction::outer(const ZoneHamiltonian& z, Side side) {
  const double lam = z.discriminant();
  if (std::abs(lam) < kDegeneracyTol) throw Error(ErrorKind::DegenerateZone, "outer zone is degenerate");
  BasisFunction f;
  const bool saddle = lam > 0.0;
  if (side == Side::Right) {
    f.kind = saddle ? BasisKind::FRS : BasisKind::FRC;
  } else {
    f.kind = saddle ? BasisKind::FLS : BasisKind::FLC;
  }
  f.a = z.a;
  f.b = z.b;
  f.beta = z.beta;
  f.omega = std::sqrt(std::abs(lam));
  return f;
}

double BasisFunction::upper() const {
  if (!is_saddle()) return std::numeric_limits<double>::infinity();
  return (a * a + side_sign() * b * beta - omega * omega) / (b * omega);
}

std::string BasisFunction::name() const { return to_string(kind); }

double eval_basis(const BasisFunction& f, double h) {
  if (!(h > 0.0) || !(h < f.upper())) {
    throw Error(ErrorKind::DomainError, f.name() + " undefined at h = " + format_number(h));
  }
  const double v = f.eval(h);
  if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, f.name() + " not finite at h = " + format_number(h));
  return v;
}

MelnikovForm melnikov_coefficients(const ThreeZoneSystem& sys, bool collapse) {
  if (!verify_normal_form(sys)) {
    throw Error(ErrorKind::HypothesisViolation, "system is not in normal form");
  }
  MelnikovForm form;
  form.label = classify_system(sys).label;
  form.domain = annulus_interval(sys);

  const ZoneHamiltonian& L = sys.left;
  const ZoneHamiltonian& R = sys.right;
  const ZonePerturbation& pl = sys.left_pert;
  const ZonePerturbation& pc = sys.center_pert;
  const ZonePerturbation& pr = sys.right_pert;
  const double wl = R.b / L.b;

  // Offsets of the outer equilibria from their switching lines.
  const double rho_r = (R.a * R.a - R.b * R.beta) / R.discriminant() - 1.0;
  const double rho_l = (L.a * L.a + L.b * L.beta) / L.discriminant() - 1.0;

  const double k0 = 2.0 * (pr.p + pr.r) + (pr.p + pr.u) * rho_r + 2.0 * R.b * (pc.u - pc.p) +
                    wl * (2.0 * (pl.p - pl.r) + (pl.p + pl.u) * rho_l);
  const double kc = R.b * (pc.p + pc.u);

  const auto outer_coeff = [](const BasisFunction& f, double pu) {
    if (f.is_saddle()) return pu / (2.0 * f.b * f.omega * f.omega * f.omega);
    return pu * f.b / (2.0 * f.omega);
  };
  const BasisFunction fr = BasisFunction::outer(R, Side::Right);
  const BasisFunction fl = BasisFunction::outer(L, Side::Left);
  double kr = outer_coeff(fr, pr.p + pr.u);
  const double kl = wl * outer_coeff(fl, pl.p + pl.u);

  form.basis = {BasisFunction::f0(), BasisFunction::fcc(), fr};
  if (collapse && form.domain.boundary_kind == BoundaryKind::HeteroclinicOrbit) {
    // Equal ordinates: fLS = (bL wL / bR wR)^2 fRS.
    const double ratio = (fl.b * fl.omega) / (fr.b * fr.omega);
    kr += kl * ratio * ratio;
    form.coeffs = {k0, kc, kr};
  } else {
    form.basis.push_back(fl);
    form.coeffs = {k0, kc, kr, kl};
  }
  return form;
}

double eval_melnikov(const MelnikovForm& form, double h) {
  const AnnulusInterval& J = form.domain;
  if (!(h > J.lower + kBoundaryGuard) || !(h < J.upper - kBoundaryGuard)) {
    throw Error(ErrorKind::DomainError, "h = " + format_number(h) + " outside the open domain");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < form.basis.size(); ++i) {
    if (form.coeffs[i] != 0.0) m += form.coeffs[i] * eval_basis(form.basis[i], h);
  }
  return m;
}

namespace {

double arc_integral(const OrbitArc& arc, const ZonePerturbation& p, double quad_tol) {
  using boost::math::quadrature::gauss_kronrod;
  const ZoneHamiltonian& z = arc.flow.zone();
  auto integrand = [&](double t) {
    const Point q = arc.at(t);
    const Point v = z.field(q);
    return p.g(q) * v.x - p.f(q) * v.y;
  };
  double err = 0.0;
  double l1 = 0.0;
  double val = gauss_kronrod<double, 61>::integrate(integrand, 0.0, arc.flight_time, 15, 1e-13, &err, &l1);
  if (err > quad_tol && l1 > 0.0) {
    val = gauss_kronrod<double, 61>::integrate(integrand, 0.0, arc.flight_time, 30, 0.25 * quad_tol / l1, &err);
  }
  if (!(err <= quad_tol) || !std::isfinite(val)) {
    throw Error(ErrorKind::QuadratureFailure,
                std::string("arc ") + to_string(arc.zone) + " error estimate " + format_number(err));
  }
  return val;
}

}  // namespace

double melnikov_oracle(const ThreeZoneSystem& sys, double h, double quad_tol) {
  const auto arcs = orbit_arcs(sys, h);
  // Four arcs share the budget.
  const double tol = 0.25 * quad_tol;
  const double bR = sys.right.b;
  const double bL = sys.left.b;
  const double bC = sys.center.b;
  const double iR = arc_integral(arcs[0], sys.right_pert, tol);
  const double iC1 = arc_integral(arcs[1], sys.center_pert, tol / (bR / bC));
  const double iL = arc_integral(arcs[2], sys.left_pert, tol / (bR / bL));
  const double iC2 = arc_integral(arcs[3], sys.center_pert, tol / (bR / bC));
  return (bR / bC) * (iC1 + iC2) + (bR / bL) * iL + iR;
}

}  // namespace trizone
