#pragma once

#include <random>

#include "trizone/model.hpp"
#include "trizone/normal_form.hpp"

namespace trizone::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ZonePerturbation random_perturbation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng), n(rng), n(rng), n(rng)};
}

// Outer zone with a chosen equilibrium abscissa x_e and rate w.
inline ZoneHamiltonian outer_zone(Side side, bool saddle, double a, double b, double w, double xe) {
  ZoneHamiltonian z;
  z.a = a;
  z.b = b;
  if (saddle) {
    z.c = (w * w - a * a) / b;
  } else {
    z.c = (-w * w - a * a) / b;
  }
  const double lam = a * a + b * z.c;
  if (side == Side::Right) {
    z.alpha = -a;
    z.beta = (a * a - xe * lam) / b;
  } else {
    z.alpha = a;
    z.beta = (-xe * lam - a * a) / b;
  }
  return z;
}

/// Random admissible normal-form system; saddles are real, centers anywhere
/// off the switching lines.
inline ThreeZoneSystem random_normal_form(std::mt19937_64& rng, bool left_saddle, bool right_saddle) {
  ThreeZoneSystem s;
  s.center = {0.0, 1.0, -1.0, 0.0, 0.0};
  const auto pick_center_xe = [&](double sign) {
    // Away from the line x = sign by at least 0.2.
    double xe;
    do {
      xe = uniform(rng, -3.0, 3.0);
    } while (std::abs(xe - sign) < 0.2);
    return xe;
  };
  s.right = outer_zone(Side::Right, right_saddle, uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.0),
                       uniform(rng, 0.5, 2.0), right_saddle ? uniform(rng, 1.3, 3.0) : pick_center_xe(1.0));
  s.left = outer_zone(Side::Left, left_saddle, uniform(rng, -1.0, 1.0), uniform(rng, 0.5, 2.0),
                      uniform(rng, 0.5, 2.0), left_saddle ? uniform(rng, -3.0, -1.3) : pick_center_xe(-1.0));
  return s;
}

inline ThreeZoneSystem random_normal_form(std::mt19937_64& rng) {
  const int k = std::uniform_int_distribution<int>(0, 3)(rng);
  return random_normal_form(rng, k & 1, k & 2);
}

/// General system whose normal form is nf: center (a_C, b_C) with rate w and
/// equilibrium (0, ye). Perturbations are mapped consistently.
inline ThreeZoneSystem push_forward(const ThreeZoneSystem& nf, double aC, double bC, double w, double ye) {
  AffineMap inv;  // normal-form coordinates as a function of the original ones
  inv.m11 = 1.0;
  inv.m12 = 0.0;
  inv.m21 = aC / w;
  inv.m22 = bC / w;
  inv.tx = 0.0;
  inv.ty = -bC * ye / w;
  const double k = w * w / bC;
  ThreeZoneSystem g;
  g.left = pull_back(nf.left, inv, k);
  g.center = pull_back(nf.center, inv, k);
  g.right = pull_back(nf.right, inv, k);
  // f = w f~, g = (w^2 g~ - a f) / b, both composed with inv.
  const auto map_pert = [&](const ZonePerturbation& p) {
    const auto lin = [&](double cu, double cv, double c0, double& nx, double& ny, double& n0) {
      nx = cu * inv.m11 + cv * inv.m21;
      ny = cu * inv.m12 + cv * inv.m22;
      n0 = cu * inv.tx + cv * inv.ty + c0;
    };
    double fx, fy, f0, gx, gy, g0;
    lin(p.p, p.q, p.r, fx, fy, f0);
    lin(p.s, p.u, p.v, gx, gy, g0);
    ZonePerturbation out;
    out.p = w * fx;
    out.q = w * fy;
    out.r = w * f0;
    out.s = (w * w * gx - aC * out.p) / bC;
    out.u = (w * w * gy - aC * out.q) / bC;
    out.v = (w * w * g0 - aC * out.r) / bC;
    return out;
  };
  g.left_pert = map_pert(nf.left_pert);
  g.center_pert = map_pert(nf.center_pert);
  g.right_pert = map_pert(nf.right_pert);
  g.epsilon = nf.epsilon;
  return g;
}

}  // namespace trizone::testing
