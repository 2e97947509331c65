#pragma once

#include "trizone/model.hpp"

namespace trizone {

/// Affine change of variables old = M * new + t.
struct AffineMap {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;
  double tx = 0.0, ty = 0.0;

  Point apply(Point p) const { return {m11 * p.x + m12 * p.y + tx, m21 * p.x + m22 * p.y + ty}; }
  Point inverse(Point q) const;
  double det() const { return m11 * m22 - m12 * m21; }
};

struct NormalFormResult {
  ThreeZoneSystem system;
  /// Maps normal-form coordinates to the original ones.
  AffineMap transform;
  /// Normal-form time s = time_scale * t.
  double time_scale = 1.0;
};

NormalFormResult to_normal_form(const ThreeZoneSystem& sys);
bool verify_normal_form(const ThreeZoneSystem& sys, double tol = 1e-12);

/// Composes a zone Hamiltonian with the map and rescales it by k,
/// dropping the additive constant.
ZoneHamiltonian pull_back(const ZoneHamiltonian& z, const AffineMap& m, double k);

}  // namespace trizone
