#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "trizone/jet.hpp"
#include "trizone/model.hpp"
#include "trizone/unperturbed.hpp"

namespace trizone {

enum class BasisKind { F0, FCC, FRC, FLC, FRS, FLS };

/// Angle convention for the outer center functions. Swept is the angle the
/// orbit actually turns through; Principal is the arccos value in [0, pi],
/// which differs once the outer center is real.
enum class Branch { Swept, Principal };

const char* to_string(BasisKind kind);

struct BasisFunction {
  BasisKind kind = BasisKind::F0;
  // Constants of the owning zone.
  double a = 0.0;
  double b = 1.0;
  double beta = 0.0;
  double omega = 1.0;
  double scale = 1.0;
  Branch branch = Branch::Swept;

  static BasisFunction f0() { return {}; }
  static BasisFunction fcc() { return {BasisKind::FCC}; }
  /// Outer-zone function; kind follows the zone type.
  static BasisFunction outer(const ZoneHamiltonian& z, Side side);

  bool is_saddle() const { return kind == BasisKind::FRS || kind == BasisKind::FLS; }
  bool is_outer_center() const { return kind == BasisKind::FRC || kind == BasisKind::FLC; }
  double side_sign() const { return kind == BasisKind::FLC || kind == BasisKind::FLS ? 1.0 : -1.0; }
  /// Upper end of the natural domain (infinity for non-saddle functions).
  double upper() const;
  std::string name() const;

  /// Value without domain checks; T is double or Jet<N>.
  template <class T>
  T eval(const T& h) const {
    using std::atan;
    using std::atanh;
    switch (kind) {
      case BasisKind::F0:
        return h * scale;
      case BasisKind::FCC:
        return (h * h + 1.0) * (std::numbers::pi - 2.0 * atan(h)) * scale;
      case BasisKind::FRS:
      case BasisKind::FLS: {
        const double bw = b * omega;
        const double tau = (a * a + side_sign() * b * beta - omega * omega) / bw;
        return (h * h - tau * tau) * atanh(h / tau) * (2.0 * bw * bw * scale);
      }
      case BasisKind::FRC:
      case BasisKind::FLC: {
        const double bw = b * omega;
        double X = a * a + side_sign() * b * beta + omega * omega;
        if (branch == Branch::Principal) X = std::abs(X);
        const T theta = 2.0 * atan2(h * bw, X);
        return (h * h + X * X / (bw * bw)) * theta * scale;
      }
    }
    return h * 0.0;
  }
};

/// Checked evaluation; DomainError outside (0, upper()).
double eval_basis(const BasisFunction& f, double h);

struct MelnikovForm {
  std::vector<BasisFunction> basis;
  std::vector<double> coeffs;
  AnnulusInterval domain;
  ClassLabel label = ClassLabel::CCC;
};

/// Decomposition of M for a normal-form system. When both outer zones are
/// saddles with equal separatrix ordinates and collapse is set, the two
/// saddle terms are merged into one.
MelnikovForm melnikov_coefficients(const ThreeZoneSystem& sys, bool collapse = true);

double eval_melnikov(const MelnikovForm& form, double h);

/// Direct quadrature of the weighted line integrals along the exact arcs.
double melnikov_oracle(const ThreeZoneSystem& sys, double h, double quad_tol = 1e-10);

inline constexpr double kBoundaryGuard = 1e-9;

}  // namespace trizone
