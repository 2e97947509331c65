#include "trizone/scenarios.hpp"

namespace trizone {

namespace {

ThreeZoneSystem normal_form_system(double aL, double bL, double cL, double betaL, double aR, double bR,
                                   double cR, double betaR) {
  ThreeZoneSystem s;
  s.left = {aL, bL, cL, aL, betaL};
  s.center = {0.0, 1.0, -1.0, 0.0, 0.0};
  s.right = {aR, bR, cR, -aR, betaR};
  // Demonstration perturbation for the CLI; tests set their own.
  s.left_pert = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  s.center_pert = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  s.right_pert = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  s.epsilon = 1e-3;
  return s;
}

WronskianReference reference(const ThreeZoneSystem& s, int n, double h, double value, double tol,
                             double outer_center_scale) {
  WronskianReference ref;
  ref.h = h;
  ref.value = value;
  ref.tolerance = tol;
  ref.funcs = {BasisFunction::f0(), BasisFunction::fcc(), BasisFunction::outer(s.right, Side::Right),
               BasisFunction::outer(s.left, Side::Left)};
  ref.funcs.resize(static_cast<std::size_t>(n));
  // Outer center functions are taken with the principal arccos. The printed
  // values fix an overall column scale, applied to the left outer center.
  for (auto& f : ref.funcs) f.branch = Branch::Principal;
  for (auto& f : ref.funcs) {
    if (f.kind == BasisKind::FLC) f.scale = outer_center_scale;
  }
  return ref;
}

std::vector<Scenario> build() {
  std::vector<Scenario> out;
  const auto add = [&](const char* name, const char* desc, ThreeZoneSystem s, ClassLabel label, int cycles,
                       std::vector<double> targets, int n, double h, double w, double tol, double scale) {
    Scenario sc;
    sc.name = name;
    sc.description = desc;
    sc.system = s;
    sc.label = label;
    sc.cycles = cycles;
    sc.targets = std::move(targets);
    sc.wronskian = reference(s, n, h, w, tol, scale);
    out.push_back(std::move(sc));
  };
  add("scs-a", "two real saddles, distinct separatrix ordinates",
      normal_form_system(1, 1, 0, 2, 0, 1, 1, -2), ClassLabel::SCS, 3, {0.2, 0.5, 0.8}, 4, 0.4, 9.16568, 5e-6, 1.0);
  add("scs-b", "two real saddles, heteroclinic boundary",
      normal_form_system(1, 1, 0, 1, 0, 1, 1, -2), ClassLabel::SCS, 2, {0.2, 0.5}, 3, 0.4, -10.6955, 5e-5, 1.0);
  add("ccs-c", "virtual left center, real right saddle",
      normal_form_system(1, 2, -1, 1, 0, 1, 1, -2), ClassLabel::CCS, 3, {0.2, 0.5, 0.8}, 4, 0.4, 13.25, 5e-3, 1.0);
  add("ccs-d", "real left center, real right saddle",
      normal_form_system(1, 2, -1, -2, 0, 1, 1, -2), ClassLabel::CCS, 3, {0.2, 0.5, 0.8}, 4, 0.2, -4.26846, 5e-6,
      -1.0);
  add("ccc-a", "three centers, both outer centers virtual",
      normal_form_system(1, 2, -1, 1, 0, 1, -1, 0), ClassLabel::CCC, 3, {0.5, 1.0, 2.0}, 4, 0.2, -2.92151, 5e-6,
      4.0);
  add("ccc-b", "three centers, real left and virtual right",
      normal_form_system(1, 2, -1, -3, 0, 1, -1, 0), ClassLabel::CCC, 3, {0.5, 1.0, 2.0}, 4, 0.5, 7.2124, 5e-5,
      -1.0);
  add("ccc-c", "three centers, both outer centers real",
      normal_form_system(1, 2, -1, -3, 0, 1, -1, 2), ClassLabel::CCC, 3, {0.5, 1.0, 2.0}, 4, 0.5, 7.2124, 5e-5,
      -1.0);
  return out;
}

}  // namespace

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> table = build();
  return table;
}

std::optional<Scenario> find_scenario(const std::string& name) {
  for (const auto& s : scenarios()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace trizone
