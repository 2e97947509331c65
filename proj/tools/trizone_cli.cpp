// trizone: Melnikov analysis of three-zone piecewise-linear Hamiltonian systems.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "trizone/analysis.hpp"
#include "trizone/config.hpp"
#include "trizone/integrator.hpp"
#include "trizone/normal_form.hpp"
#include "trizone/report.hpp"
#include "trizone/scenarios.hpp"

using nlohmann::json;
using namespace trizone;

namespace {

struct Options {
  std::string config;
  std::string scenario;
  double h = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  int samples = 0;
  std::vector<double> targets;
  double epsilon = -1.0;
  bool with_oracle = false;
  std::string out;
  std::string format;
  std::string basis = "auto";
  std::string method = "analytic";
};

struct Loaded {
  std::string name;
  ThreeZoneSystem original;
  NormalFormResult nf;
  const Scenario* scenario = nullptr;
  Scenario scenario_copy;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConfigError: return 1;
    case ErrorKind::DegenerateZone:
    case ErrorKind::HypothesisViolation:
    case ErrorKind::OutOfAnnulus:
    case ErrorKind::NotASaddle:
    case ErrorKind::DomainError:
    case ErrorKind::InvalidArgument: return 2;
    default: return 3;
  }
}

void print_error(const std::string& kind, const std::string& message) {
  json e{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << e.dump() << "\n";
}

Loaded load(const Options& o) {
  Loaded L;
  if (!o.scenario.empty()) {
    auto sc = find_scenario(o.scenario);
    if (!sc) throw Error(ErrorKind::ConfigError, "unknown scenario '" + o.scenario + "'");
    L.scenario_copy = *sc;
    L.scenario = &L.scenario_copy;
    L.name = sc->name;
    L.original = sc->system;
  } else {
    const SystemConfig cfg = load_config(o.config);
    L.name = cfg.name;
    L.original = cfg.system;
  }
  L.nf = to_normal_form(L.original);
  return L;
}

json zone_json(const ZoneHamiltonian& z) {
  return {{"a", round12(z.a)}, {"b", round12(z.b)}, {"c", round12(z.c)}, {"alpha", round12(z.alpha)},
          {"beta", round12(z.beta)}};
}

json pert_json(const ZonePerturbation& p) {
  return {{"p", round12(p.p)}, {"q", round12(p.q)}, {"r", round12(p.r)},
          {"s", round12(p.s)}, {"u", round12(p.u)}, {"v", round12(p.v)}};
}

json interval_json(const AnnulusInterval& J) {
  return {{"lower", round12(J.lower)},
          {"upper", J.bounded() ? json(round12(J.upper)) : json(nullptr)},
          {"boundary", to_string(J.boundary_kind)},
          {"tangency_count_at_zero", J.tangency_count_at_zero}};
}

std::string interval_text(const AnnulusInterval& J) {
  return "(" + format_number(J.lower) + "," + (J.bounded() ? format_number(J.upper) : std::string("∞")) + ")";
}

json zeros_json(const ZeroSet& zs) {
  json arr = json::array();
  for (const Zero& z : zs.zeros) {
    arr.push_back({{"h", round12(z.h)},
                   {"residual", round12(z.residual)},
                   {"derivative", round12(z.derivative)},
                   {"simple", z.simple}});
  }
  return arr;
}

json form_json(const MelnikovForm& f) {
  json arr = json::array();
  for (std::size_t i = 0; i < f.basis.size(); ++i) {
    arr.push_back({{"basis", f.basis[i].name()}, {"k", round12(f.coeffs[i])}});
  }
  return arr;
}

ZeroOptions zero_options(const MelnikovForm& f, const Options& o, double largest) {
  ZeroOptions zo;
  if (!f.domain.bounded()) zo.cap = scan_cap(std::max(largest, o.h_max));
  return zo;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_classify(const Options& o, std::string& out) {
  ThreeZoneSystem original;
  if (!o.scenario.empty()) {
    auto sc = find_scenario(o.scenario);
    if (!sc) throw Error(ErrorKind::ConfigError, "unknown scenario '" + o.scenario + "'");
    original = sc->system;
  } else {
    original = load_config(o.config).system;
  }
  const HypothesisReport rep = check_hypotheses(original);
  for (Side s : {Side::Left, Side::Center, Side::Right}) classify_zone(original.zone(s), s);
  if (!rep.all()) {
    json j{{"hypotheses", {{"h1", rep.h1}, {"h2", rep.h2}, {"h3", rep.h3}, {"details", rep.details}}}};
    out = dump(j);
    return 2;
  }
  const NormalFormResult nf = to_normal_form(original);
  const SystemClass cls = classify_system(nf.system);
  const AnnulusInterval J = annulus_interval(nf.system);
  if (o.format == "json") {
    json j{{"class", to_string(cls.label)},
           {"reflected", cls.reflected},
           {"interval", interval_json(J)},
           {"time_scale", round12(nf.time_scale)},
           {"normal_form",
            {{"left", zone_json(nf.system.left)},
             {"center", zone_json(nf.system.center)},
             {"right", zone_json(nf.system.right)}}},
           {"hypotheses", {{"h1", rep.h1}, {"h2", rep.h2}, {"h3", rep.h3}, {"details", rep.details}}}};
    out = dump(j);
    return 0;
  }
  std::ostringstream os;
  os << to_string(cls.label) << ", J=" << interval_text(J);
  if (J.bounded()) os << ", " << to_string(J.boundary_kind);
  os << "\n";
  os << "reflected: " << (cls.reflected ? "yes" : "no") << "\n";
  os << "tangency count at h=0: " << J.tangency_count_at_zero << "\n";
  os << "time scale: " << format_number(nf.time_scale) << "\n";
  for (Side s : {Side::Left, Side::Center, Side::Right}) {
    const ZoneHamiltonian& z = nf.system.zone(s);
    os << "normal form " << to_string(s) << ": a=" << format_number(z.a) << " b=" << format_number(z.b)
       << " c=" << format_number(z.c) << " alpha=" << format_number(z.alpha) << " beta=" << format_number(z.beta)
       << "\n";
  }
  os << "hypotheses: H1 " << (rep.h1 ? "ok" : "fail") << ", H2 " << (rep.h2 ? "ok" : "fail") << ", H3 "
     << (rep.h3 ? "ok" : "fail") << "\n";
  out = os.str();
  return 0;
}

int cmd_melnikov(const Options& o, std::string& out) {
  const Loaded L = load(o);
  const MelnikovForm f = melnikov_coefficients(L.nf.system);
  const AnnulusInterval& J = f.domain;
  const double span = J.bounded() ? J.upper - J.lower : 10.0;
  const double lo = o.h_min > 0.0 ? o.h_min : J.lower + 0.01 * span;
  const double hi = o.h_max > 0.0 ? o.h_max : (J.bounded() ? J.upper - 0.01 * span : 10.0);
  const int n = o.samples > 0 ? o.samples : 21;
  if (!(lo < hi) && n > 1) throw Error(ErrorKind::InvalidArgument, "h-min must be below h-max");
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    const double h = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    std::vector<double> row{h, eval_melnikov(f, h)};
    if (o.with_oracle) row.push_back(melnikov_oracle(L.nf.system, h));
    rows.push_back(row);
  }
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json e{{"h", round12(r[0])}, {"M_closed", round12(r[1])}};
      if (o.with_oracle) e["M_oracle"] = round12(r[2]);
      arr.push_back(e);
    }
    out = dump(json{{"class", to_string(f.label)}, {"form", form_json(f)}, {"samples", arr}});
    return 0;
  }
  out = o.with_oracle ? "h,M_closed,M_oracle\n" : "h,M_closed\n";
  for (const auto& r : rows) out += csv_row(r);
  return 0;
}

int cmd_zeros(const Options& o, std::string& out) {
  const Loaded L = load(o);
  const MelnikovForm f = melnikov_coefficients(L.nf.system);
  const ZeroSet zs = find_zeros(f, zero_options(f, o, 1.0));
  json j{{"class", to_string(f.label)},
         {"interval", interval_json(f.domain)},
         {"form", form_json(f)},
         {"zeros", zeros_json(zs)},
         {"advisories", zs.advisories}};
  out = dump(j);
  return 0;
}

std::vector<double> targets_for(const Options& o, const Loaded& L) {
  if (!o.targets.empty()) return o.targets;
  if (L.scenario) return L.scenario->targets;
  throw Error(ErrorKind::InvalidArgument, "--targets is required with --config");
}

json design_json(const Loaded& L, const DesignResult& d, const ZeroSet& zs) {
  const std::size_t n = d.null_vector.size();
  std::vector<BasisFunction> used(d.form.basis.begin(), d.form.basis.begin() + static_cast<long>(n));
  const AnnulusInterval& J = d.form.domain;
  const double hi = J.bounded() ? J.upper : zs.scan_hi;
  const IndependenceCertificate cert = independence_certificate(used, J.lower, hi, 64);
  json coeffs = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    coeffs.push_back({{"basis", d.form.basis[i].name()}, {"k", round12(d.form.coeffs[i])}});
  }
  return {{"class", to_string(d.form.label)},
          {"interval", interval_json(J)},
          {"wronskian_witness",
           {{"certified", cert.certified}, {"h", round12(cert.witness)}, {"value", round12(cert.value)}}},
          {"zeros", zeros_json(zs)},
          {"design",
           {{"coefficients", coeffs},
            {"perturbation",
             {{"left", pert_json(d.left)}, {"center", pert_json(d.center)}, {"right", pert_json(d.right)}}}}},
          {"name", L.name}};
}

int cmd_design(const Options& o, std::string& out) {
  const Loaded L = load(o);
  const std::vector<double> t = targets_for(o, L);
  const DesignResult d = design_perturbation(L.nf.system, t);
  const ZeroSet zs = find_zeros(d.form, zero_options(d.form, o, *std::max_element(t.begin(), t.end())));
  out = dump(design_json(L, d, zs));
  return 0;
}

int cmd_validate(const Options& o, std::string& out) {
  const Loaded L = load(o);
  const std::vector<double> t = targets_for(o, L);
  const double eps = o.epsilon > 0.0 ? o.epsilon : (L.original.epsilon > 0.0 ? L.original.epsilon : 1e-3);
  const DesignResult d = design_perturbation(L.nf.system, t);
  const ZeroSet zs = find_zeros(d.form, zero_options(d.form, o, *std::max_element(t.begin(), t.end())));
  const ThreeZoneSystem designed = L.nf.system.with_perturbation(d.left, d.center, d.right);
  const CycleSearch cs = locate_limit_cycles(designed, eps, zs);
  json certs = json::array();
  for (const CycleCertificate& c : cs.certificates) {
    certs.push_back({{"h_star", round12(c.h_star)},
                     {"predicted_h", round12(c.predicted_h)},
                     {"epsilon", round12(c.epsilon)},
                     {"fixed_point_residual", round12(c.fixed_point_residual)},
                     {"multiplier_estimate", round12(c.multiplier_estimate)}});
  }
  json j = design_json(L, d, zs);
  j["epsilon"] = round12(eps);
  j["certificates"] = certs;
  j["not_found"] = cs.not_found;
  j["expected_cycles"] = t.size();
  const bool pass = cs.certificates.size() >= t.size();
  j["pass"] = pass;
  out = dump(j);
  return pass ? 0 : 3;
}

int cmd_wronskian(const Options& o, std::string& out) {
  const Loaded L = load(o);
  std::vector<BasisFunction> funcs;
  std::string basis = o.basis;
  if (basis == "auto") basis = L.scenario ? "reference" : "melnikov";
  if (basis == "reference") {
    if (!L.scenario) throw Error(ErrorKind::InvalidArgument, "reference basis needs --scenario");
    funcs = L.scenario->wronskian.funcs;
  } else {
    funcs = melnikov_coefficients(L.nf.system).basis;
  }
  const double h = o.h > 0.0 ? o.h : (L.scenario ? L.scenario->wronskian.h : 0.5);
  const DerivativeMethod m =
      o.method == "fd" ? DerivativeMethod::FiniteDifference : DerivativeMethod::AnalyticDerivatives;
  const WronskianReport r = wronskian(funcs, h, m);
  json names = json::array();
  for (const auto& f : funcs) names.push_back(f.name());
  if (o.format == "json") {
    out = dump(json{{"h", round12(r.h)},
                    {"value", round12(r.value)},
                    {"order", r.order},
                    {"method", to_string(r.method)},
                    {"functions", names}});
  } else {
    out = "h,value,order\n" + format_number(r.h) + "," + format_number(r.value) + "," + std::to_string(r.order) + "\n";
  }
  return 0;
}

int cmd_portrait(const Options& o, std::string& out) {
  const Loaded L = load(o);
  const AnnulusInterval J = annulus_interval(L.nf.system);
  std::vector<double> levels;
  if (o.h > 0.0) {
    levels.push_back(o.h);
  } else {
    const double span = J.bounded() ? J.upper : 3.0;
    const double lo = o.h_min > 0.0 ? o.h_min : 0.1 * span;
    const double hi = o.h_max > 0.0 ? o.h_max : 0.9 * span;
    const int n = o.samples > 0 ? o.samples : 5;
    for (int i = 0; i < n; ++i) levels.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  }
  std::ostringstream os;
  write_portrait_csv(os, L.nf.system, levels, 50);
  out = os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Melnikov analysis of three-zone piecewise-linear Hamiltonian systems"};
  app.require_subcommand(1);
  // --h is the energy level; keep help on the long flag only.
  app.set_help_flag("--help", "print this help message and exit");
  Options o;

  const auto common = [&](CLI::App* c) {
    auto* cfg = c->add_option("--config", o.config, "JSON system configuration")->check(CLI::ExistingFile);
    auto* sc = c->add_option("--scenario", o.scenario, "built-in scenario name");
    cfg->excludes(sc);
    c->add_option("--out", o.out, "write output to PATH instead of stdout");
    c->add_option("--format", o.format, "csv or json (text for classify)")
        ->check(CLI::IsMember({"csv", "json", "text"}));
  };
  const auto range = [&](CLI::App* c) {
    c->add_option("--h-min", o.h_min, "lower end of the h range");
    c->add_option("--h-max", o.h_max, "upper end of the h range (scan cap on unbounded domains)");
    c->add_option("--samples", o.samples, "number of h samples")->check(CLI::PositiveNumber);
  };

  auto* classify = app.add_subcommand("classify", "class, normal form, annulus and hypotheses");
  common(classify);
  auto* melnikov = app.add_subcommand("melnikov", "tabulate M(h)");
  common(melnikov);
  range(melnikov);
  melnikov->add_flag("--with-oracle", o.with_oracle, "add the quadrature column");
  auto* zeros = app.add_subcommand("zeros", "simple zeros of M(h)");
  common(zeros);
  range(zeros);
  auto* design = app.add_subcommand("design", "perturbation with prescribed zeros");
  common(design);
  range(design);
  design->add_option("--targets", o.targets, "target zeros")->delimiter(',');
  auto* validate = app.add_subcommand("validate", "design, zeros and limit-cycle certificates");
  common(validate);
  range(validate);
  validate->add_option("--targets", o.targets, "target zeros")->delimiter(',');
  validate->add_option("--epsilon", o.epsilon, "perturbation size");
  auto* wr = app.add_subcommand("wronskian", "Wronskian of the basis functions");
  common(wr);
  wr->add_option("--h", o.h, "evaluation point");
  wr->add_option("--basis", o.basis, "reference, melnikov or auto")
      ->check(CLI::IsMember({"auto", "reference", "melnikov"}));
  wr->add_option("--method", o.method, "analytic or fd")->check(CLI::IsMember({"analytic", "fd"}));
  auto* portrait = app.add_subcommand("portrait", "sampled unperturbed orbits as CSV");
  common(portrait);
  range(portrait);
  portrait->add_option("--h", o.h, "single orbit level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  if (o.config.empty() && o.scenario.empty()) {
    print_error("ConfigError", "one of --config or --scenario is required");
    return 1;
  }

  std::string out;
  int code = 0;
  try {
    const std::string name = cmd->get_name();
    if (name == "classify") code = cmd_classify(o, out);
    else if (name == "melnikov") code = cmd_melnikov(o, out);
    else if (name == "zeros") code = cmd_zeros(o, out);
    else if (name == "design") code = cmd_design(o, out);
    else if (name == "validate") code = cmd_validate(o, out);
    else if (name == "wronskian") code = cmd_wronskian(o, out);
    else code = cmd_portrait(o, out);
  } catch (const Error& e) {
    print_error(to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 3;
  }

  if (o.out.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << out)) {
      print_error("IOError", "cannot write " + o.out);
      return 1;
    }
  }
  return code;
}
