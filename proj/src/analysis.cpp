#include "trizone/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "trizone/normal_form.hpp"
#include "trizone/report.hpp"

namespace trizone {

const char* to_string(DerivativeMethod m) {
  return m == DerivativeMethod::AnalyticDerivatives ? "analytic" : "finite-difference";
}

namespace {

constexpr std::size_t kJet = 4;

// k-th derivative by central differences and Ridders extrapolation.
double ridders(const std::function<double(double)>& f, double x, int k, double s0, double& err) {
  constexpr int kTab = 10;
  constexpr double con = 1.4;
  constexpr double con2 = con * con;
  auto stencil = [&](double s) {
    switch (k) {
      case 1: return (f(x + s) - f(x - s)) / (2.0 * s);
      case 2: return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s);
      default: return (f(x + 2.0 * s) - 2.0 * f(x + s) + 2.0 * f(x - s) - f(x - 2.0 * s)) / (2.0 * s * s * s);
    }
  };
  double a[kTab][kTab];
  double s = s0;
  a[0][0] = stencil(s);
  err = std::numeric_limits<double>::max();
  double best = a[0][0];
  for (int i = 1; i < kTab; ++i) {
    s /= con;
    a[0][i] = stencil(s);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con2;
      const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
  }
  return best;
}

double common_upper(const std::vector<BasisFunction>& funcs) {
  double u = std::numeric_limits<double>::infinity();
  for (const auto& f : funcs) u = std::min(u, f.upper());
  return u;
}

}  // namespace

WronskianReport wronskian(const std::vector<BasisFunction>& funcs, double h, DerivativeMethod method) {
  const int n = static_cast<int>(funcs.size());
  if (n < 1 || n > 4) throw Error(ErrorKind::InvalidArgument, "Wronskian needs 1 to 4 functions");
  const double upper = common_upper(funcs);
  if (!(h > 0.0) || !(h < upper)) {
    throw Error(ErrorKind::DomainError, "h = " + format_number(h) + " outside the common domain");
  }
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    const BasisFunction& f = funcs[j];
    const bool parametrized = f.kind != BasisKind::F0 && f.kind != BasisKind::FCC;
    if (method == DerivativeMethod::FiniteDifference && parametrized) {
      const auto fv = [&](double x) { return f.eval(x); };
      m(0, j) = f.eval(h);
      double room = 0.1 * std::min(h, upper - h);
      const double s0 = std::min(room, 0.1);
      for (int i = 1; i < n; ++i) {
        double err = 0.0;
        const double d = ridders(fv, h, i, s0, err);
        if (!(err <= 1e-5 * std::max(1.0, std::abs(d)))) {
          throw Error(ErrorKind::IllConditioned, f.name() + " derivative " + std::to_string(i) +
                                                     " extrapolation disagreement " + format_number(err));
        }
        m(i, j) = d;
      }
    } else {
      const Jet<kJet> v = f.eval(Jet<kJet>::variable(h));
      for (int i = 0; i < n; ++i) m(i, j) = v.derivative(static_cast<std::size_t>(i));
    }
  }
  WronskianReport rep;
  rep.h = h;
  rep.value = m.determinant();
  rep.order = n;
  rep.method = method;
  if (!std::isfinite(rep.value)) throw Error(ErrorKind::DomainError, "Wronskian not finite");
  return rep;
}

IndependenceCertificate independence_certificate(const std::vector<BasisFunction>& funcs, double lo,
                                                 double hi, int samples) {
  IndependenceCertificate cert;
  if (samples < 1 || !(hi > lo)) return cert;
  for (int i = 0; i < samples; ++i) {
    const double h = lo + (hi - lo) * (i + 0.5) / samples;
    try {
      const double w = wronskian(funcs, h).value;
      if (std::abs(w) > 1e-6) {
        cert.certified = true;
        cert.witness = h;
        cert.value = w;
        return cert;
      }
    } catch (const Error&) {
      // Sample outside some function's domain: try the next one.
    }
  }
  return cert;
}

double scan_cap(double largest) { return 10.0 * std::max(1.0, largest); }

ZeroSet find_zeros(const MelnikovForm& form, const ZeroOptions& opt) {
  if (opt.grid < 16) throw Error(ErrorKind::InvalidArgument, "grid must be at least 16");
  ZeroSet zs;
  const AnnulusInterval& J = form.domain;
  const double top = J.bounded() ? J.upper : (opt.cap > 0.0 ? opt.cap : scan_cap(1.0));
  const double delta = 1e-6 * (top - J.lower);
  zs.scan_lo = J.lower + delta;
  zs.scan_hi = J.bounded() ? J.upper - delta : top;

  const bool zero_form = std::all_of(form.coeffs.begin(), form.coeffs.end(), [](double k) { return k == 0.0; });
  if (zero_form) {
    zs.advisories.emplace_back("identically zero Melnikov function");
    return zs;
  }

  const auto M = [&](double h) { return eval_melnikov(form, h); };
  const int n = opt.grid;
  std::vector<double> hs(n + 1), ms(n + 1);
  for (int i = 0; i <= n; ++i) {
    hs[i] = zs.scan_lo + (zs.scan_hi - zs.scan_lo) * i / n;
    ms[i] = M(hs[i]);
  }
  std::vector<int> bracket_index;
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    if (ms[i] == 0.0) {
      roots.push_back(hs[i]);
      zs.brackets.emplace_back(hs[i], hs[i]);
      bracket_index.push_back(i);
      continue;
    }
    if (ms[i] * ms[i + 1] >= 0.0) continue;
    std::uintmax_t iters = 200;
    const auto tol = [](double a, double b) {
      return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    };
    const auto r = boost::math::tools::toms748_solve(M, hs[i], hs[i + 1], ms[i], ms[i + 1], tol, iters);
    const double h = std::abs(M(r.first)) <= std::abs(M(r.second)) ? r.first : r.second;
    roots.push_back(h);
    zs.brackets.emplace_back(hs[i], hs[i + 1]);
    bracket_index.push_back(i);
  }
  if (ms[n] == 0.0) {
    roots.push_back(hs[n]);
    zs.brackets.emplace_back(hs[n], hs[n]);
    bracket_index.push_back(n);
  }
  for (std::size_t i = 1; i < bracket_index.size(); ++i) {
    if (bracket_index[i] - bracket_index[i - 1] <= 1) {
      zs.advisories.emplace_back("GridTooCoarse: adjacent brackets near h = " + format_number(roots[i]));
    }
  }

  for (double h : roots) {
    Zero z;
    z.h = h;
    z.residual = std::abs(M(h));
    const double s = 1e-6 * std::max(1.0, h);
    const double lo = std::max(h - s, J.lower + 2.0 * kBoundaryGuard);
    const double hi = std::min(h + s, J.upper - 2.0 * kBoundaryGuard);
    z.derivative = (M(hi) - M(lo)) / (hi - lo);
    z.simple = std::abs(z.derivative) > opt.simple_tol;
    if (!z.simple) zs.advisories.emplace_back("NonSimpleZero near h = " + format_number(h));
    zs.zeros.push_back(z);
  }
  return zs;
}

DesignResult design_perturbation(const ThreeZoneSystem& sys, const std::vector<double>& targets) {
  const MelnikovForm base = melnikov_coefficients(sys);
  const std::size_t n = targets.size();
  if (n < 1 || n + 1 > base.basis.size()) {
    throw Error(ErrorKind::InvalidArgument, "this class supports 1 to " + std::to_string(base.basis.size() - 1) +
                                                " targets");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = targets[i];
    if (!(t > base.domain.lower + kBoundaryGuard) || !(t < base.domain.upper - kBoundaryGuard)) {
      throw Error(ErrorKind::DomainError, "target " + format_number(t) + " outside the annulus");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(targets[j] - t) <= 1e-9) {
        throw Error(ErrorKind::InvalidArgument, "repeated target " + format_number(t));
      }
    }
  }

  Eigen::MatrixXd A(n, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= n; ++j) A(i, j) = eval_basis(base.basis[j], targets[i]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(n - 1) > 1e-12 * sv(0))) {
    throw Error(ErrorKind::SingularDesign, "collocation matrix is rank deficient");
  }
  Eigen::VectorXd k = svd.matrixV().col(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (k(i) != 0.0) {
      if (k(i) < 0.0) k = -k;
      break;
    }
  }

  const ZoneHamiltonian& L = sys.left;
  const ZoneHamiltonian& R = sys.right;
  const double wl = R.b / L.b;
  const double rho_r = (R.a * R.a - R.b * R.beta) / R.discriminant() - 1.0;
  const double rho_l = (L.a * L.a + L.b * L.beta) / L.discriminant() - 1.0;
  const auto unit_coeff = [](const BasisFunction& f) {
    if (f.is_saddle()) return 1.0 / (2.0 * f.b * f.omega * f.omega * f.omega);
    return f.b / (2.0 * f.omega);
  };

  DesignResult res;
  res.null_vector.assign(k.data(), k.data() + k.size());
  const double kc = k(1);
  const double kr = n >= 2 ? k(2) : 0.0;
  const double kl = n >= 3 ? k(3) : 0.0;
  const double pc = kc / R.b;
  const double pr = kr / unit_coeff(base.basis[2]);
  const double pl = n >= 3 ? kl / (wl * unit_coeff(base.basis[3])) : 0.0;
  // k0 with u = 0 and r_R = 0 leaves r_L as the only unknown.
  const double rest = (2.0 + rho_r) * pr - 2.0 * R.b * pc + wl * (2.0 + rho_l) * pl;
  double rl = 0.0;
  double rr = 0.0;
  if (std::abs(wl) > 1e-12) {
    rl = (rest - k(0)) / (2.0 * wl);
  } else {
    rr = (k(0) - rest) / 2.0;
    res.freed_r_right = true;
  }
  if (!std::isfinite(rl) || !std::isfinite(rr) || !std::isfinite(pr) || !std::isfinite(pl)) {
    throw Error(ErrorKind::NonInvertibleConvention, "coefficient back-solve degenerated");
  }
  const double scale = std::max({std::abs(pc), std::abs(pr), std::abs(pl), std::abs(rl), std::abs(rr)});
  if (!(scale > 0.0)) throw Error(ErrorKind::NonInvertibleConvention, "designed perturbation vanishes");
  res.left = {pl / scale, 0.0, rl / scale, 0.0, 0.0, 0.0};
  res.center = {pc / scale, 0.0, 0.0, 0.0, 0.0, 0.0};
  res.right = {pr / scale, 0.0, rr / scale, 0.0, 0.0, 0.0};
  res.form = melnikov_coefficients(sys.with_perturbation(res.left, res.center, res.right));
  return res;
}

}  // namespace trizone
