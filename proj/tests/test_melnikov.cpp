#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "support.hpp"
#include "trizone/melnikov.hpp"
#include "trizone/scenarios.hpp"

using namespace trizone;

namespace {

const ThreeZoneSystem& sys_of(const std::string& name) {
  static std::vector<Scenario> all = scenarios();
  for (const Scenario& s : all) {
    if (s.name == name) return s.system;
  }
  throw std::runtime_error("no scenario " + name);
}

ThreeZoneSystem randomized(const std::string& name, std::mt19937_64& rng) {
  return sys_of(name).with_perturbation(testing::random_perturbation(rng), testing::random_perturbation(rng),
                                        testing::random_perturbation(rng));
}

double interior_h(const AnnulusInterval& J, std::mt19937_64& rng) {
  return J.bounded() ? testing::uniform(rng, 0.01, 0.99) * J.upper : testing::uniform(rng, 0.01, 5.0);
}

using K0 = std::function<double(const ZonePerturbation&, const ZonePerturbation&, const ZonePerturbation&)>;

struct Printed {
  const char* name;
  K0 k0;
};

// Coefficients as specialized by hand for each built-in configuration.
const Printed kPrinted[] = {
    {"scs-a",
     [](auto& L, auto& C, auto& R) { return 2 * (2 * L.p - C.p - L.r + R.r + C.u + L.u) + 3 * R.p + R.u; }},
    {"scs-b",
     [](auto& L, auto& C, auto& R) { return 2 * (C.u - C.p - L.r + R.r) + 3 * (R.p + L.p) + R.u + L.u; }},
    {"ccs-c", [](auto& L, auto& C, auto& R) { return 2 * (C.u - C.p + R.r - L.u) - L.r - L.p + R.u + 3 * R.p; }},
    {"ccs-d", [](auto& L, auto& C, auto& R) { return 2 * (C.u - C.p + R.r + L.p) - L.r + L.u + R.u + 3 * R.p; }},
    {"ccc-a", [](auto& L, auto& C, auto& R) { return 2 * (C.u - C.p + R.r - L.u) - L.r - L.p - R.u + R.p; }},
    {"ccc-b", [](auto& L, auto& C, auto& R) { return 2 * (C.u - C.p + R.r + L.u) - L.r - R.u + R.p + 3 * L.p; }},
    {"ccc-c",
     [](auto& L, auto& C, auto& R) { return 2 * (C.u - C.p + R.r + L.u) - L.r + R.u + 3 * (L.p + R.p); }},
};

}  // namespace

TEST_SUITE("melnikov") {
  TEST_CASE("basis values") {
    CHECK(eval_basis(BasisFunction::fcc(), 1.0) == doctest::Approx(std::numbers::pi));
    CHECK(eval_basis(BasisFunction::f0(), 0.3) == 0.3);
    const BasisFunction frs = BasisFunction::outer(sys_of("scs-a").right, Side::Right);
    CHECK(frs.kind == BasisKind::FRS);
    CHECK(frs.upper() == doctest::Approx(1.0));
    CHECK(eval_basis(frs, 0.5) == doctest::Approx(-0.75 * std::log(3.0)));
    const BasisFunction flc = BasisFunction::outer(sys_of("ccs-c").left, Side::Left);
    CHECK(flc.kind == BasisKind::FLC);
    CHECK(eval_basis(flc, 2.0) == doctest::Approx(4.0 * std::numbers::pi));
    CHECK(std::isinf(flc.upper()));
  }

  TEST_CASE("basis domain errors") {
    const BasisFunction frs = BasisFunction::outer(sys_of("scs-a").right, Side::Right);
    for (double h : {0.0, -0.1, 1.0, 1.5}) {
      try {
        eval_basis(frs, h);
        FAIL("expected DomainError");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
      }
    }
    CHECK_THROWS_AS(eval_basis(BasisFunction::fcc(), 0.0), Error);
  }

  TEST_CASE("swept and principal branches") {
    // Virtual left center (ccs-c): both branches agree.
    BasisFunction f = BasisFunction::outer(sys_of("ccs-c").left, Side::Left);
    BasisFunction g = f;
    g.branch = Branch::Principal;
    CHECK(f.eval(0.7) == doctest::Approx(g.eval(0.7)));
    // Real left center (ccs-d): swept angle exceeds pi near h = 0.
    f = BasisFunction::outer(sys_of("ccs-d").left, Side::Left);
    g = f;
    g.branch = Branch::Principal;
    CHECK(f.eval(0.2) != doctest::Approx(g.eval(0.2)));
  }

  TEST_CASE("coefficients match the hand-specialized forms") {
    std::mt19937_64 rng(41);
    for (const Printed& pr : kPrinted) {
      CAPTURE(pr.name);
      for (int i = 0; i < 10; ++i) {
        const ThreeZoneSystem s = randomized(pr.name, rng);
        const MelnikovForm m = melnikov_coefficients(s);
        const auto& L = s.left_pert;
        const auto& C = s.center_pert;
        const auto& R = s.right_pert;
        CHECK(m.coeffs[0] == doctest::Approx(pr.k0(L, C, R)).epsilon(1e-12));
        CHECK(m.coeffs[1] == doctest::Approx(C.p + C.u).epsilon(1e-12));
        if (std::string(pr.name) == "scs-b") {
          REQUIRE(m.coeffs.size() == 3);
          CHECK(m.coeffs[2] == doctest::Approx((R.p + L.p + R.u + L.u) / 2).epsilon(1e-12));
        } else {
          REQUIRE(m.coeffs.size() == 4);
          CHECK(m.coeffs[2] == doctest::Approx((R.p + R.u) / 2).epsilon(1e-12));
          CHECK(m.coeffs[3] == doctest::Approx((L.p + L.u) / 2).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("basis per class") {
    const MelnikovForm a = melnikov_coefficients(sys_of("scs-a"));
    CHECK(a.label == ClassLabel::SCS);
    CHECK(a.basis[2].kind == BasisKind::FRS);
    CHECK(a.basis[3].kind == BasisKind::FLS);
    const MelnikovForm c = melnikov_coefficients(sys_of("ccs-c"));
    CHECK(c.basis[2].kind == BasisKind::FRS);
    CHECK(c.basis[3].kind == BasisKind::FLC);
    const MelnikovForm e = melnikov_coefficients(sys_of("ccc-a"));
    CHECK(e.basis[2].kind == BasisKind::FRC);
    CHECK(e.basis[3].kind == BasisKind::FLC);
    CHECK(melnikov_coefficients(sys_of("scs-b"), false).basis.size() == 4);
  }

  TEST_CASE("zero perturbation") {
    const ThreeZoneSystem s = sys_of("scs-a").with_perturbation({}, {}, {});
    const MelnikovForm m = melnikov_coefficients(s);
    for (double k : m.coeffs) CHECK(k == 0.0);
    CHECK(eval_melnikov(m, 0.5) == 0.0);
    CHECK(std::abs(melnikov_oracle(s, 0.5)) <= 1e-10);
  }

  TEST_CASE("single-coefficient forms") {
    MelnikovForm m = melnikov_coefficients(sys_of("scs-a"));
    m.coeffs = {1.0, 0.0, 0.0, 0.0};
    CHECK(eval_melnikov(m, 0.37) == 0.37);
    ZonePerturbation c;
    c.p = 1.0;
    const ThreeZoneSystem s = sys_of("scs-a").with_perturbation({}, c, {});
    const MelnikovForm f = melnikov_coefficients(s);
    const double expect = -2.0 * 0.5 + eval_basis(BasisFunction::fcc(), 0.5);
    CHECK(eval_melnikov(f, 0.5) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(melnikov_oracle(s, 0.5) == doctest::Approx(expect).epsilon(1e-10));
  }

  TEST_CASE("rejections") {
    ThreeZoneSystem s = sys_of("scs-a");
    s.left.alpha += 0.1;
    CHECK_THROWS_AS(melnikov_coefficients(s), Error);
    const MelnikovForm m = melnikov_coefficients(sys_of("scs-a"));
    for (double h : {0.0, 5e-10, 1.0 - 5e-10, 1.0, 2.0}) {
      try {
        eval_melnikov(m, h);
        FAIL("expected DomainError");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
      }
    }
    CHECK_NOTHROW(eval_melnikov(m, 2e-9));
    try {
      melnikov_oracle(sys_of("scs-a"), 1.2);
      FAIL("expected OutOfAnnulus");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OutOfAnnulus);
    }
  }

  TEST_CASE("oracle agrees with the closed form") {
    std::mt19937_64 rng(42);
    for (const Scenario& sc : scenarios()) {
      CAPTURE(sc.name);
      for (int i = 0; i < 3; ++i) {
        const ThreeZoneSystem s = randomized(sc.name, rng);
        const MelnikovForm m = melnikov_coefficients(s);
        for (int k = 0; k < 4; ++k) {
          const double h = interior_h(m.domain, rng);
          CHECK(std::abs(eval_melnikov(m, h) - melnikov_oracle(s, h)) <= 1e-8);
        }
      }
    }
  }

  TEST_CASE("random normal forms agree with the oracle") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 40; ++i) {
      ThreeZoneSystem s = testing::random_normal_form(rng);
      s = s.with_perturbation(testing::random_perturbation(rng), testing::random_perturbation(rng),
                              testing::random_perturbation(rng));
      const MelnikovForm m = melnikov_coefficients(s);
      const double h = interior_h(m.domain, rng);
      CHECK(std::abs(eval_melnikov(m, h) - melnikov_oracle(s, h)) <= 1e-7);
    }
  }

  TEST_CASE("nullity of q, s, v") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 100; ++i) {
      const std::string name = scenarios()[i % scenarios().size()].name;
      const ThreeZoneSystem s = randomized(name, rng);
      ThreeZoneSystem t = s;
      for (ZonePerturbation* p : {&t.left_pert, &t.center_pert, &t.right_pert}) {
        p->q += testing::uniform(rng, -3, 3);
        p->s += testing::uniform(rng, -3, 3);
        p->v += testing::uniform(rng, -3, 3);
      }
      const MelnikovForm a = melnikov_coefficients(s);
      const MelnikovForm b = melnikov_coefficients(t);
      for (std::size_t k = 0; k < a.coeffs.size(); ++k) CHECK(a.coeffs[k] == b.coeffs[k]);
      if (i % 10 == 0) {
        const double h = interior_h(a.domain, rng);
        CHECK(std::abs(melnikov_oracle(s, h) - melnikov_oracle(t, h)) <= 2e-10);
        // Only q, s, v: the oracle sees nothing.
        ZonePerturbation only{0, 1.3, 0, -0.7, 0, 2.1};
        CHECK(std::abs(melnikov_oracle(sys_of(name).with_perturbation(only, only, only), h)) <= 1e-10);
      }
    }
  }

  TEST_CASE("linearity") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 100; ++i) {
      const std::string name = scenarios()[i % scenarios().size()].name;
      const ThreeZoneSystem s = randomized(name, rng);
      const double lam = testing::uniform(rng, -4, 4);
      const ThreeZoneSystem t =
          s.with_perturbation(s.left_pert.scaled(lam), s.center_pert.scaled(lam), s.right_pert.scaled(lam));
      const MelnikovForm a = melnikov_coefficients(s);
      const MelnikovForm b = melnikov_coefficients(t);
      const double h = interior_h(a.domain, rng);
      const double ma = eval_melnikov(a, h);
      CHECK(eval_melnikov(b, h) == doctest::Approx(lam * ma).epsilon(1e-13));
      if (i % 10 == 0) CHECK(std::abs(melnikov_oracle(t, h) - lam * melnikov_oracle(s, h)) <= 1e-9);
    }
  }

  TEST_CASE("three-term and four-term forms agree on heteroclinic systems") {
    std::mt19937_64 rng(46);
    for (int i = 0; i < 50; ++i) {
      const ThreeZoneSystem s = randomized("scs-b", rng);
      const MelnikovForm three = melnikov_coefficients(s, true);
      const MelnikovForm four = melnikov_coefficients(s, false);
      REQUIRE(three.basis.size() == 3);
      REQUIRE(four.basis.size() == 4);
      const double h = interior_h(three.domain, rng);
      CHECK(std::abs(eval_melnikov(three, h) - eval_melnikov(four, h)) <= 1e-10);
    }
  }

  TEST_CASE("finite on saddle domains, vanishing saddle terms at 0") {
    for (const char* name : {"scs-a", "scs-b", "ccs-c", "ccs-d"}) {
      const MelnikovForm m = melnikov_coefficients(sys_of(name));
      const BasisFunction& fr = m.basis[2];
      CHECK(std::abs(eval_basis(fr, 1e-9)) < 1e-6);
      for (int i = 1; i < 1000; ++i) {
        const double h = m.domain.upper * i / 1000.0;
        CHECK(std::isfinite(eval_melnikov(m, h)));
      }
    }
  }
}
