#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "trizone/model.hpp"
#include "trizone/scenarios.hpp"

using namespace trizone;

TEST_SUITE("model") {
  TEST_CASE("classify_zone labels type and placement") {
    ZoneKind k = classify_zone({0, 1, 1, 0, -2}, Side::Right);
    CHECK(k.type == EquilibriumType::Saddle);
    CHECK(k.placement == Placement::Real);
    CHECK(k.equilibrium.x == doctest::Approx(2.0));
    CHECK(k.equilibrium.y == doctest::Approx(0.0));

    k = classify_zone({0, 1, -1, 0, 0}, Side::Center);
    CHECK(k.type == EquilibriumType::Center);
    CHECK(k.placement == Placement::Real);
    CHECK(k.equilibrium.x == doctest::Approx(0.0));

    k = classify_zone({1, 2, -1, 1, 1}, Side::Left);
    CHECK(k.type == EquilibriumType::Center);
    CHECK(k.placement == Placement::Virtual);
    CHECK(k.equilibrium.x == doctest::Approx(3.0));
    CHECK(k.equilibrium.y == doctest::Approx(-2.0));

    k = classify_zone({0, 1, 1, 0, -1}, Side::Right);
    CHECK(k.placement == Placement::Boundary);
  }

  TEST_CASE("degenerate zone") {
    CHECK_THROWS_AS(classify_zone({1, 1, -1, 0, 0}, Side::Left), Error);
    try {
      classify_zone({0, 0, 5, 0, 0}, Side::Center);
      FAIL("expected DegenerateZone");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateZone);
    }
  }

  TEST_CASE("classify_system on the built-in configurations") {
    CHECK(classify_system(find_scenario("scs-a")->system).label == ClassLabel::SCS);
    CHECK(classify_system(find_scenario("scs-b")->system).label == ClassLabel::SCS);
    CHECK(classify_system(find_scenario("ccs-c")->system).label == ClassLabel::CCS);
    CHECK(classify_system(find_scenario("ccs-d")->system).label == ClassLabel::CCS);
    CHECK(classify_system(find_scenario("ccc-a")->system).label == ClassLabel::CCC);
    CHECK(classify_system(find_scenario("ccc-b")->system).label == ClassLabel::CCC);
    CHECK(classify_system(find_scenario("ccc-c")->system).label == ClassLabel::CCC);
    for (const auto& s : scenarios()) CHECK_FALSE(classify_system(s.system).reflected);
  }

  TEST_CASE("classify_system rejects a non-center middle zone") {
    ThreeZoneSystem s = find_scenario("scs-a")->system;
    s.center = {0, 1, 1, 0, 0};
    try {
      classify_system(s);
      FAIL("expected HypothesisViolation");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::HypothesisViolation);
    }
  }

  TEST_CASE("check_hypotheses") {
    const ThreeZoneSystem base = find_scenario("scs-a")->system;
    HypothesisReport r = check_hypotheses(base);
    CHECK(r.h1);
    CHECK(r.h2);
    CHECK(r.h3);
    CHECK(r.all());

    ThreeZoneSystem s = base;
    s.left.b = -1.0;
    r = check_hypotheses(s);
    CHECK_FALSE(r.h2);

    s = base;
    s.center = {0, 1, 1, 0, 0};
    r = check_hypotheses(s);
    CHECK_FALSE(r.h1);

    // Tangent points split on x = 1.
    s = base;
    s.right.alpha = 0.5;
    r = check_hypotheses(s);
    CHECK_FALSE(r.h2);

    // Right saddle equilibrium on the line.
    s = base;
    s.right.beta = -1.0;
    r = check_hypotheses(s);
    CHECK_FALSE(r.all());

    // Virtual right saddle: no crossing annulus.
    s = base;
    s.right.beta = -0.5;
    r = check_hypotheses(s);
    CHECK(r.h1);
    CHECK(r.h2);
    CHECK_FALSE(r.h3);
  }

  TEST_CASE("tangent_points") {
    const auto P = tangent_points(find_scenario("scs-a")->system);
    CHECK(P[0].x == 1.0);
    CHECK(P[0].y == doctest::Approx(0.0));
    CHECK(P[1].y == doctest::Approx(0.0));
    CHECK(P[2].x == -1.0);
    CHECK(P[2].y == doctest::Approx(0.0));
    ThreeZoneSystem s = find_scenario("scs-a")->system;
    s.center = {1, 2, -1, 0, 0};
    CHECK(tangent_points(s)[0].y == doctest::Approx(-0.5));
    s.left.b = 0.0;
    CHECK_THROWS_AS(tangent_points(s), Error);
  }

  TEST_CASE("classification is invariant under positive scaling") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const ThreeZoneSystem s = testing::random_normal_form(rng);
      const double lam = testing::uniform(rng, 0.1, 10.0);
      for (Side side : {Side::Left, Side::Center, Side::Right}) {
        const ZoneHamiltonian& z = s.zone(side);
        const ZoneHamiltonian zs{lam * z.a, lam * z.b, lam * z.c, lam * z.alpha, lam * z.beta};
        const ZoneKind k1 = classify_zone(z, side);
        const ZoneKind k2 = classify_zone(zs, side);
        CHECK(k1.type == k2.type);
        CHECK(k1.placement == k2.placement);
      }
    }
  }

  TEST_CASE("normal-form systems satisfy H2") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) CHECK(check_hypotheses(testing::random_normal_form(rng)).h2);
  }

  TEST_CASE("reflection swaps the outer zones") {
    std::mt19937_64 rng(13);
    // CCS with the saddle on the right reflects to a left saddle.
    const ThreeZoneSystem ccs = testing::random_normal_form(rng, false, true);
    const SystemClass a = classify_system(ccs);
    const SystemClass b = classify_system(reflect(ccs));
    CHECK(a.label == ClassLabel::CCS);
    CHECK_FALSE(a.reflected);
    CHECK(b.label == ClassLabel::CCS);
    CHECK(b.reflected);
    CHECK(classify_zone(reflect(ccs).left, Side::Left).type == EquilibriumType::Saddle);

    for (int i = 0; i < 50; ++i) {
      const ThreeZoneSystem s = testing::random_normal_form(rng, true, true);
      const SystemClass c1 = classify_system(s);
      const SystemClass c2 = classify_system(reflect(s));
      CHECK(c1.label == ClassLabel::SCS);
      CHECK(c2.label == ClassLabel::SCS);
      CHECK(c1.reflected != c2.reflected);
    }
  }

  TEST_CASE("reflection conjugates the vector field") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 100; ++i) {
      ThreeZoneSystem s = testing::random_normal_form(rng);
      s = s.with_perturbation(testing::random_perturbation(rng), testing::random_perturbation(rng),
                              testing::random_perturbation(rng));
      s.epsilon = 0.01;
      const ThreeZoneSystem r = reflect(s);
      const Point p{testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)};
      const Side side = zone_of(p.x);
      const Side mirrored = side == Side::Left ? Side::Right : side == Side::Right ? Side::Left : Side::Center;
      const Point v = s.field(side, p);
      const Point w = r.field(mirrored, {-p.x, -p.y});
      CHECK(w.x == doctest::Approx(-v.x).epsilon(1e-12));
      CHECK(w.y == doctest::Approx(-v.y).epsilon(1e-12));
      CHECK(reflect(reflect(s)).left.beta == s.left.beta);
    }
  }
}
