#include <doctest.h>

#include "oracles.hpp"
#include "toledo/core.hpp"

using namespace toledo;
using oracle::pi;

namespace {

ProjPoint D(cplx z) { return ProjPoint::disc(z); }
ProjPoint B(double angle) { return ProjPoint::boundary(angle); }

Isometry real_translation(double length) {
  return {std::cosh(length / 2), std::sinh(length / 2), std::sinh(length / 2), std::cosh(length / 2)};
}

double mat_diff(const Isometry& m, const Isometry& n) {
  return std::sqrt(std::norm(m.a() - n.a()) + std::norm(m.b() - n.b()) + std::norm(m.c() - n.c()) +
                   std::norm(m.d() - n.d()));
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("hermitian form on basis vectors") {
  CHECK(herm_form({0.0, 1.0}, {0.0, 1.0}) == cplx(-1.0));
  CHECK(herm_form({1.0, 0.0}, {1.0, 0.0}) == cplx(1.0));
  CHECK(herm_form({1.0, 1.0}, {1.0, 1.0}) == cplx(0.0));
  Lift x{{1.0, 2.0}, {0.5, -1.0}}, y{{-0.3, 0.1}, {2.0, 0.7}};
  CHECK(std::abs(herm_form(y, x) - std::conj(herm_form(x, y))) < 1e-15);
}

TEST_CASE("points are projective and classified by the form") {
  Lift v{{0.3, 0.4}, {1.0, 0.0}};
  Lift w{v.x1 * cplx(2.0, -3.0), v.x2 * cplx(2.0, -3.0)};
  CHECK(std::abs(ProjPoint::from_lift(v).z() - ProjPoint::from_lift(w).z()) < 1e-15);
  CHECK(D(0.5).is_negative());
  CHECK(B(1.0).is_isotropic());
  CHECK(ProjPoint::from_lift({{2.0, 0.0}, {1.0, 0.0}}).kind() == PointClass::positive);
  CHECK(std::abs(herm_form(D(cplx(0.3, 0.4)).lift(), D(cplx(0.3, 0.4)).lift()).real() - (0.25 - 1.0)) < 1e-15);
}

TEST_CASE("reflection about the origin") {
  Isometry r = reflection(D(0.0));
  CHECK(std::abs(r.a() - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(r.d() - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(r.b()) < 1e-15);
  CHECK(std::abs(r(D(0.3)).z() - cplx(-0.3)) < 1e-15);
  CHECK(std::abs(r(D(0.0)).z()) < 1e-15);
  CHECK(std::abs(reflection(D(0.5))(D(0.5)).z() - cplx(0.5)) < 1e-14);
  CHECK_THROWS_AS(reflection(B(0.3)), Error);
}

TEST_CASE("reflections square to minus the identity") {
  std::mt19937_64 g(11);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Isometry r = reflection(D(oracle::random_disc_point(g, 6.0)));
    Isometry sq = r * r;
    worst = std::max(worst, mat_diff(sq, -Isometry()) / std::max(1.0, r.norm() * r.norm()));
    CHECK(std::abs(r.trace()) < 1e-9 * r.norm());
    CHECK(std::abs(r.det() - 1.0) < 1e-9 * r.norm() * r.norm());
    CHECK(form_defect(r) < 1e-9 * r.norm() * r.norm());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("classification examples") {
  CHECK(classify(reflection(D(0.0))).tag == IsometryTag::elliptic);
  IsometryClass c = classify(real_translation(1.0));
  REQUIRE(c.tag == IsometryTag::hyperbolic);
  CHECK(c.translation_length == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(c.repeller->z() - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(c.attractor->z() - cplx(1.0)) < 1e-12);
  CHECK(oracle::disc_dist(0.0, oracle::mobius(real_translation(1.0), 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(classify(reflection(D(0.3)) * reflection(D(0.0))).tag == IsometryTag::hyperbolic);
  CHECK(classify(Isometry()).tag == IsometryTag::identity);
  CHECK(classify(-Isometry()).tag == IsometryTag::identity);
  Isometry para{cplx(1.0, 1.0), cplx(0.0, -1.0), cplx(0.0, 1.0), cplx(1.0, -1.0)};
  CHECK(classify(para).tag == IsometryTag::parabolic);
}

TEST_CASE("two half-turns make a translation of twice their distance") {
  std::mt19937_64 g(12);
  for (int k = 0; k < 500; ++k) {
    cplx a = oracle::random_disc_point(g, 3.0), b = oracle::random_disc_point(g, 3.0);
    IsometryClass c = classify(reflection(D(b)) * reflection(D(a)));
    REQUIRE(c.tag == IsometryTag::hyperbolic);
    CHECK(c.translation_length == doctest::Approx(2.0 * oracle::disc_dist(a, b)).epsilon(1e-8));
  }
}

TEST_CASE("hyperbolic powers") {
  Isometry half = hyperbolic_power(real_translation(2.0), 0.5);
  CHECK(projectively_equal(half, real_translation(1.0)));
  std::mt19937_64 g(13);
  for (int k = 0; k < 200; ++k) {
    Isometry m = reflection(D(oracle::random_disc_point(g))) * reflection(D(oracle::random_disc_point(g)));
    CHECK(is_plus_minus_identity(hyperbolic_power(m, 0.0)));
    CHECK(projectively_equal(hyperbolic_power(m, 1.0), m, 1e-8));
    Isometry third = hyperbolic_power(m, 1.0 / 3.0);
    CHECK(projectively_equal(third * third * third, m, 1e-8));
    double s = oracle::uniform(g, -3, 3), t = oracle::uniform(g, -3, 3);
    CHECK(projectively_equal(hyperbolic_power(m, s) * hyperbolic_power(m, t), hyperbolic_power(m, s + t), 1e-8));
  }
  CHECK_THROWS_AS(hyperbolic_power(reflection(D(0.2)), 0.5), Error);
}

TEST_CASE("triangle area examples") {
  CHECK(triangle_area(B(0.0), B(pi / 2), B(pi)) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(std::abs(triangle_area(B(0.0), B(pi / 2), B(pi)) - pi) < 1e-12);
  CHECK(std::abs(triangle_area(B(0.0), B(pi), B(pi / 2)) + pi) < 1e-12);
  double small = triangle_area(D(0.0), D(0.1), D(cplx(0.0, 0.1)));
  CHECK(small > 0.0);
  CHECK(small == doctest::Approx(oracle::gauss_bonnet(0.0, 0.1, cplx(0.0, 0.1))).epsilon(1e-8));
  CHECK(triangle_area(B(1.0), B(1.0), D(0.2)) == 0.0);
}

TEST_CASE("triangle area properties") {
  std::mt19937_64 g(14);
  for (int k = 0; k < 2000; ++k) {
    auto pt = [&] {
      return k % 3 == 0 ? B(oracle::random_angle(g)) : D(oracle::random_disc_point(g, 4.0));
    };
    ProjPoint a = pt(), b = pt(), c = pt();
    double abc = triangle_area(a, b, c);
    CHECK(std::abs(abc + triangle_area(a, c, b)) < 1e-10);
    CHECK(std::abs(abc) <= pi + 1e-10);
  }
  for (int k = 0; k < 1000; ++k) {
    cplx a = oracle::random_disc_point(g, 3.0), b = oracle::random_disc_point(g, 3.0),
         c = oracle::random_disc_point(g, 3.0);
    CHECK(std::abs(triangle_area(D(a), D(b), D(c)) - oracle::gauss_bonnet(a, b, c)) < 1e-8);
  }
}

TEST_CASE("polygon area") {
  std::vector<ProjPoint> square{B(0.0), B(pi / 2), B(pi), B(-pi / 2)};
  CHECK(polygon_area(D(0.0), square) == doctest::Approx(2 * pi).epsilon(1e-12));
  CHECK(polygon_area(D(0.3), square) == doctest::Approx(2 * pi).epsilon(1e-12));
  std::vector<ProjPoint> two{D(0.2), D(cplx(0.1, 0.5))};
  CHECK(std::abs(polygon_area(D(-0.4), two)) < 1e-15);
  std::vector<ProjPoint> tri{D(0.1), D(cplx(-0.3, 0.2)), D(cplx(0.0, -0.6))};
  CHECK(polygon_area(tri[0], tri) == doctest::Approx(triangle_area(tri[0], tri[1], tri[2])).epsilon(1e-12));

  std::mt19937_64 g(15);
  for (int k = 0; k < 300; ++k) {
    std::vector<ProjPoint> v;
    int m = 3 + k % 6;
    for (int j = 0; j < m; ++j) v.push_back(j % 2 ? B(oracle::random_angle(g)) : D(oracle::random_disc_point(g)));
    ProjPoint c1 = D(oracle::random_disc_point(g)), c2 = k % 2 ? B(oracle::random_angle(g)) : D(oracle::random_disc_point(g));
    double a1 = polygon_area(c1, v), a2 = polygon_area(c2, v);
    CHECK(std::abs(a1 - a2) < 1e-9);
  }
}

TEST_CASE("cycle orientation") {
  std::vector<ProjPoint> ccw{B(0.0), B(pi / 2), B(pi)};
  std::vector<ProjPoint> cw{B(0.0), B(pi), B(pi / 2)};
  CHECK(cycle_orientation(ccw).orientation == Orientation::positive);
  CHECK(cycle_orientation(cw).orientation == Orientation::negative);
  std::vector<ProjPoint> dup{B(0.0), B(pi / 2), B(pi), B(pi / 2 + 1e-12)};
  OrientationResult r = cycle_orientation(dup);
  CHECK(r.orientation == Orientation::neither);
  CHECK(!r.diagnostic.empty());

  std::mt19937_64 g(16);
  for (int k = 0; k < 300; ++k) {
    std::vector<ProjPoint> pts;
    int m = 3 + k % 8;
    for (int j = 0; j < m; ++j) pts.push_back(B(oracle::random_angle(g)));
    Orientation o = cycle_orientation(pts).orientation;
    std::vector<ProjPoint> rot(pts.begin() + 1, pts.end());
    rot.push_back(pts[0]);
    CHECK(cycle_orientation(rot).orientation == o);
    std::vector<ProjPoint> rev(pts.rbegin(), pts.rend());
    Orientation expected = o == Orientation::positive   ? Orientation::negative
                           : o == Orientation::negative ? Orientation::positive
                                                        : Orientation::neither;
    CHECK(cycle_orientation(rev).orientation == expected);
  }
}

TEST_CASE("geodesic intersection") {
  auto x = geodesic_intersection(Geodesic(B(pi), B(0.0)), Geodesic(B(-pi / 2), B(pi / 2)));
  REQUIRE(x);
  CHECK(std::abs(x->z()) < 1e-12);
  CHECK(!geodesic_intersection(Geodesic(B(pi), B(0.0)), Geodesic(B(pi / 8), B(3 * pi / 8))));
  Geodesic g1(B(pi), B(pi / 2)), g2(B(0.0), B(3 * pi / 4));
  auto y = geodesic_intersection(g1, g2);
  REQUIRE(y);
  CHECK(g1.distance_to(*y) < 1e-10);
  CHECK(g2.distance_to(*y) < 1e-10);
  // The geodesic from -1 to i is the circle |z - (-1 + i)| = 1.
  CHECK(std::abs(std::abs(y->z() - cplx(-1.0, 1.0)) - 1.0) < 1e-10);
  CHECK_THROWS_AS(geodesic_intersection(Geodesic(B(0.0), B(1.0)), Geodesic(B(1.0), B(0.0))), Error);
}

TEST_CASE("half-turn decomposition") {
  HalfTurns h = decompose_half_turns(real_translation(2.0), D(0.0));
  CHECK(std::abs(h.first.z()) < 1e-14);
  CHECK(std::abs(h.second.z() - cplx(std::tanh(0.5))) < 1e-12);
  CHECK(projectively_equal(reflection(h.second) * reflection(h.first), real_translation(2.0)));
  CHECK_THROWS_AS(decompose_half_turns(real_translation(2.0), D(cplx(0.0, 0.5))), Error);

  std::mt19937_64 g(17);
  for (int k = 0; k < 200; ++k) {
    Isometry m = reflection(D(oracle::random_disc_point(g))) * reflection(D(oracle::random_disc_point(g)));
    Isometry s = hyperbolic_power(m, oracle::uniform(g, -1, 1));
    ProjPoint anchor = s(axis_point_nearest_origin(m));
    HalfTurns t = decompose_half_turns(m, anchor);
    CHECK(projectively_equal(reflection(t.second) * reflection(t.first), m, 1e-8));
  }
}

TEST_CASE("distance and midpoint") {
  CHECK(dist(D(0.0), D(0.5)) == doctest::Approx(2 * std::atanh(0.5)).epsilon(1e-14));
  std::mt19937_64 g(18);
  for (int k = 0; k < 200; ++k) {
    cplx a = oracle::random_disc_point(g, 4.0), b = oracle::random_disc_point(g, 4.0);
    CHECK(dist(D(a), D(b)) == doctest::Approx(oracle::disc_dist(a, b)).epsilon(1e-9));
    cplx m = midpoint(D(a), D(b)).z();
    CHECK(oracle::disc_dist(a, m) == doctest::Approx(oracle::disc_dist(a, b) / 2).epsilon(1e-8));
    CHECK(oracle::disc_dist(m, b) == doctest::Approx(oracle::disc_dist(a, b) / 2).epsilon(1e-8));
  }
}

}  // TEST_SUITE
