#include <doctest.h>

#include "oracles.hpp"
#include "toledo/sampling.hpp"

using namespace toledo;
using oracle::pi;

namespace {

HypRep discrete(int n, std::uint64_t seed, int sign = 1) {
  SampleConfig c;
  c.n = n;
  c.seed = seed;
  c.sign = sign;
  return sample_discrete(c);
}

HypRep generic(int n, std::uint64_t seed) {
  SampleConfig c;
  c.n = n;
  c.seed = seed;
  return sample_generic(c);
}

// First generic sample with |area| below the maximum by more than 0.1.
HypRep non_maximal(int n, std::uint64_t seed = 0) {
  for (std::uint64_t s = seed;; ++s) {
    HypRep r = generic(n, s);
    if (std::abs(area(r)) < (n - 4) * pi - 0.1) return r;
  }
}

BoundaryTuple spaced(int n) {
  BoundaryTuple t;
  const int m = 2 * n - 6;
  for (int k = 1; k <= m; ++k) t.angles.push_back(k * pi / (m + 1));
  return t;
}

HypRep conjugate(const HypRep& rep, const Isometry& g) {
  std::vector<ProjPoint> c;
  for (const auto& q : rep.centers()) c.push_back(g(q));
  return HypRep::trusted(c);
}

Isometry some_isometry() {
  return translation_to_origin(cplx(0.3, -0.45)) * Isometry(std::polar(1.0, 0.4), 0.0, 0.0, std::polar(1.0, -0.4));
}

}  // namespace

TEST_SUITE("hyperelliptic") {

TEST_CASE("validation") {
  HypRep r = from_boundary_tuple(spaced(6));
  CHECK(validate(r.centers()).n() == 6);
  std::vector<ProjPoint> c = r.centers();
  c[2] = ProjPoint::disc(c[2].z() + 1e-3);
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("RelationViolated"), Error);
  HypRep g = generic(5, 3);
  CHECK(std::abs(std::abs(g.relation().trace()) - 2.0) < 1e-9);
  std::vector<ProjPoint> four(g.centers().begin(), g.centers().begin() + 4);
  CHECK_THROWS_WITH_AS(validate(four), doctest::Contains("TooFewGenerators"), Error);
  std::vector<ProjPoint> same(6, ProjPoint::disc(0.2));
  CHECK_THROWS_AS(validate(same), Error);
}

TEST_CASE("area values") {
  HypRep r = discrete(6, 1);
  CHECK(area(r) == doctest::Approx(2 * pi).epsilon(1e-9));
  CHECK(area(apply_aut(r, parse_aut_word("J", 6))) == doctest::Approx(-2 * pi).epsilon(1e-9));
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(std::abs(std::abs(area(generic(5, s))) - pi) < 1e-7);
}

TEST_CASE("area does not depend on the base point") {
  std::mt19937_64 g(21);
  for (int n : {5, 6, 7, 8}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      HypRep r = s % 2 ? discrete(n, s) : generic(n, s);
      double a0 = area(r);
      CHECK(std::abs(std::remainder(a0 - n * pi, 2 * pi)) < 1e-7);
      CHECK(std::abs(a0) <= (n - 4) * pi + 1e-7);
      for (int k = 0; k < 20; ++k) {
        ProjPoint p = k % 4 == 0 ? ProjPoint::boundary(oracle::random_angle(g))
                                 : ProjPoint::disc(oracle::random_disc_point(g, 3.0));
        CHECK(std::abs(area(r, p) - a0) < 1e-8);
      }
    }
  }
}

TEST_CASE("area bound over generic samples") {
  double worst = -1.0;
  for (int n : {5, 6, 8}) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
      worst = std::max(worst, std::abs(area(generic(n, s))) - (n - 4) * pi);
    }
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("i-cycles") {
  HypRep r = discrete(6, 1);
  ICycle c = i_cycle(r, 1);
  CHECK(c.points.size() == 8);
  CHECK(c.orientation == Orientation::positive);
  CHECK(c.closure_error < 1e-8);
  Isometry g = some_isometry();
  ICycle cg = i_cycle(conjugate(r, g), 1);
  CHECK(cg.orientation == Orientation::positive);
  for (size_t k = 0; k < c.points.size(); ++k) CHECK(separation(g(c.points[k]), cg.points[k]) < 1e-8);
  HypRep bad = non_maximal(6);
  CHECK(i_cycle(bad, default_cycle_index(bad)).orientation == Orientation::neither);
}

TEST_CASE("discreteness verdicts") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    HypRep r = discrete(6 + s % 3, s);
    DiscretenessReport d = is_discrete(r);
    CHECK(d.verdict == Verdict::discrete_positive);
    CHECK(std::abs(d.area - (r.n() - 4) * pi) < 1e-7);
    CHECK(d.area_agrees);
    for (int i = 1; i <= r.n(); ++i) CHECK(is_discrete(r, i).verdict == Verdict::discrete_positive);
    CHECK(is_discrete(discrete(7, s, -1)).verdict == Verdict::discrete_negative);
  }
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(is_discrete(generic(5, s)).verdict != Verdict::not_discrete);
  HypRep bad = non_maximal(8, 5);
  DiscretenessReport d = is_discrete(bad);
  CHECK(d.verdict == Verdict::not_discrete);
  CHECK(std::abs(d.area) < 4 * pi - 1e-6);
}

TEST_CASE("boundary tuples") {
  BoundaryTuple t = spaced(6);
  HypRep r = from_boundary_tuple(t);
  CHECK(is_discrete(r).verdict == Verdict::discrete_positive);
  CHECK(area(r) == doctest::Approx(2 * pi).epsilon(1e-9));
  BoundaryTuple back = to_boundary_tuple(r);
  for (size_t k = 0; k < t.angles.size(); ++k) CHECK(std::abs(back.angles[k] - t.angles[k]) < 1e-8);
  BoundaryTuple conj = to_boundary_tuple(conjugate(r, some_isometry()));
  for (size_t k = 0; k < t.angles.size(); ++k) CHECK(std::abs(conj.angles[k] - t.angles[k]) < 1e-8);

  HypRep five = from_boundary_tuple(spaced(5));
  CHECK(is_discrete(five).verdict == Verdict::discrete_positive);
  CHECK(area(five) == doctest::Approx(pi).epsilon(1e-9));

  BoundaryTuple swapped = t;
  std::swap(swapped.angles[0], swapped.angles[1]);
  CHECK_THROWS_WITH_AS(from_boundary_tuple(swapped), doctest::Contains("BadOrdering"), Error);
  CHECK_THROWS_AS(to_boundary_tuple(non_maximal(6)), Error);

  std::mt19937_64 g(5);
  for (int n = 5; n <= 12; ++n) {
    HypRep q = discrete(n, 100 + n, n % 2 ? -1 : 1);
    BoundaryTuple u = to_boundary_tuple(q);
    CHECK(center_distance(from_boundary_tuple(u), q) < 1e-7);
    for (int i : {1, 2, n}) {
      BoundaryTuple v;
      for (int k = 0; k < 2 * n - 6; ++k) v.angles.push_back(oracle::uniform(g, 0.05, pi - 0.05));
      std::sort(v.angles.begin(), v.angles.end());
      BoundaryTuple w = to_boundary_tuple(from_boundary_tuple(v, i), i);
      for (size_t k = 0; k < v.angles.size(); ++k) CHECK(std::abs(w.angles[k] - v.angles[k]) < 1e-8);
    }
  }
}

TEST_CASE("earthquakes") {
  HypRep r = discrete(7, 2);
  CHECK(center_distance(earthquake(r, 3, 0.0), r) < 1e-12);
  CHECK(center_distance(earthquake(earthquake(r, 3, 0.8), 3, -0.8), r) < 1e-9);
  HypRep e = earthquake(r, 4, 0.37);
  CHECK(is_discrete(e).verdict == Verdict::discrete_positive);
  CHECK(std::abs(area(e) - area(r)) < 1e-9);
  CHECK(e.sign() == r.sign());
  HypRep bad = non_maximal(6, 7);
  HypRep eb = earthquake(bad, 2, -1.3);
  CHECK(std::abs(area(eb) - area(bad)) < 1e-9);
  CHECK(is_discrete(eb).verdict == Verdict::not_discrete);
  std::vector<ProjPoint> c = r.centers();
  CHECK_THROWS_AS(earthquake(r, 0, 1.0), Error);
  // A pair of coincident centres cannot be validated, so build one directly.
  std::vector<ProjPoint> deg = c;
  deg[1] = deg[0];
  CHECK_THROWS_WITH_AS(earthquake(HypRep::trusted(deg), 2, 0.5), doctest::Contains("DegeneratePair"), Error);
}

TEST_CASE("Dehn twists") {
  HypRep r = discrete(6, 4);
  for (int i = 1; i <= 6; ++i) {
    HypRep t = dehn_twist(r, i);
    CHECK(separation(t.q(i - 1), r.q(i)) < 1e-9);
    CHECK(projectively_equal(t.r(i), r.r(i) * r.r(i - 1) * r.r(i), 1e-9));
    CHECK(center_distance(earthquake(t, i, -1.0), r) < 1e-9);
  }
}

TEST_CASE("automorphism words") {
  AutWord w = parse_aut_word("E3^-1, S J I2 S^-1", 6);
  REQUIRE(w.size() == 5);
  CHECK(w[0].kind == AutLetter::Kind::E);
  CHECK(w[0].power == -1);
  CHECK(to_string(w) == "E3^-1 S J I2 S^-1");
  CHECK_THROWS_AS(parse_aut_word("E7", 6), Error);
  CHECK_THROWS_AS(parse_aut_word("X", 6), Error);

  HypRep r = discrete(6, 5);
  CHECK(center_distance(apply_aut(r, parse_aut_word("E1 E2 E3 E4 E5", 6)), apply_aut(r, parse_aut_word("S", 6))) <
        1e-8);
  HypRep conj = conjugate(r, r.r(1));
  CHECK(center_distance(apply_aut(r, parse_aut_word("E1 E2 E3 E4 E5 E6 E5 E4 E3 E2", 6)), conj) < 1e-8);
  CHECK(center_distance(apply_aut(r, parse_aut_word("J J", 6)), r) < 1e-14);
  HypRep s = apply_aut(r, parse_aut_word("S", 6));
  for (int j = 1; j <= 6; ++j) CHECK(separation(s.q(j), r.q(j + 1)) == 0.0);
  HypRep j = apply_aut(r, parse_aut_word("J", 6));
  for (int k = 1; k <= 6; ++k) CHECK(separation(j.q(k), r.q(6 - k)) == 0.0);
  CHECK(std::abs(area(apply_aut(r, parse_aut_word("J", 6))) + area(r)) < 1e-9);
}

TEST_CASE("standard fundamental polygon") {
  for (int n : {5, 6, 8}) {
    HypRep r = discrete(n, 6);
    FundamentalPolygon p = fundamental_polygon(r);
    REQUIRE(p.vertices.size() == static_cast<size_t>(n));
    CHECK(p.convex);
    CHECK(std::abs(p.angle_sum - 2 * pi) < 1e-7);
    for (int k = 0; k < n; ++k) {
      CHECK(separation(p.edge_midpoints[k], r.q(k + 1)) < 1e-9);
      CHECK(projectively_equal(p.pairings[k], r.r(k + 1)));
    }
    // Closing edge: r_n sends p_{n-1} back to p_0.
    CHECK(precise::dist(p.precise_pairings[n - 1](p.precise_vertices[n - 1]), p.precise_vertices[0]) < 1e-9);
    CHECK(tiling_check(p, 2).ok);
  }
  CHECK_THROWS_WITH_AS(fundamental_polygon(non_maximal(6)), doctest::Contains("NotDiscrete"), Error);
}

TEST_CASE("standard polygon tiles at word length 3") {
  FundamentalPolygon p = fundamental_polygon(discrete(6, 8));
  TilingReport t = tiling_check(p, 3, 8);
  CHECK(t.ok);
  CHECK(t.witness.empty());
}

TEST_CASE("restriction to the surface group") {
  HypRep r = discrete(6, 1);
  SurfRep s = restrict_to_surface(r);
  CHECK_NOTHROW(validate_relations(s.gens()));
  CHECK(area_surface(s) == doctest::Approx(4 * pi).epsilon(1e-9));
  CHECK_THROWS_WITH_AS(restrict_to_surface(discrete(7, 1)), doctest::Contains("OddN"), Error);
  Isometry g = some_isometry();
  SurfRep a = restrict_to_surface(conjugate(r, g));
  std::vector<Isometry> conj;
  for (const auto& m : s.gens()) conj.push_back(g * m * g.inverse());
  CHECK(generator_distance(a, SurfRep::trusted(conj)) < 1e-9);
}

}  // TEST_SUITE
