#include <doctest.h>

#include "oracles.hpp"
#include "toledo/document.hpp"
#include "toledo/sampling.hpp"

using namespace toledo;
using oracle::pi;

namespace {

SampleConfig config(int n, std::uint64_t seed, int sign = 1) {
  SampleConfig c;
  c.n = n;
  c.seed = seed;
  c.sign = sign;
  return c;
}

// Generic n = 6 sample with a short product of half-turns that is elliptic
// by a rotation angle far from any rational with small denominator.
HypRep with_elliptic() {
  for (std::uint64_t s = 0;; ++s) {
    HypRep r = sample_generic(config(6, s));
    for (int i = 1; i <= 6; ++i) {
      double tr = std::abs((r.r(i + 2) * r.r(i + 1) * r.r(i)).trace().real());
      if (tr < 1.8 && tr > 0.2) return r;
    }
  }
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("sampler examples") {
  HypRep a = sample_discrete(config(6, 1));
  CHECK(is_discrete(a).verdict == Verdict::discrete_positive);
  CHECK(area(a) == doctest::Approx(2 * pi).epsilon(1e-9));
  HypRep b = sample_discrete(config(12, 7));
  CHECK(is_discrete(b).verdict == Verdict::discrete_positive);
  CHECK(std::abs(area(b) - 8 * pi) < 1e-7);
  HypRep c = sample_discrete(config(9, 3, -1));
  CHECK(is_discrete(c).verdict == Verdict::discrete_negative);
  for (std::uint64_t s = 0; s < 20; ++s) {
    HypRep g = sample_generic(config(7, s));
    CHECK(projective_distance(g.relation(), Isometry::identity()) < 1e-9);
  }
  SampleConfig tight = config(12, 1);
  tight.min_gap = 0.2;
  CHECK_THROWS_AS(sample_discrete(tight), Error);
}

TEST_CASE("determinism") {
  CHECK(write_document(make_document(sample_discrete(config(8, 11)))) ==
        write_document(make_document(sample_discrete(config(8, 11)))));
  CHECK(write_document(make_document(sample_generic(config(8, 11)))) ==
        write_document(make_document(sample_generic(config(8, 11)))));
  CHECK(write_document(make_document(sample_surface(config(6, 2), true))) ==
        write_document(make_document(sample_surface(config(6, 2), true))));
  CHECK(center_distance(sample_discrete(config(8, 11)), sample_discrete(config(8, 12))) > 1e-3);
  // Stream values depend only on the 64-bit engine and integer arithmetic.
  Rng r(42, 7);
  CHECK(r.uniform() == 0.39541941965231242);
  CHECK(r.uniform() == 0.87788829341473928);
  SampleConfig c = config(6, 1);
  Rng t(c.seed, c.index);
  std::vector<double> want = {0.1630788602811693, 0.53500853757424527, 0.59504689609460792,
                              1.1184935304464971, 1.2530142381841018, 1.4671202639152916};
  CHECK(sample_tuple(c, t).angles == want);
  // Batches are per-index streams, so any evaluation order agrees.
  SampleConfig i3 = config(6, 5);
  i3.index = 3;
  HypRep late = sample_generic(i3);
  for (std::uint64_t k = 0; k < 3; ++k) {
    SampleConfig other = config(6, 5);
    other.index = k;
    sample_generic(other);
  }
  CHECK(center_distance(sample_generic(i3), late) == 0.0);
}

TEST_CASE("generic area bound over ten thousand samples") {
  double worst = -1.0;
  int flagged = 0;
  int flagged_discrete = 0;
  for (int k = 0; k < 10000; ++k) {
    const int n = 5 + k % 4;
    HypRep r = sample_generic(config(n, 1000 + k));
    const double a = area(r);
    worst = std::max(worst, std::abs(a) - (n - 4) * pi);
    if (n >= 6 && k % 10 == 1 && std::abs(a) < (n - 4) * pi - 0.1) {
      ++flagged;
      if (is_discrete(r).verdict != Verdict::not_discrete) ++flagged_discrete;
    }
  }
  CHECK(worst <= 1e-7);
  CHECK(flagged > 0);
  CHECK(flagged_discrete == 0);
}

TEST_CASE("orbit probe") {
  OrbitProbeReport d = orbit_probe(sample_discrete(config(6, 1)), 4, 1e-3);
  CHECK(d.verdict == ProbeVerdict::consistent_with_discrete);
  CHECK(d.min_displacement > 1e-3);
  CHECK(orbit_probe(sample_discrete(config(5, 1)), 5, 1e-3).identity_words > 0);
  CHECK(orbit_probe(sample_discrete(config(6, 1)), 0, 1e-3).verdict == ProbeVerdict::inconclusive);

  OrbitProbeReport e = orbit_probe(with_elliptic(), 6, 1e-3);
  CHECK(e.verdict != ProbeVerdict::consistent_with_discrete);
  if (e.verdict == ProbeVerdict::violation_found) CHECK_FALSE(e.witness.empty());

  SurfRep s = restrict_to_surface(sample_discrete(config(6, 2)));
  CHECK(orbit_probe(s, 3, 1e-3).verdict == ProbeVerdict::consistent_with_discrete);
  CHECK_THROWS_WITH_AS(orbit_probe(sample_discrete(config(6, 1)), 6, 1e-3, 1000), doctest::Contains("BudgetExceeded"),
                       Error);
}

TEST_CASE("probe agrees with certified verdicts") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    HypRep r = sample_discrete(config(5 + s % 3, s));
    CHECK(orbit_probe(r, 4, 1e-4).verdict != ProbeVerdict::violation_found);
  }
}

TEST_CASE("tiling oracle") {
  FundamentalPolygon p = fundamental_polygon(sample_discrete(config(6, 3)));
  TilingReport ok = tiling_check(p, 2);
  CHECK(ok.ok);
  CHECK(ok.elements > 0);
  CHECK(tiling_check(p, 0).ok);

  // Half-turns about a moved centre no longer pair the edges.
  HypRep r = sample_discrete(config(6, 3));
  std::vector<Isometry> moved;
  for (int k = 1; k <= 6; ++k) moved.push_back(reflection(k == 3 ? ProjPoint::disc(0.5 * r.q(k).z()) : r.q(k)));
  TilingReport bad = tiling_check(p.vertices, moved, 2);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  std::vector<Isometry> skewed = p.pairings;
  skewed[1] = skewed[1] * su11_exp(0.0, cplx(0.2, 0.1));
  CHECK_FALSE(tiling_check(p.vertices, skewed, 2).ok);
}

TEST_CASE("area oracle") {
  std::vector<ProjPoint> square = {ProjPoint::boundary(0.0), ProjPoint::boundary(pi / 2), ProjPoint::boundary(pi),
                                   ProjPoint::boundary(3 * pi / 2)};
  std::vector<ProjPoint> centres;
  for (cplx z : {cplx(0.0), cplx(0.3, 0.1), cplx(-0.5, 0.2), cplx(0.1, -0.7), cplx(0.6, 0.6)}) {
    centres.push_back(ProjPoint::disc(z));
  }
  CHECK(area_oracle(square, centres) == doctest::Approx(2 * pi).epsilon(1e-9));
  CHECK(area_oracle({ProjPoint::disc(0.2), ProjPoint::disc(cplx(0.1, 0.4))}, centres) == doctest::Approx(0.0));

  for (std::uint64_t s = 0; s < 10; ++s) {
    HypRep r = sample_generic(config(5, s));
    ProjPoint p = ProjPoint::disc(0.0);
    std::vector<ProjPoint> orbit;
    for (int k = 1; k <= r.n(); ++k) {
      p = r.r(k)(p);
      orbit.push_back(p);
    }
    double a = area_oracle(orbit, {ProjPoint::disc(0.0), r.q(1), ProjPoint::boundary(1.0)});
    CHECK(std::abs(a - area(r)) < 1e-8);
  }
  std::vector<ProjPoint> far = {ProjPoint::disc(cplx(0.99999999, 0.0)), ProjPoint::disc(cplx(0.0, 0.999999)),
                                ProjPoint::disc(cplx(-0.3, 0.0))};
  CHECK_NOTHROW(area_oracle(far, centres));
}

TEST_CASE("criteria agree on mixed samples") {
  int checked = 0;
  for (int n : {5, 6, 8, 10}) {
    for (std::uint64_t s = 0; s < 15; ++s) {
      HypRep r = s % 2 ? sample_discrete(config(n, s, s % 4 == 1 ? 1 : -1)) : sample_generic(config(n, s));
      DiscretenessReport d = is_discrete(r);
      const bool maximal = std::abs(std::abs(area(r)) - (n - 4) * pi) < 1e-6;
      CHECK((d.verdict != Verdict::not_discrete) == maximal);
      CHECK(d.area_agrees);
      for (int i = 1; i <= n; ++i) {
        Orientation o = i_cycle(r, i).orientation;
        CHECK((o != Orientation::neither) == maximal);
      }
      ++checked;
    }
  }
  CHECK(checked == 60);
}

}  // TEST_SUITE
