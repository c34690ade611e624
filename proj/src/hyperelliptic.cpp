#include "toledo/hyperelliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>

namespace toledo {

namespace {

int wrap_index(int i, int n) { return ((i - 1) % n + n) % n; }

std::vector<precise::Vec> lifts(const HypRep& rep) {
  std::vector<precise::Vec> out;
  for (const auto& q : rep.centers()) out.push_back(precise::lift(q));
  return out;
}

HypRep from_lifts(const std::vector<precise::Vec>& c) {
  std::vector<ProjPoint> centers;
  for (const auto& v : c) centers.push_back(precise::to_point(v));
  return HypRep::trusted(std::move(centers));
}

// Earthquakes act on 50-digit lifts: words of twists carry centres far from
// the disc centre before bringing them back, and double coordinates of those
// intermediate centres lose the relation.
void quake(std::vector<precise::Vec>& c, int i, double t) {
  const int n = static_cast<int>(c.size());
  if (i < 1 || i > n) throw Error(ErrorKind::IndexOutOfRange, "earthquake index " + std::to_string(i));
  precise::Vec& a = c[wrap_index(i - 1, n)];
  precise::Vec& b = c[wrap_index(i, n)];
  precise::real ch = precise::cosh_half_dist(a, b);
  // |tr r_i r_{i-1}| - 2 = 4 (cosh^2(d/2) - 1)
  if (4 * (ch * ch - 1) <= kTol.classify) {
    throw Error(ErrorKind::DegeneratePair,
                "q_" + std::to_string(wrap_index(i - 1, n) + 1) + " and q_" + std::to_string(wrap_index(i, n) + 1) +
                    " are too close to define an earthquake");
  }
  precise::real d = 2 * boost::multiprecision::acosh(ch);
  precise::Mat g = precise::translation_along(a, b, d * t);
  a = g(a);
  b = g(b);
}

constexpr double kPi = std::numbers::pi;

}  // namespace

const ProjPoint& HypRep::q(int i) const { return centers_[wrap_index(i, n())]; }

Isometry HypRep::relation() const {
  // Partial products grow like the exponential of the centre spread, which
  // double rounding cannot absorb for large n.
  precise::Mat prod;
  for (const auto& c : centers_) prod = precise::reflection(c) * prod;
  return prod.to_isometry();
}

HypRep HypRep::trusted(std::vector<ProjPoint> centers) {
  HypRep rep(std::move(centers), 1);
  rep.sign_ = rep.relation().trace().real() >= 0 ? 1 : -1;
  return rep;
}

HypRep validate(std::vector<ProjPoint> centers, double tol) {
  const int n = static_cast<int>(centers.size());
  if (n < 5) {
    throw Error(ErrorKind::TooFewGenerators, "n = " + std::to_string(n) + " but at least 5 centres are needed");
  }
  for (int k = 0; k < n; ++k) {
    if (!centers[k].is_negative()) {
      throw Error(ErrorKind::NonNegativePoint, "centre q_" + std::to_string(k + 1) + " is not inside the disc");
    }
  }
  HypRep rep = HypRep::trusted(std::move(centers));
  double residual = projective_distance(rep.relation(), Isometry::identity());
  if (residual > tol) {
    throw Error(ErrorKind::RelationViolated,
                "reflection product differs from +-I by " + short_number(residual));
  }
  for (int i = 1; i <= n; ++i) {
    if (is_plus_minus_identity(rep.pair(i))) {
      throw Error(ErrorKind::DegenerateRep,
                  "q_" + std::to_string(wrap_index(i - 1, n) + 1) + " and q_" + std::to_string(i) +
                      " coincide; the representation factors through H_" + std::to_string(n - 2));
    }
  }
  return rep;
}

double area(const HypRep& rep, const std::optional<ProjPoint>& p) {
  precise::Vec cur = precise::lift(p ? *p : ProjPoint::disc(0.0));
  std::vector<precise::Vec> orbit;
  orbit.reserve(rep.n());
  const auto r = precise::balanced_half_turns(rep.centers());
  for (const auto& m : r) {
    cur = m(cur);
    orbit.push_back(cur);
  }
  return precise::polygon_area(precise::Vec{}, orbit);
}

ICycle i_cycle(const HypRep& rep, int i) {
  const int n = rep.n();
  if (i < 1 || i > n) throw Error(ErrorKind::IndexOutOfRange, "cycle index " + std::to_string(i));
  IsometryClass cls = classify(rep.pair(i));
  if (cls.tag != IsometryTag::hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "r_i r_{i-1} is not hyperbolic for i = " + std::to_string(i));
  }
  ICycle out;
  out.i = i;
  ProjPoint b = *cls.repeller;
  ProjPoint e = *cls.attractor;
  const ProjPoint b0 = b;
  const ProjPoint e0 = e;
  for (int j = i; j <= i + n - 3; ++j) {
    if (j > i) {
      Isometry r = rep.r(j);
      b = r(b);
      e = r(e);
    }
    out.points.push_back(b);
    out.points.push_back(e);
  }
  Isometry r = rep.r(i + n - 2);
  out.closure_error = std::max(separation(r(b), b0), separation(r(e), e0));
  OrientationResult o = cycle_orientation(out.points);
  out.orientation = o.orientation;
  out.diagnostic = o.diagnostic;
  return out;
}

int default_cycle_index(const HypRep& rep) {
  int best = 1;
  double best_dist = -1.0;
  for (int i = 1; i <= rep.n(); ++i) {
    double d = dist(rep.q(i - 1), rep.q(i));
    if (d > best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::discrete_positive: return "discrete+";
    case Verdict::discrete_negative: return "discrete-";
    case Verdict::not_discrete: return "not_discrete";
  }
  return "?";
}

DiscretenessReport is_discrete(const HypRep& rep, std::optional<int> i) {
  DiscretenessReport out;
  out.cycle = i_cycle(rep, i ? *i : default_cycle_index(rep));
  out.area = area(rep);
  out.maximal_area = (rep.n() - 4) * kPi;
  if (out.cycle.orientation == Orientation::positive) {
    out.verdict = Verdict::discrete_positive;
  } else if (out.cycle.orientation == Orientation::negative) {
    out.verdict = Verdict::discrete_negative;
  }
  bool maximal = std::abs(std::abs(out.area) - out.maximal_area) <= 1e-6;
  out.area_agrees = maximal == (out.verdict != Verdict::not_discrete);
  return out;
}

void check_ordering(const BoundaryTuple& t) {
  const size_t m = t.angles.size();
  if (m < 4 || m % 2 != 0) {
    throw Error(ErrorKind::BadOrdering, "a boundary tuple has an even number (at least 4) of angles");
  }
  if (t.sign != 1 && t.sign != -1) throw Error(ErrorKind::BadOrdering, "sign must be +1 or -1");
  double prev = 0.0;
  for (size_t k = 0; k < m; ++k) {
    double a = t.sign * t.angles[k];
    if (!std::isfinite(a) || a - prev <= kTol.angle) {
      throw Error(ErrorKind::BadOrdering, "angle " + std::to_string(k + 1) + " breaks the strict order");
    }
    prev = a;
  }
  if (kPi - prev <= kTol.angle) {
    throw Error(ErrorKind::BadOrdering, "last angle leaves the open half circle");
  }
}

BoundaryTuple to_boundary_tuple(const HypRep& rep, int i) {
  ICycle cycle = i_cycle(rep, i);
  if (cycle.orientation == Orientation::neither) {
    throw Error(ErrorKind::NotDiscrete, "the " + std::to_string(i) + "-cycle is not oriented");
  }
  Isometry norm = normalizing_isometry(cycle.points[0], cycle.points[1], rep.q(i));
  BoundaryTuple t;
  t.sign = cycle.orientation == Orientation::positive ? 1 : -1;
  for (size_t k = 2; k < cycle.points.size(); ++k) t.angles.push_back(norm(cycle.points[k]).angle());
  return t;
}

HypRep from_boundary_tuple(const BoundaryTuple& t, int i) {
  check_ordering(t);
  const int n = t.n();
  if (i < 1 || i > n) throw Error(ErrorKind::IndexOutOfRange, "base index " + std::to_string(i));
  auto z = [&](int k) { return ProjPoint::boundary(t.angles[k - 1]); };
  const ProjPoint minus1 = ProjPoint::boundary(kPi);
  const ProjPoint plus1 = ProjPoint::boundary(0.0);
  auto meet = [](const Geodesic& a, const Geodesic& b) {
    auto x = geodesic_intersection(a, b);
    if (!x) throw Error(ErrorKind::NumericallyNotHyperbolic, "consecutive geodesics fail to cross");
    return *x;
  };

  std::vector<ProjPoint> centers(n, ProjPoint::disc(0.0));
  auto slot = [&](int j) -> ProjPoint& { return centers[wrap_index(j, n)]; };
  slot(i + 1) = meet(Geodesic(minus1, z(1)), Geodesic(plus1, z(2)));
  for (int k = 2; k <= n - 3; ++k) {
    slot(i + k) = meet(Geodesic(z(2 * k - 3), z(2 * k - 1)), Geodesic(z(2 * k - 2), z(2 * k)));
  }
  slot(i + n - 2) = meet(Geodesic(z(2 * n - 7), minus1), Geodesic(z(2 * n - 6), plus1));

  Isometry h;
  for (int j = i + 1; j <= i + n - 2; ++j) h = reflection(slot(j)) * h;
  IsometryClass cls = classify(h);
  if (cls.tag != IsometryTag::hyperbolic) {
    throw Error(ErrorKind::NumericallyNotHyperbolic, "|tr h| = " + std::to_string(std::abs(h.trace())));
  }
  double axis_error = std::min(
      std::max(separation(*cls.repeller, minus1), separation(*cls.attractor, plus1)),
      std::max(separation(*cls.repeller, plus1), separation(*cls.attractor, minus1)));
  if (axis_error > 1e-6) {
    throw Error(ErrorKind::NumericallyNotHyperbolic,
                "axis of h misses {-1, 1} by " + short_number(axis_error));
  }
  slot(i + n - 1) = decompose_half_turns(h, ProjPoint::disc(0.0)).second;
  // The crossings carry the rounding of the angles; settle the last pair in
  // extended precision so the relation holds.
  std::vector<ProjPoint> rotated;
  for (int j = i + 1; j <= i + n; ++j) rotated.push_back(slot(j));
  std::vector<precise::Vec> settled = precise::balanced_centres(rotated);
  slot(i + n - 1) = precise::to_point(settled[n - 2]);
  slot(i) = precise::to_point(settled[n - 1]);
  return validate(std::move(centers));
}

HypRep earthquake(const HypRep& rep, int i, double t) {
  std::vector<precise::Vec> c = lifts(rep);
  quake(c, i, t);
  return from_lifts(c);
}

AutWord parse_aut_word(const std::string& text, int n) {
  static const std::regex token(R"(^(E|I)(\d+)(\^(-?1))?$|^S(\^(-?1))?$|^J$)");
  AutWord w;
  std::string s = text;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    std::smatch m;
    if (!std::regex_match(tok, m, token)) {
      throw Error(ErrorKind::InvalidArgument, "unknown automorphism letter '" + tok + "'");
    }
    AutLetter a;
    if (tok == "J") {
      a.kind = AutLetter::Kind::J;
    } else if (tok[0] == 'S') {
      a.kind = AutLetter::Kind::S;
      if (m[6].matched) a.power = std::stoi(m[6].str());
    } else {
      a.kind = tok[0] == 'E' ? AutLetter::Kind::E : AutLetter::Kind::I;
      a.index = std::stoi(m[2].str());
      if (a.index < 1 || a.index > n) {
        throw Error(ErrorKind::IndexOutOfRange, "letter '" + tok + "' for n = " + std::to_string(n));
      }
      if (m[4].matched) a.power = std::stoi(m[4].str());
    }
    w.push_back(a);
  }
  return w;
}

std::string to_string(const AutWord& w) {
  std::string out;
  for (const auto& a : w) {
    if (!out.empty()) out += ' ';
    switch (a.kind) {
      case AutLetter::Kind::E: out += "E" + std::to_string(a.index); break;
      case AutLetter::Kind::I: out += "I" + std::to_string(a.index); break;
      case AutLetter::Kind::S: out += "S"; break;
      case AutLetter::Kind::J: out += "J"; break;
    }
    if (a.power == -1 && a.kind != AutLetter::Kind::J) out += "^-1";
  }
  return out;
}

HypRep apply_aut(const HypRep& rep, const AutWord& w) {
  std::vector<precise::Vec> c = lifts(rep);
  const int n = rep.n();
  for (const auto& a : w) {
    std::vector<precise::Vec> next;
    next.reserve(n);
    switch (a.kind) {
      case AutLetter::Kind::E:
        quake(c, a.index, a.power);
        continue;
      case AutLetter::Kind::S:
        for (int j = 1; j <= n; ++j) next.push_back(c[wrap_index(j + a.power, n)]);
        break;
      case AutLetter::Kind::J:
        for (int j = 1; j <= n; ++j) next.push_back(c[wrap_index(n - j, n)]);
        break;
      case AutLetter::Kind::I: {
        precise::Mat r = precise::reflection(c[wrap_index(a.index, n)]);
        for (const auto& q : c) next.push_back(r(q));
        break;
      }
    }
    c = std::move(next);
  }
  return from_lifts(c);
}

FundamentalPolygon fundamental_polygon(const HypRep& rep) {
  DiscretenessReport report = is_discrete(rep);
  if (report.verdict == Verdict::not_discrete) {
    throw Error(ErrorKind::NotDiscrete, "no fundamental polygon for a non-discrete representation");
  }
  const int n = rep.n();
  FundamentalPolygon out;
  const auto r = precise::balanced_half_turns(rep.centers());
  precise::Vec p = precise::midpoint(precise::lift(rep.q(n)), precise::lift(rep.q(1)));
  for (int j = 0; j < n; ++j) {
    if (j > 0) p = out.precise_pairings[j - 1](p);
    out.precise_vertices.push_back(p);
    out.vertices.push_back(precise::to_point(p));
    out.precise_pairings.push_back(r[j]);
    out.pairings.push_back(rep.r(j + 1));
  }
  const auto& pv = out.precise_vertices;
  const bool positive = report.verdict == Verdict::discrete_positive;
  out.convex = true;
  for (int k = 0; k < n; ++k) {
    const precise::Vec& next = pv[(k + 1) % n];
    const precise::Vec& prev = pv[(k + n - 1) % n];
    out.edge_midpoints.push_back(precise::to_point(precise::midpoint(pv[k], next)));
    double a = positive ? precise::interior_angle(prev, pv[k], next) : precise::interior_angle(next, pv[k], prev);
    out.angles.push_back(a);
    out.angle_sum += a;
    if (a > kPi + 1e-9) out.convex = false;
  }
  return out;
}

double center_distance(const HypRep& a, const HypRep& b) {
  if (a.n() != b.n()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int j = 1; j <= a.n(); ++j) worst = std::max(worst, separation(a.q(j), b.q(j)));
  return worst;
}

}  // namespace toledo
