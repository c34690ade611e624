#include "toledo/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace toledo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Boundary point from a lift known to be isotropic up to rounding.
ProjPoint boundary_from_lift(const Lift& v) { return ProjPoint::boundary(std::arg(v.x1 / v.x2)); }

// Eigen-direction of m for the eigenvalue mu.
Lift eigenvector(const Isometry& m, cplx mu) {
  Lift v1{m.b(), mu - m.a()};
  Lift v2{mu - m.d(), m.c()};
  double n1 = std::norm(v1.x1) + std::norm(v1.x2);
  double n2 = std::norm(v2.x1) + std::norm(v2.x2);
  return n1 >= n2 ? v1 : v2;
}

double wrap_positive(double angle) {
  double r = std::fmod(angle, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  return r;
}

double angular_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

}  // namespace

cplx herm_form(const Lift& x, const Lift& y) {
  return x.x1 * std::conj(y.x1) - x.x2 * std::conj(y.x2);
}

ProjPoint ProjPoint::from_lift(const Lift& v) {
  double n2 = std::norm(v.x1) + std::norm(v.x2);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw Error(ErrorKind::InvalidArgument, "projective point needs a finite nonzero lift");
  }
  double f = std::norm(v.x1) - std::norm(v.x2);
  if (std::abs(f) <= kTol.point * n2) return boundary_from_lift(v);
  if (f < 0) return ProjPoint({v.x1 / v.x2, 1.0}, PointClass::negative);
  return ProjPoint({1.0, v.x2 / v.x1}, PointClass::positive);
}

ProjPoint ProjPoint::disc(cplx z) { return from_lift({z, 1.0}); }

ProjPoint ProjPoint::boundary(double angle) {
  return ProjPoint({std::polar(1.0, angle), 1.0}, PointClass::isotropic);
}

cplx ProjPoint::z() const {
  if (kind_ == PointClass::positive) {
    throw Error(ErrorKind::InvalidArgument, "positive point has no disc coordinate");
  }
  return lift_.x1;
}

double ProjPoint::angle() const {
  if (kind_ != PointClass::isotropic) {
    throw Error(ErrorKind::InvalidArgument, "angle of a non-boundary point");
  }
  return std::arg(lift_.x1);
}

double dist(const ProjPoint& p, const ProjPoint& q) {
  if (!p.is_negative() || !q.is_negative()) {
    throw Error(ErrorKind::NonNegativePoint, "distance needs interior points");
  }
  cplx a = p.z();
  cplx b = q.z();
  double r = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::atanh(r);
}

double separation(const ProjPoint& p, const ProjPoint& q) {
  if (p.is_negative() && q.is_negative()) return dist(p, q);
  if (p.is_isotropic() && q.is_isotropic()) return angular_gap(p.angle(), q.angle());
  return std::numeric_limits<double>::infinity();
}

// --- Isometry ---------------------------------------------------------------

double Isometry::norm() const {
  double s = 0;
  for (const auto& e : m_) s += std::norm(e);
  return std::sqrt(s);
}

Lift Isometry::operator()(const Lift& v) const {
  return {m_[0] * v.x1 + m_[1] * v.x2, m_[2] * v.x1 + m_[3] * v.x2};
}

ProjPoint Isometry::operator()(const ProjPoint& p) const {
  Lift v = (*this)(p.lift());
  if (p.is_isotropic()) return boundary_from_lift(v);
  return ProjPoint::from_lift(v);
}

Isometry operator*(const Isometry& x, const Isometry& y) {
  return {x.m_[0] * y.m_[0] + x.m_[1] * y.m_[2], x.m_[0] * y.m_[1] + x.m_[1] * y.m_[3],
          x.m_[2] * y.m_[0] + x.m_[3] * y.m_[2], x.m_[2] * y.m_[1] + x.m_[3] * y.m_[3]};
}

Isometry Isometry::normalized() const {
  cplx s = std::sqrt(det());
  return {m_[0] / s, m_[1] / s, m_[2] / s, m_[3] / s};
}

double projective_distance(const Isometry& m, const Isometry& n) {
  auto diff = [](const Isometry& x, const Isometry& y, double sign) {
    return std::sqrt(std::norm(x.a() - sign * y.a()) + std::norm(x.b() - sign * y.b()) +
                     std::norm(x.c() - sign * y.c()) + std::norm(x.d() - sign * y.d()));
  };
  double scale = std::max({1.0, m.norm(), n.norm()});
  return std::min(diff(m, n, 1.0), diff(m, n, -1.0)) / scale;
}

bool projectively_equal(const Isometry& m, const Isometry& n, double tol) {
  return projective_distance(m, n) <= tol;
}

bool is_plus_minus_identity(const Isometry& m, double tol) {
  return projectively_equal(m, Isometry::identity(), tol);
}

double form_defect(const Isometry& m) {
  // M* eta M with eta = diag(1, -1)
  cplx e00 = std::norm(m.a()) - std::norm(m.c());
  cplx e01 = std::conj(m.a()) * m.b() - std::conj(m.c()) * m.d();
  cplx e11 = std::norm(m.b()) - std::norm(m.d());
  return std::sqrt(std::norm(e00 - 1.0) + 2 * std::norm(e01) + std::norm(e11 + 1.0));
}

Isometry reflection(const ProjPoint& q) {
  if (!q.is_negative()) {
    throw Error(ErrorKind::NonNegativePoint, "reflection centre must lie inside the disc");
  }
  cplx z = q.z();
  double s = std::norm(z) - 1.0;  // <q,q>
  return {kI * (1.0 - 2.0 * std::norm(z) / s), kI * (2.0 * z / s),
          kI * (-2.0 * std::conj(z) / s), kI * (1.0 + 2.0 / s)};
}

IsometryClass classify(const Isometry& m, const Tolerances& tol) {
  IsometryClass out;
  if (is_plus_minus_identity(m, tol.matrix)) return out;
  double tr = m.trace().real();
  double tau = std::abs(tr);
  if (tau < 2.0 - tol.classify) {
    out.tag = IsometryTag::elliptic;
    return out;
  }
  if (tau <= 2.0 + tol.classify) {
    out.tag = IsometryTag::parabolic;
    return out;
  }
  out.tag = IsometryTag::hyperbolic;
  Isometry n = tr < 0 ? -m : m;
  double root = std::sqrt((tau - 2.0) * (tau + 2.0));
  double lambda = 0.5 * (tau + root);
  out.translation_length = 2.0 * std::acosh(0.5 * tau);
  out.attractor = boundary_from_lift(eigenvector(n, lambda));
  out.repeller = boundary_from_lift(eigenvector(n, 1.0 / lambda));
  return out;
}

Isometry hyperbolic_power(const Isometry& m, double t, const Tolerances& tol) {
  if (classify(m, tol).tag != IsometryTag::hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "fractional power of a non-hyperbolic isometry");
  }
  Isometry n = m.trace().real() < 0 ? -m : m;
  // n = cosh(s) I + sinh(s) N with N traceless, N^2 = I.
  double ch = 0.5 * n.trace().real();
  double sh = std::sqrt((ch - 1.0) * (ch + 1.0));
  double s = std::asinh(sh);
  Isometry gen{(n.a() - ch) / sh, n.b() / sh, n.c() / sh, (n.d() - ch) / sh};
  double ct = std::cosh(t * s);
  double st = std::sinh(t * s);
  return {ct + st * gen.a(), st * gen.b(), st * gen.c(), ct + st * gen.d()};
}

Isometry translation_to_origin(cplx p) {
  double s = std::sqrt(1.0 - std::norm(p));
  return {1.0 / s, -p / s, -std::conj(p) / s, 1.0 / s};
}

Isometry isometry_from_boundary_pair(const ProjPoint& a, const ProjPoint& b) {
  if (!a.is_isotropic() || !b.is_isotropic() || separation(a, b) <= kTol.angle) {
    throw Error(ErrorKind::InvalidArgument, "need two distinct boundary points");
  }
  const Lift& la = a.lift();
  const Lift& lb = b.lift();
  cplx beta = -2.0 / std::conj(herm_form(la, lb));
  cplx b1 = beta * lb.x1;
  cplx b2 = beta * lb.x2;
  // [A, beta B] times the inverse of [[-1, 1], [1, 1]].
  Isometry m{0.5 * (-la.x1 + b1), 0.5 * (la.x1 + b1), 0.5 * (-la.x2 + b2), 0.5 * (la.x2 + b2)};
  return m.normalized();
}

Isometry normalizing_isometry(const ProjPoint& repeller, const ProjPoint& attractor,
                              const ProjPoint& on_axis) {
  Isometry back = isometry_from_boundary_pair(repeller, attractor).inverse();
  double x = back(on_axis).z().real();
  return translation_to_origin(x) * back;
}

// --- Geodesics ----------------------------------------------------------------

Geodesic::Geodesic(const ProjPoint& start, const ProjPoint& end, const Tolerances& tol)
    : start_(start), end_(end) {
  if (!start.is_isotropic() || !end.is_isotropic()) {
    throw Error(ErrorKind::InvalidArgument, "geodesic endpoints must be boundary points");
  }
  if (separation(start, end) <= tol.angle) {
    throw Error(ErrorKind::InvalidArgument, "geodesic endpoints coincide");
  }
}

double Geodesic::distance_to(const ProjPoint& p) const {
  Isometry back = isometry_from_boundary_pair(start_, end_).inverse();
  cplx w = back(p).z();
  return std::asinh(2.0 * std::abs(w.imag()) / (1.0 - std::norm(w)));
}

Geodesic geodesic_through(const ProjPoint& p, const ProjPoint& q) {
  if (p.is_isotropic() && q.is_isotropic()) return Geodesic(p, q);
  if (p.is_negative()) {
    Isometry to0 = translation_to_origin(p.z());
    cplx u = to0(q).z();
    u /= std::abs(u);
    Isometry from0 = to0.inverse();
    return Geodesic(from0(ProjPoint::boundary(std::arg(-u))), from0(ProjPoint::boundary(std::arg(u))));
  }
  if (!q.is_negative()) {
    throw Error(ErrorKind::NonNegativePoint, "geodesic through a positive point");
  }
  Isometry to0 = translation_to_origin(q.z());
  cplx u = to0(p).z();
  return Geodesic(p, to0.inverse()(ProjPoint::boundary(std::arg(-u))));
}

ProjPoint midpoint(const ProjPoint& p, const ProjPoint& q) {
  if (!p.is_negative() || !q.is_negative()) {
    throw Error(ErrorKind::NonNegativePoint, "midpoint needs interior points");
  }
  Isometry to0 = translation_to_origin(p.z());
  cplx w = to0(q).z();
  double r = std::abs(w);
  if (r == 0.0) return p;
  double half = r / (1.0 + std::sqrt(std::max(0.0, 1.0 - r * r)));  // tanh(atanh(r) / 2)
  return to0.inverse()(ProjPoint::disc(w / r * half));
}

double triangle_area(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                     const Tolerances& tol) {
  auto same_ideal = [&](const ProjPoint& a, const ProjPoint& b) {
    return a.is_isotropic() && b.is_isotropic() && separation(a, b) <= tol.angle;
  };
  if (same_ideal(p1, p2) || same_ideal(p2, p3) || same_ideal(p3, p1)) return 0.0;
  cplx prod = -herm_form(p1.lift(), p2.lift()) * herm_form(p2.lift(), p3.lift()) *
              herm_form(p3.lift(), p1.lift());
  if (prod == 0.0) return 0.0;
  return 2.0 * std::arg(prod);
}

double polygon_area(const ProjPoint& c, std::span<const ProjPoint> vertices, const Tolerances& tol) {
  const size_t k = vertices.size();
  if (k < 2) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    sum += triangle_area(c, vertices[i], vertices[(i + 1) % k], tol);
  }
  return sum;
}

OrientationResult cycle_orientation(std::span<const ProjPoint> points, const Tolerances& tol) {
  const size_t k = points.size();
  if (k < 3) throw Error(ErrorKind::InvalidArgument, "a cycle needs at least three points");
  std::vector<double> theta(k);
  for (size_t i = 0; i < k; ++i) {
    if (!points[i].is_isotropic()) {
      throw Error(ErrorKind::InvalidArgument, "cycle points must lie on the boundary");
    }
    theta[i] = points[i].angle();
  }
  OrientationResult out;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      if (angular_gap(theta[i], theta[j]) <= tol.angle) {
        out.diagnostic = "DegeneratePoints: points " + std::to_string(i) + " and " +
                         std::to_string(j) + " coincide";
        return out;
      }
    }
  }
  double total = 0.0;
  for (size_t i = 0; i < k; ++i) total += wrap_positive(theta[(i + 1) % k] - theta[i]);
  long turns = std::lround(total / (2 * kPi));
  if (turns == 1) {
    out.orientation = Orientation::positive;
  } else if (turns == static_cast<long>(k) - 1) {
    out.orientation = Orientation::negative;
  }
  return out;
}

std::optional<ProjPoint> geodesic_intersection(const Geodesic& g1, const Geodesic& g2,
                                               const Tolerances& tol) {
  auto near = [&](const ProjPoint& a, const ProjPoint& b) { return separation(a, b) <= tol.angle; };
  if ((near(g1.start(), g2.start()) && near(g1.end(), g2.end())) ||
      (near(g1.start(), g2.end()) && near(g1.end(), g2.start()))) {
    throw Error(ErrorKind::CoincidentGeodesics, "the geodesics share both endpoints");
  }
  const std::array<ProjPoint, 4> quad{g1.start(), g2.start(), g1.end(), g2.end()};
  if (cycle_orientation(quad, tol).orientation == Orientation::neither) return std::nullopt;

  // Send g1 to the real diameter; a disc point x lies on the geodesic (c, d)
  // iff mu <x,C><D,x> is real positive, where mu = 1 - c conj(d).
  Isometry fwd = isometry_from_boundary_pair(g1.start(), g1.end());
  Isometry back = fwd.inverse();
  cplx c = back(g2.start()).z();
  cplx d = back(g2.end()).z();
  cplx mu = 1.0 - c * std::conj(d);
  double qa = (mu * std::conj(c) * d).imag();
  double qb = -(mu * (std::conj(c) + d)).imag();
  double qc = mu.imag();

  std::array<double, 2> roots{};
  int count = 0;
  if (std::abs(qa) <= 1e-14 * (std::abs(qb) + std::abs(qc))) {
    roots[count++] = -qc / qb;
  } else {
    double disc = std::max(0.0, qb * qb - 4 * qa * qc);
    double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    roots[count++] = q / qa;
    if (q != 0.0) roots[count++] = qc / q;
  }
  std::optional<double> best;
  for (int i = 0; i < count; ++i) {
    double x = roots[i];
    if (!(std::abs(x) < 1.0)) continue;
    cplx v = mu * (x * std::conj(c) - 1.0) * (d * x - 1.0);
    if (v.real() <= 0.0) continue;
    if (!best || std::abs(x) < std::abs(*best)) best = x;
  }
  if (!best) return std::nullopt;
  return fwd(ProjPoint::disc(*best));
}

ProjPoint axis_point_nearest_origin(const Isometry& m, const Tolerances& tol) {
  IsometryClass cls = classify(m, tol);
  if (cls.tag != IsometryTag::hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "isometry has no axis");
  }
  Isometry fwd = isometry_from_boundary_pair(*cls.repeller, *cls.attractor);
  cplx w = fwd.inverse()(ProjPoint::disc(0.0)).z();
  double u = w.real();
  double s = 1.0 + std::norm(w);
  double x = 2.0 * u / (s + std::sqrt(s * s - 4.0 * u * u));
  return fwd(ProjPoint::disc(x));
}

HalfTurns decompose_half_turns(const Isometry& m, const std::optional<ProjPoint>& anchor,
                               const Tolerances& tol) {
  IsometryClass cls = classify(m, tol);
  if (cls.tag != IsometryTag::hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "only hyperbolic isometries split into half-turns");
  }
  ProjPoint first = anchor ? *anchor : axis_point_nearest_origin(m, tol);
  if (!first.is_negative()) {
    throw Error(ErrorKind::NonNegativePoint, "anchor must lie inside the disc");
  }
  double off = Geodesic(*cls.repeller, *cls.attractor).distance_to(first);
  if (off > 1e-8) {
    throw Error(ErrorKind::AnchorOffAxis,
                "anchor is " + short_number(off) + " away from the translation axis");
  }
  ProjPoint second = hyperbolic_power(m, 0.5, tol)(first);
  return {first, second};
}

double interior_angle(const ProjPoint& prev, const ProjPoint& vertex, const ProjPoint& next) {
  Isometry to0 = translation_to_origin(vertex.z());
  cplx out = to0(next).z();
  cplx in = to0(prev).z();
  return wrap_positive(std::arg(in / out));
}

cplx klein(const ProjPoint& p) {
  cplx z = p.z();
  return 2.0 * z / (1.0 + std::norm(z));
}

ProjPoint from_klein(cplx k) {
  double r2 = std::min(1.0, std::norm(k));
  return ProjPoint::disc(k / (1.0 + std::sqrt(1.0 - r2)));
}

namespace {

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

double point_segment_distance(cplx x, cplx a, cplx b) {
  cplx ab = b - a;
  double len2 = std::norm(ab);
  double t = len2 > 0 ? std::clamp(((x - a) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
  return std::abs(x - (a + t * ab));
}

}  // namespace

double segment_distance(cplx a, cplx b, cplx c, cplx d) {
  double o1 = cross(b - a, c - a);
  double o2 = cross(b - a, d - a);
  double o3 = cross(d - c, a - c);
  double o4 = cross(d - c, b - c);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return 0.0;
  }
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

bool polygon_contains(std::span<const cplx> poly, cplx x, double clearance) {
  const size_t m = poly.size();
  bool inside = false;
  for (size_t i = 0, j = m - 1; i < m; j = i++) {
    const cplx& a = poly[i];
    const cplx& b = poly[j];
    if (point_segment_distance(x, a, b) <= clearance) return false;
    if ((a.imag() > x.imag()) != (b.imag() > x.imag())) {
      double at = a.real() + (x.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (x.real() < at) inside = !inside;
    }
  }
  return inside;
}

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::negative: return "negative";
    case PointClass::isotropic: return "isotropic";
    case PointClass::positive: return "positive";
  }
  return "?";
}

const char* to_string(IsometryTag t) {
  switch (t) {
    case IsometryTag::identity: return "identity";
    case IsometryTag::elliptic: return "elliptic";
    case IsometryTag::parabolic: return "parabolic";
    case IsometryTag::hyperbolic: return "hyperbolic";
  }
  return "?";
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::positive: return "positive";
    case Orientation::negative: return "negative";
    case Orientation::neither: return "neither";
  }
  return "?";
}

}  // namespace toledo
