#include "toledo/precise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace toledo::precise {

namespace {

constexpr double kPi = std::numbers::pi;
// Genuine spikes of Q reach angles near 1e-11, so only an exact fold counts.
constexpr double kFoldTolerance = 1e-14;

double wrap_positive(double angle) {
  double r = std::fmod(angle, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  return r;
}

real cross(const Complex& o, const Complex& a, const Complex& b) {
  return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
}

// Euclidean distance from the origin to the plane segment [a, b].
real origin_segment_distance(const Complex& a, const Complex& b) {
  Complex ab = b - a;
  real len2 = norm(ab);
  if (len2 == 0) return abs(a);
  real t = -(a.re * ab.re + a.im * ab.im) / len2;
  if (t <= 0) return abs(a);
  if (t >= 1) return abs(b);
  return abs(a + t * ab);
}

}  // namespace

Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
Complex operator-(const Complex& x) { return {-x.re, -x.im}; }
Complex operator*(const Complex& x, const Complex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
Complex operator*(const real& s, const Complex& x) { return {s * x.re, s * x.im}; }
Complex operator/(const Complex& x, const Complex& y) {
  real den = norm(y);
  return {(x.re * y.re + x.im * y.im) / den, (x.im * y.re - x.re * y.im) / den};
}
Complex conj(const Complex& x) { return {x.re, -x.im}; }
real norm(const Complex& x) { return x.re * x.re + x.im * x.im; }
real abs(const Complex& x) { return boost::multiprecision::sqrt(norm(x)); }
double arg(const Complex& x) { return static_cast<double>(boost::multiprecision::atan2(x.im, x.re)); }

Vec lift(const ProjPoint& p) { return {Complex(p.lift().x1), Complex(p.lift().x2)}; }

Vec from_disc(const Complex& z) { return {z, Complex(real(1))}; }

Complex form(const Vec& x, const Vec& y) { return x.x1 * conj(y.x1) - x.x2 * conj(y.x2); }

Mat Mat::from(const Isometry& m) { return {Complex(m.a()), Complex(m.b()), Complex(m.c()), Complex(m.d())}; }

Isometry Mat::to_isometry() const { return {a.to_cplx(), b.to_cplx(), c.to_cplx(), d.to_cplx()}; }

Vec Mat::operator()(const Vec& v) const { return {a * v.x1 + b * v.x2, c * v.x1 + d * v.x2}; }

Mat operator*(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

double distance_to_identity(const Mat& m) {
  auto off = [&](const real& s) {
    return norm(m.a - Complex(s)) + norm(m.b) + norm(m.c) + norm(m.d - Complex(s));
  };
  real size = norm(m.a) + norm(m.b) + norm(m.c) + norm(m.d);
  real best = boost::multiprecision::sqrt(std::min(off(1), off(-1)));
  real scale = boost::multiprecision::sqrt(std::max(real(1), size));
  return static_cast<double>(best / scale);
}

Mat reflection(const ProjPoint& q) {
  if (!q.is_negative()) throw Error(ErrorKind::NonNegativePoint, "half-turn centre must lie inside the disc");
  Complex z(q.z());
  real s = norm(z) - 1;
  Complex i(real(0), real(1));
  return {i * Complex(1 - 2 * norm(z) / s), i * Complex(2 / s) * z, i * Complex(-2 / s) * conj(z),
          i * Complex(1 + 2 / s)};
}

Mat reflection(const Vec& q) {
  real s = form(q, q).re;
  if (!(s < 0)) throw Error(ErrorKind::NonNegativePoint, "half-turn centre must lie inside the disc");
  Complex i(real(0), real(1));
  real t = 2 / s;
  return {i * Complex(1 - t * norm(q.x1)), i * Complex(t) * (q.x1 * conj(q.x2)),
          i * Complex(-t) * (q.x2 * conj(q.x1)), i * Complex(1 + t * norm(q.x2))};
}

Complex sqrt(const Complex& x) {
  real r = abs(x);
  real re = boost::multiprecision::sqrt(std::max(real(0), (r + x.re) / 2));
  real im = boost::multiprecision::sqrt(std::max(real(0), (r - x.re) / 2));
  return {re, x.im < 0 ? -im : im};
}

std::vector<Vec> balanced_centres(const std::vector<ProjPoint>& centres) {
  std::vector<Vec> out;
  for (const auto& q : centres) out.push_back(lift(q));
  const size_t n = out.size();
  if (n < 4) return out;
  Mat h;
  for (size_t j = 0; j + 2 < n; ++j) h = precise::reflection(out[j]) * h;
  Mat g = h.inverse();
  // Move q_{n-1} to the origin, where the nearest axis point is the Klein
  // midpoint of the fixed points.
  Mat to0 = translation_to_origin(out[n - 2]);
  Mat m = to0 * g * to0.inverse();
  Complex tr = m.a + m.d;
  if (norm(tr) <= 4 || norm(m.c) == 0) return out;
  Complex root = sqrt(tr * tr - Complex(real(4)));
  Complex two_c = Complex(real(2)) * m.c;
  Complex u = (m.a - m.d + root) / two_c;
  Complex v = (m.a - m.d - root) / two_c;
  Vec b = to0.inverse()(from_klein(real(0.5) * (u + v)));
  out[n - 2] = b;
  out[n - 1] = midpoint(b, g(b));
  return out;
}

std::vector<Mat> balanced_half_turns(const std::vector<ProjPoint>& centres) {
  std::vector<Mat> out;
  for (const auto& q : balanced_centres(centres)) out.push_back(precise::reflection(q));
  return out;
}

Mat hyperbolic_power(const Mat& m, const real& s) {
  Mat x = m;
  real half = (x.a.re + x.d.re) / 2;
  if (half < 0) {
    x = {-x.a, -x.b, -x.c, -x.d};
    half = -half;
  }
  // Cayley-Hamilton: x^s = (sinh(s theta) x - sinh((s - 1) theta) I) / sinh(theta).
  const real theta = boost::multiprecision::acosh(half);
  const real sh = boost::multiprecision::sinh(theta);
  const real p = boost::multiprecision::sinh(s * theta) / sh;
  const real q = boost::multiprecision::sinh((s - 1) * theta) / sh;
  return {p * x.a - Complex(q), p * x.b, p * x.c, p * x.d - Complex(q)};
}

Mat translation_to_origin(const Vec& p) {
  Complex z = disc(p);
  real s = boost::multiprecision::sqrt(1 - norm(z));
  real inv = 1 / s;
  return {Complex(inv), -(inv * z), -(inv * conj(z)), Complex(inv)};
}

Complex disc(const Vec& v) { return v.x1 / v.x2; }

ProjPoint to_point(const Vec& v) {
  real n1 = norm(v.x1);
  real n2 = norm(v.x2);
  if (n1 < n2) return ProjPoint::from_lift({disc(v).to_cplx(), 1.0});
  return ProjPoint::from_lift({v.x1.to_cplx(), v.x2.to_cplx()});
}

Complex klein(const Vec& v) {
  Complex z = disc(v);
  return (2 / (1 + norm(z))) * z;
}

Vec from_klein(const Complex& k) {
  real s = 1 + boost::multiprecision::sqrt(std::max(real(0), 1 - norm(k)));
  return from_disc((1 / s) * k);
}

real cosh_half_dist(const Vec& p, const Vec& q) {
  real pp = form(p, p).re;
  real qq = form(q, q).re;
  return boost::multiprecision::sqrt(norm(form(p, q)) / (pp * qq));
}

double dist(const Vec& p, const Vec& q) {
  if (!(form(p, p).re < 0) || !(form(q, q).re < 0)) {
    throw Error(ErrorKind::NonNegativePoint, "distance needs interior points");
  }
  real c = cosh_half_dist(p, q);
  real s2 = std::max(real(0), c * c - 1);
  return static_cast<double>(2 * boost::multiprecision::asinh(boost::multiprecision::sqrt(s2)));
}

Vec midpoint(const Vec& p, const Vec& q) {
  Mat to0 = translation_to_origin(p);
  Complex w = disc(to0(q));
  real r = abs(w);
  if (r == 0) return p;
  real half = r / (1 + boost::multiprecision::sqrt(std::max(real(0), 1 - r * r)));
  return to0.inverse()(from_disc((half / r) * w));
}

Mat translation_along(const Vec& from, const Vec& toward, const real& s) {
  Mat to0 = translation_to_origin(from);
  Complex w = disc(to0(toward));
  real r = abs(w);
  Complex u = r == 0 ? Complex(real(1)) : (1 / r) * w;
  real ch = boost::multiprecision::cosh(s / 2);
  real sh = boost::multiprecision::sinh(s / 2);
  // Rotation by u is not unimodular; the product is rescaled below.
  Mat rot{u, Complex(), Complex(), Complex(real(1))};
  Mat rot_inv{conj(u), Complex(), Complex(), Complex(real(1))};
  Mat along{Complex(ch), Complex(sh), Complex(sh), Complex(ch)};
  return to0.inverse() * rot * along * rot_inv * to0;
}

double triangle_area(const Vec& p1, const Vec& p2, const Vec& p3) {
  Complex prod = -(form(p1, p2) * form(p2, p3) * form(p3, p1));
  if (norm(prod) == 0) return 0.0;
  return 2.0 * arg(prod);
}

double polygon_area(const Vec& c, std::span<const Vec> vertices) {
  const size_t k = vertices.size();
  if (k < 3) return 0.0;
  double total = 0.0;
  for (size_t j = 0; j < k; ++j) total += triangle_area(c, vertices[j], vertices[(j + 1) % k]);
  return total;
}

double interior_angle(const Vec& prev, const Vec& vertex, const Vec& next) {
  Mat to0 = translation_to_origin(vertex);
  Complex in = disc(to0(prev));
  Complex out = disc(to0(next));
  return wrap_positive(arg(in / out));
}

double segment_distance(const Vec& x, const Vec& a, const Vec& b) {
  Mat to0 = translation_to_origin(x);
  real r = origin_segment_distance(klein(to0(a)), klein(to0(b)));
  if (r >= 1) return std::numeric_limits<double>::infinity();
  return static_cast<double>(boost::multiprecision::atanh(r));
}

bool polygon_contains(std::span<const Vec> polygon, const Vec& x, double clearance) {
  std::vector<Complex> k;
  k.reserve(polygon.size());
  for (const auto& v : polygon) k.push_back(klein(v));
  return polygon_contains(polygon, k, x, clearance);
}

bool polygon_contains(std::span<const Vec> polygon, std::span<const Complex> k, const Vec& x, double clearance) {
  const size_t m = polygon.size();
  if (m < 3) return false;
  const Complex kx = klein(x);
  bool inside = false;
  for (size_t a = 0, b = m - 1; a < m; b = a++) {
    if ((k[a].im > kx.im) != (k[b].im > kx.im)) {
      real xs = k[b].re + (kx.im - k[b].im) / (k[a].im - k[b].im) * (k[a].re - k[b].re);
      if (kx.re < xs) inside = !inside;
    }
  }
  if (!inside) return false;
  for (size_t a = 0; a < m; ++a) {
    if (segment_distance(x, polygon[a], polygon[(a + 1) % m]) <= clearance) return false;
  }
  return true;
}

void check_simple(std::span<const Vec> polygon, double clearance) {
  const size_t m = polygon.size();
  std::vector<Complex> k;
  k.reserve(m);
  for (const auto& v : polygon) k.push_back(klein(v));
  for (size_t a = 0; a < m; ++a) {
    double angle = interior_angle(polygon[(a + m - 1) % m], polygon[a], polygon[(a + 1) % m]);
    if (std::min(angle, 2 * kPi - angle) <= kFoldTolerance) {
      throw Error(ErrorKind::SimplicityCheckFailed, "edges fold back at vertex " + std::to_string(a));
    }
  }
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = a + 2; b < m; ++b) {
      if (a == 0 && b == m - 1) continue;
      const size_t a1 = (a + 1) % m;
      const size_t b1 = (b + 1) % m;
      real o1 = cross(k[a], k[a1], k[b]);
      real o2 = cross(k[a], k[a1], k[b1]);
      real o3 = cross(k[b], k[b1], k[a]);
      real o4 = cross(k[b], k[b1], k[a1]);
      bool crossing = ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
      double gap = std::min({segment_distance(polygon[a], polygon[b], polygon[b1]),
                             segment_distance(polygon[a1], polygon[b], polygon[b1]),
                             segment_distance(polygon[b], polygon[a], polygon[a1]),
                             segment_distance(polygon[b1], polygon[a], polygon[a1])});
      if (crossing || gap <= clearance) {
        throw Error(ErrorKind::SimplicityCheckFailed,
                    "edges " + std::to_string(a) + " and " + std::to_string(b) + " meet");
      }
    }
  }
}

}  // namespace toledo::precise
