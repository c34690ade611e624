#pragma once

// 50-digit versions of the kernel operations that act on orbit points.
//
// Orbit points of long words sit so close to the boundary circle that their
// double disc coordinates lose every significant digit (a point at hyperbolic
// distance d from the centre has 1 - |z| ~ 2 exp(-d)). Lifts and matrices
// here carry enough digits for points up to distance ~100.

#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "toledo/core.hpp"

namespace toledo::precise {

using real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                           boost::multiprecision::et_off>;

struct Complex {
  real re;
  real im;

  Complex() = default;
  Complex(real r, real i = 0) : re(std::move(r)), im(std::move(i)) {}
  Complex(cplx z) : re(z.real()), im(z.imag()) {}

  cplx to_cplx() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

Complex operator+(const Complex& x, const Complex& y);
Complex operator-(const Complex& x, const Complex& y);
Complex operator-(const Complex& x);
Complex operator*(const Complex& x, const Complex& y);
Complex operator*(const real& s, const Complex& x);
Complex operator/(const Complex& x, const Complex& y);
Complex conj(const Complex& x);
real norm(const Complex& x);  // |x|^2
real abs(const Complex& x);
double arg(const Complex& x);

struct Vec {
  Complex x1;
  Complex x2 = Complex(real(1));
};

Vec lift(const ProjPoint& p);
Vec from_disc(const Complex& z);
Complex form(const Vec& x, const Vec& y);

struct Mat {
  Complex a = Complex(real(1));
  Complex b;
  Complex c;
  Complex d = Complex(real(1));

  static Mat from(const Isometry& m);
  Mat inverse() const { return {d, -b, -c, a}; }
  Isometry to_isometry() const;
  Vec operator()(const Vec& v) const;
};

Mat operator*(const Mat& x, const Mat& y);

/// Projective distance to +-I relative to the matrix norm.
double distance_to_identity(const Mat& m);

Mat reflection(const ProjPoint& q);
Mat reflection(const Vec& q);
Complex sqrt(const Complex& x);

/// Half-turns about the centres with the last two centres moved (by about
/// the rounding of the inputs) so that r_n ... r_1 = +-I holds to 50 digits.
/// Falls back to the plain half-turns when r_{n-2} ... r_1 is not hyperbolic.
std::vector<Mat> balanced_half_turns(const std::vector<ProjPoint>& centres);
std::vector<Vec> balanced_centres(const std::vector<ProjPoint>& centres);
Mat translation_to_origin(const Vec& p);

/// Disc coordinate x1 / x2 of a nonpositive point.
Complex disc(const Vec& v);
/// Rounded to double; far points may round onto the circle.
ProjPoint to_point(const Vec& v);
Complex klein(const Vec& v);
Vec from_klein(const Complex& k);

/// Hyperbolic distance between negative points.
double dist(const Vec& p, const Vec& q);
real cosh_half_dist(const Vec& p, const Vec& q);

Vec midpoint(const Vec& p, const Vec& q);

/// Translation by hyperbolic length s along the geodesic from `from` through
/// `toward` (negative s goes the other way).
Mat translation_along(const Vec& from, const Vec& toward, const real& s);

/// m^s for a hyperbolic m of determinant 1, up to sign.
Mat hyperbolic_power(const Mat& m, const real& s);

double triangle_area(const Vec& p1, const Vec& p2, const Vec& p3);
/// Fan sum around c, indices cyclic.
double polygon_area(const Vec& c, std::span<const Vec> vertices);

/// Interior angle at `vertex` of a counterclockwise polygon, in [0, 2 pi).
double interior_angle(const Vec& prev, const Vec& vertex, const Vec& next);

/// Hyperbolic distance from x to the geodesic segment [a, b].
double segment_distance(const Vec& x, const Vec& a, const Vec& b);

/// Whether x is inside the geodesic polygon and at hyperbolic distance more
/// than `clearance` from its boundary.
bool polygon_contains(std::span<const Vec> polygon, const Vec& x, double clearance);
/// Same, with the Klein coordinates of the vertices precomputed.
bool polygon_contains(std::span<const Vec> polygon, std::span<const Complex> klein_vertices, const Vec& x,
                      double clearance);

/// Throws SimplicityCheckFailed if two non-adjacent edges come within
/// `clearance` of each other or adjacent edges fold onto each other.
void check_simple(std::span<const Vec> polygon, double clearance = 1e-10);

}  // namespace toledo::precise
