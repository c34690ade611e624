#pragma once

// Geometry kernel for the Poincare disc in its hermitian model.
//
// A point of the disc is a projective point of a complex plane W carrying the
// hermitian form <x,y> = x1*conj(y1) - x2*conj(y2). Negative points form the
// open disc (embedded as z -> (z, 1)), isotropic points form the boundary
// circle. Orientation-preserving isometries are 2x2 matrices of SU(1,1),
// always compared up to a global sign.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toledo/errors.hpp"

namespace toledo {

using cplx = std::complex<double>;

/// Numerical thresholds shared by every module.
struct Tolerances {
  double classify = 1e-9;  // |tr| band around 2 for parabolic
  double angle = 1e-9;     // boundary-point distinctness, radians
  double matrix = 1e-9;    // relative, for projective matrix identities
  double point = 1e-9;     // relative, <p,p> classification
};

inline constexpr Tolerances kTol{};

struct Lift {
  cplx x1;
  cplx x2;
};

/// The hermitian form of signature (+,-).
cplx herm_form(const Lift& x, const Lift& y);

enum class PointClass { negative, isotropic, positive };

/// A point of the projective line over W, normalized on construction:
/// nonpositive points as (z, 1) with z the disc coordinate (|z| = 1 exactly
/// for isotropic ones), positive points as (1, w).
class ProjPoint {
 public:
  static ProjPoint from_lift(const Lift& v);
  static ProjPoint disc(cplx z);
  static ProjPoint boundary(double angle);

  const Lift& lift() const { return lift_; }
  PointClass kind() const { return kind_; }
  bool is_negative() const { return kind_ == PointClass::negative; }
  bool is_isotropic() const { return kind_ == PointClass::isotropic; }

  /// Disc coordinate x1/x2; throws for positive points.
  cplx z() const;
  /// Argument of a boundary point in (-pi, pi].
  double angle() const;

 private:
  ProjPoint(Lift lift, PointClass kind) : lift_(lift), kind_(kind) {}
  Lift lift_;
  PointClass kind_;
};

/// Hyperbolic distance between nonpositive-inside points, dist(0, x) = 2 artanh|x|.
/// Both points must be negative.
double dist(const ProjPoint& p, const ProjPoint& q);

/// Closeness of two points: hyperbolic distance for negative points, angular
/// distance for boundary points, infinity for mismatched classes.
double separation(const ProjPoint& p, const ProjPoint& q);

/// Element of SU(1,1) acting on lifts by matrix multiplication.
class Isometry {
 public:
  Isometry() : m_{1.0, 0.0, 0.0, 1.0} {}
  Isometry(cplx a, cplx b, cplx c, cplx d) : m_{a, b, c, d} {}

  static Isometry identity() { return {}; }

  cplx a() const { return m_[0]; }
  cplx b() const { return m_[1]; }
  cplx c() const { return m_[2]; }
  cplx d() const { return m_[3]; }

  cplx det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  cplx trace() const { return m_[0] + m_[3]; }
  double norm() const;  // Frobenius

  /// Inverse of a unit-determinant matrix (the adjugate).
  Isometry inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }
  Isometry operator-() const { return {-m_[0], -m_[1], -m_[2], -m_[3]}; }

  Lift operator()(const Lift& v) const;
  ProjPoint operator()(const ProjPoint& p) const;

  friend Isometry operator*(const Isometry& x, const Isometry& y);

  /// Rescale by 1/sqrt(det) so that det = 1.
  Isometry normalized() const;

 private:
  std::array<cplx, 4> m_;
};

/// min(|M - N|, |M + N|) relative to the larger norm (at least 1).
double projective_distance(const Isometry& m, const Isometry& n);
bool projectively_equal(const Isometry& m, const Isometry& n, double tol = kTol.matrix);
bool is_plus_minus_identity(const Isometry& m, double tol = kTol.matrix);

/// Deviation from form preservation, |M* eta M - eta|.
double form_defect(const Isometry& m);

/// The half-turn about a negative point q: i (I - 2 q q* eta / <q,q>).
Isometry reflection(const ProjPoint& q);

enum class IsometryTag { identity, elliptic, parabolic, hyperbolic };

struct IsometryClass {
  IsometryTag tag = IsometryTag::identity;
  double translation_length = 0.0;  // hyperbolic only
  std::optional<ProjPoint> repeller;
  std::optional<ProjPoint> attractor;
};

IsometryClass classify(const Isometry& m, const Tolerances& tol = kTol);

/// The hyperbolic isometry with the axis and attractor of m translating by
/// t times its length (direction reversed for t < 0).
Isometry hyperbolic_power(const Isometry& m, double t, const Tolerances& tol = kTol);

/// z -> (z - p) / (1 - conj(p) z), sending the negative point p to 0.
Isometry translation_to_origin(cplx p);

/// An isometry sending -1 to a and +1 to b (distinct boundary points).
Isometry isometry_from_boundary_pair(const ProjPoint& a, const ProjPoint& b);

/// The unique isometry sending (repeller, attractor, point on their geodesic)
/// to (-1, 1, 0).
Isometry normalizing_isometry(const ProjPoint& repeller, const ProjPoint& attractor,
                              const ProjPoint& on_axis);

/// Oriented geodesic between two distinct boundary points.
class Geodesic {
 public:
  Geodesic(const ProjPoint& start, const ProjPoint& end, const Tolerances& tol = kTol);

  const ProjPoint& start() const { return start_; }
  const ProjPoint& end() const { return end_; }

  /// Hyperbolic distance from a negative point to this geodesic.
  double distance_to(const ProjPoint& p) const;

 private:
  ProjPoint start_;
  ProjPoint end_;
};

/// The full geodesic through two distinct nonpositive points, oriented p -> q.
Geodesic geodesic_through(const ProjPoint& p, const ProjPoint& q);

/// Point halfway between two negative points.
ProjPoint midpoint(const ProjPoint& p, const ProjPoint& q);

/// Oriented area of a triangle, 2 arg(-<p1,p2><p2,p3><p3,p1>); zero when two
/// vertices are the same boundary point.
double triangle_area(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3,
                     const Tolerances& tol = kTol);

/// Fan sum of triangle areas around the centre c, indices cyclic.
double polygon_area(const ProjPoint& c, std::span<const ProjPoint> vertices,
                    const Tolerances& tol = kTol);

enum class Orientation { positive, negative, neither };

struct OrientationResult {
  Orientation orientation = Orientation::neither;
  std::string diagnostic;  // set when points coincide
};

/// Whether boundary points are listed counterclockwise (positive) or
/// clockwise (negative) running once around the circle.
OrientationResult cycle_orientation(std::span<const ProjPoint> points,
                                    const Tolerances& tol = kTol);

/// Interior intersection of two geodesics, empty when their endpoints do not
/// interlace.
std::optional<ProjPoint> geodesic_intersection(const Geodesic& g1, const Geodesic& g2,
                                               const Tolerances& tol = kTol);

struct HalfTurns {
  ProjPoint first;
  ProjPoint second;
};

/// Splits a hyperbolic m into half-turns with reflection(second) *
/// reflection(first) = +-m. `first` is the anchor (default: the axis point
/// nearest the disc centre), `second` lies half a translation length further
/// toward the attractor.
HalfTurns decompose_half_turns(const Isometry& m, const std::optional<ProjPoint>& anchor = {},
                               const Tolerances& tol = kTol);

/// Axis point of a hyperbolic isometry nearest to the disc centre.
ProjPoint axis_point_nearest_origin(const Isometry& m, const Tolerances& tol = kTol);

/// Interior angle at `vertex` of a counterclockwise polygon, in [0, 2 pi).
double interior_angle(const ProjPoint& prev, const ProjPoint& vertex, const ProjPoint& next);

/// Beltrami-Klein coordinate of a nonpositive point; geodesics are straight
/// chords there.
cplx klein(const ProjPoint& p);
ProjPoint from_klein(cplx k);

/// Euclidean distance between the segments [a, b] and [c, d] of the plane.
double segment_distance(cplx a, cplx b, cplx c, cplx d);

/// Whether x lies inside the plane polygon with vertices `poly` and farther
/// than `clearance` from its boundary.
bool polygon_contains(std::span<const cplx> poly, cplx x, double clearance);

const char* to_string(PointClass c);
const char* to_string(IsometryTag t);
const char* to_string(Orientation o);

}  // namespace toledo
