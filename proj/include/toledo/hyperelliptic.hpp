#pragma once

// Representations of the hyperelliptic group
//   H_n = < r_1, ..., r_n | r_i^2 = 1, r_n ... r_2 r_1 = 1 >
// sending every r_i to the half-turn about a disc point q_i.

#include <optional>
#include <string>
#include <vector>

#include "toledo/core.hpp"
#include "toledo/precise.hpp"

namespace toledo {

inline constexpr double kRelationTolerance = 1e-8;

class HypRep {
 public:
  int n() const { return static_cast<int>(centers_.size()); }
  /// +1 or -1 with reflection(q_n) ... reflection(q_1) = sign * I.
  int sign() const { return sign_; }
  const std::vector<ProjPoint>& centers() const { return centers_; }

  /// Centre q_i, indices taken modulo n (q_0 = q_n).
  const ProjPoint& q(int i) const;
  /// The half-turn r_i.
  Isometry r(int i) const { return reflection(q(i)); }
  /// r_i r_{i-1}.
  Isometry pair(int i) const { return r(i) * r(i - 1); }

  /// Product r_n ... r_1 as evaluated.
  Isometry relation() const;

  /// Skips validation; for operations whose output satisfies the relation by
  /// construction. The sign is read off the evaluated relation.
  static HypRep trusted(std::vector<ProjPoint> centers);

 private:
  HypRep(std::vector<ProjPoint> centers, int sign) : centers_(std::move(centers)), sign_(sign) {}
  std::vector<ProjPoint> centers_;
  int sign_ = 1;
};

/// Accepts the centres iff the reflection product is +-I within tol and no
/// r_i or r_i r_{i-1} is trivial.
HypRep validate(std::vector<ProjPoint> centers, double tol = kRelationTolerance);

/// Orbit-polygon area Area(p_1, ..., p_n) with p_0 = p, p_i = r_i p_{i-1};
/// p defaults to the disc centre.
double area(const HypRep& rep, const std::optional<ProjPoint>& p = {});

struct ICycle {
  int i = 1;
  // b^i, e^i, b^{i+1}, e^{i+1}, ..., b^{i+n-3}, e^{i+n-3}
  std::vector<ProjPoint> points;
  Orientation orientation = Orientation::neither;
  std::string diagnostic;
  double closure_error = 0.0;  // angular, for b^{i+n-2} and e^{i+n-2}
};

ICycle i_cycle(const HypRep& rep, int i);

/// Smallest i maximizing dist(q_{i-1}, q_i).
int default_cycle_index(const HypRep& rep);

enum class Verdict { discrete_positive, discrete_negative, not_discrete };

const char* to_string(Verdict v);

struct DiscretenessReport {
  Verdict verdict = Verdict::not_discrete;
  ICycle cycle;
  double area = 0.0;
  double maximal_area = 0.0;  // (n-4) pi
  bool area_agrees = false;   // |area| = maximal_area exactly when the cycle is oriented
};

DiscretenessReport is_discrete(const HypRep& rep, std::optional<int> i = {});

/// 2n-6 boundary angles; increasing in (0, pi) for sign +1, decreasing in
/// (-pi, 0) for sign -1.
struct BoundaryTuple {
  int sign = 1;
  std::vector<double> angles;
  int n() const { return static_cast<int>(angles.size()) / 2 + 3; }
};

/// Throws BadOrdering unless the tuple satisfies the ordering invariant.
void check_ordering(const BoundaryTuple& t);

BoundaryTuple to_boundary_tuple(const HypRep& rep, int i = 1);
HypRep from_boundary_tuple(const BoundaryTuple& t, int i = 1);

HypRep earthquake(const HypRep& rep, int i, double t);
inline HypRep dehn_twist(const HypRep& rep, int i) { return earthquake(rep, i, 1.0); }

struct AutLetter {
  enum class Kind { E, S, J, I };
  Kind kind = Kind::S;
  int index = 0;  // E_i and I_{r_j}
  int power = 1;  // +1 or -1; J is an involution
};

using AutWord = std::vector<AutLetter>;

/// Parses letters such as "E3", "E3^-1", "S", "S^-1", "J", "I2" separated by
/// spaces or commas.
AutWord parse_aut_word(const std::string& text, int n);
std::string to_string(const AutWord& w);

/// Right action, leftmost letter first.
HypRep apply_aut(const HypRep& rep, const AutWord& w);

struct FundamentalPolygon {
  std::vector<ProjPoint> vertices;
  std::vector<ProjPoint> edge_midpoints;  // midpoint of edge [v_k, v_{k+1}]
  std::vector<Isometry> pairings;         // pairing k maps edge k onto itself reversed
  std::vector<double> angles;
  double angle_sum = 0.0;
  bool convex = false;
  std::vector<precise::Vec> precise_vertices;
  std::vector<precise::Mat> precise_pairings;
};

/// Vertices p_0 = midpoint(q_n, q_1), p_j = r_j p_{j-1} for j < n. The edge
/// [p_{j-1}, p_j] has midpoint q_j and the closing edge [p_{n-1}, p_0] has
/// midpoint q_n.
FundamentalPolygon fundamental_polygon(const HypRep& rep);

/// Max over centres of the separation between corresponding centres.
double center_distance(const HypRep& a, const HypRep& b);

}  // namespace toledo
