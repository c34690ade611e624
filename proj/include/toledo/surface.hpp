#pragma once

// Representations of the surface group G_n (n even), the even-length words of
// H_n, with generators g_i := r_i r_{i-1} subject to
//   g_n g_{n-1} ... g_2 g_1 = 1,  g_n g_{n-2} ... g_4 g_2 = 1,
//   g_{n-1} g_{n-3} ... g_3 g_1 = 1.

#include <optional>
#include <string>
#include <vector>

#include "toledo/hyperelliptic.hpp"

namespace toledo {

class SurfRep {
 public:
  int n() const { return static_cast<int>(gens_.size()); }
  const std::vector<Isometry>& gens() const { return gens_; }
  /// g_i = image of r_i r_{i-1}, indices modulo n (g_0 = g_n).
  const Isometry& g(int i) const;

  /// The three relation words, evaluated.
  std::array<Isometry, 3> relations() const;

  /// 50-digit generators; exact products of reflections for restrictions,
  /// otherwise the double generators widened.
  std::vector<precise::Mat> precise_gens() const;

  static SurfRep trusted(std::vector<Isometry> gens, std::vector<precise::Mat> precise = {}) {
    return SurfRep(std::move(gens), std::move(precise));
  }

 private:
  SurfRep(std::vector<Isometry> gens, std::vector<precise::Mat> precise)
      : gens_(std::move(gens)), precise_(std::move(precise)) {}
  std::vector<Isometry> gens_;
  std::vector<precise::Mat> precise_;
};

SurfRep validate_relations(std::vector<Isometry> gens, double tol = kRelationTolerance);

SurfRep restrict_to_surface(const HypRep& rep);

/// A word in the r_i; only even-length words evaluate on G_n.
using RWord = std::vector<int>;

struct GLetter {
  int index;  // 1..n
  int power;  // +1 or -1
};
using GWord = std::vector<GLetter>;

/// Rewrites an even r-word letter pair by letter pair: r_a r_b becomes
/// g_a g_{a-1} ... g_{b+1} or g_{a+1}^-1 ... g_b^-1, whichever is shorter.
GWord to_g_word(const RWord& w, int n);
std::string to_string(const GWord& w);

RWord v_word(int i, int n);  // r_i ... r_2 r_1, 0 <= i <= n - 1
/// w_i for any i (indices modulo 2n - 2).
RWord w_word(int i, int n);
/// g-expansion of w_i, cached per n.
const GWord& w_gword(int i, int n);

GWord inverse(const GWord& w);
Isometry evaluate(const SurfRep& rep, const GWord& w);
Isometry evaluate(const SurfRep& rep, const RWord& w);
Isometry evaluate_w(const SurfRep& rep, int i);

/// Automorphisms of H_n acting on r-letters: S r_j = r_{j+1}, J r_j = r_{n-j},
/// I(h) = r_n h r_n.
enum class RAut { S, S_inverse, J, I };
RWord apply(RAut a, const RWord& w, int n);

/// The twisted representation rep A, g_i -> rep(A(r_i r_{i-1})).
SurfRep twist(const SurfRep& rep, RAut a);

/// Area(w_0 p, w_1 q, ..., w_{2n-4} p, w_{2n-3} q); p and q default to the
/// disc centre.
double area_surface(const SurfRep& rep, const std::optional<ProjPoint>& p = {},
                    const std::optional<ProjPoint>& q = {});

struct SurfaceCertificate {
  bool available = false;
  std::string reason;  // why it is unavailable
  std::vector<ProjPoint> cycle;
  Orientation orientation = Orientation::neither;
  double endpoint_mismatch = 0.0;  // for s_n = t'_1 and t_1 = s'_n
};

struct SurfaceReport {
  Verdict verdict = Verdict::not_discrete;
  double area = 0.0;
  double maximal_area = 0.0;  // 2(n-4) pi
  SurfaceCertificate certificate;
};

SurfaceReport is_discrete_goldman(const SurfRep& rep);

/// A polygon edge k = [V_k, V_{k+1}] glued to edge `partner` by `map`, which
/// sends V_k to V_{partner+1} and V_{k+1} to V_partner.
struct EdgePairing {
  int edge = 0;
  int partner = 0;
  Isometry map;
  precise::Mat precise_map;
};

struct SurfacePolygon {
  std::vector<ProjPoint> vertices;       // w_1 q, w_2 p, ..., w_{2n-3} q
  std::vector<int> word_index;           // k of the w_k carrying each vertex
  std::vector<Isometry> gammas;          // gamma_2 ... gamma_{n-1}
  std::vector<EdgePairing> pairings;     // one entry per edge
  std::vector<double> angles;
  double angle_sum = 0.0;
  double pairing_error = 0.0;
  double relation_error = 0.0;           // the single defining relation
  std::vector<precise::Vec> precise_vertices;
};

SurfacePolygon fundamental_polygon_surface(const SurfRep& rep);

/// Vertex cycle through vertex `start` under a full set of edge pairings. The
/// start vertex is carried along the cycle; `step_error` is the worst
/// distance between an image and the vertex it should hit and `closure` the
/// distance of the final image from the start.
struct VertexCycle {
  std::vector<int> vertices;
  double angle_sum = 0.0;
  double step_error = 0.0;
  double closure = 0.0;
};
VertexCycle vertex_cycle(const std::vector<precise::Vec>& vertices, const std::vector<EdgePairing>& pairings,
                         const std::vector<double>& angles, int start);

/// Pairings of the hyperelliptic polygon in the same edge format.
std::vector<EdgePairing> edge_pairings(const FundamentalPolygon& p);

/// g_{i+1} -> g_{i+1} g^{-t}, g_{i-1} -> g^t g_{i-1} with g = g_i, which is
/// the restriction of the hyperelliptic earthquake at the same i and t.
SurfRep earthquake_gn(const SurfRep& rep, int i, double t);

/// Max projective distance between corresponding generators.
double generator_distance(const SurfRep& a, const SurfRep& b);

}  // namespace toledo
