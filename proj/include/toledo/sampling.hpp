#pragma once

// Seeded random representations and brute-force oracles used to cross-check
// the discreteness criteria.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toledo/surface.hpp"

namespace toledo {

struct SampleConfig {
  int n = 6;
  std::uint64_t seed = 0;
  int sign = 1;
  double min_gap = 0.05;
  int retry_budget = 1000;
  std::uint64_t index = 0;  // stream index within a batch
};

/// Stream for (seed, index); independent of how a batch is scheduled.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Boundary tuple with sorted angles separated by at least min_gap.
BoundaryTuple sample_tuple(const SampleConfig& cfg, Rng& rng);

HypRep sample_discrete(const SampleConfig& cfg);

/// Valid representation with no discreteness guarantee: q_1..q_{n-2} uniform
/// by area in the disc of hyperbolic radius 2, the last two centres closing
/// the relation.
HypRep sample_generic(const SampleConfig& cfg);

/// Surface representation that does not come from H_n: a restriction pushed
/// off the hyperelliptic locus by a random step of size `scale` tangent to
/// the relation variety and projected back onto it. The step halves after
/// each failed projection. `discrete` selects the maximal component.
SurfRep sample_surface(const SampleConfig& cfg, bool discrete, double scale = 0.05);

/// Projects generators onto the relation variety by damped Gauss-Newton
/// steps in 50-digit arithmetic.
SurfRep project_to_relations(std::vector<Isometry> gens, int max_iter = 50);
SurfRep project_to_relations(std::vector<precise::Mat> gens, int max_iter = 50);

/// exp of the trace-free element [[i a, b], [conj(b), -i a]] of su(1,1).
Isometry su11_exp(double a, cplx b);

enum class ProbeVerdict { consistent_with_discrete, violation_found, inconclusive };
const char* to_string(ProbeVerdict v);

struct OrbitProbeReport {
  int max_length = 0;
  ProjPoint base = ProjPoint::disc(0.0);
  double min_displacement = 0.0;
  std::string witness;  // word with the violation, if any
  long words = 0;
  long identity_words = 0;  // words evaluating to +-I, excluded
  ProbeVerdict verdict = ProbeVerdict::inconclusive;
};

inline constexpr long kProbeWordCap = 5'000'000;

/// Enumerates reduced words of length <= L. A violation is a non-identity
/// parabolic, an elliptic that is not a conjugate of some r_i (any elliptic
/// for surface groups), or a hyperbolic moving the base point by less than
/// delta.
OrbitProbeReport orbit_probe(const HypRep& rep, int L, double delta, long cap = kProbeWordCap);
OrbitProbeReport orbit_probe(const SurfRep& rep, int L, double delta, long cap = kProbeWordCap);

struct TilingReport {
  bool ok = true;
  long elements = 0;
  std::string witness;
};

/// Samples interior points of the polygon and checks that no non-identity
/// word of length <= 2 depth in the pairings and their inverses moves one of
/// them back into the interior; this is pairwise disjointness of the copies
/// under words of length <= depth.
TilingReport tiling_check(const std::vector<precise::Vec>& polygon, const std::vector<precise::Mat>& pairings,
                          int depth, int samples_per_cell = 16, std::uint64_t seed = 1);
TilingReport tiling_check(const std::vector<ProjPoint>& polygon, const std::vector<Isometry>& pairings,
                          int depth, int samples_per_cell = 16, std::uint64_t seed = 1);
TilingReport tiling_check(const FundamentalPolygon& polygon, int depth, int samples_per_cell = 16,
                          std::uint64_t seed = 1);
/// Uses gamma_2 ... gamma_{n-1}.
TilingReport tiling_check(const SurfacePolygon& polygon, int depth, int samples_per_cell = 16,
                          std::uint64_t seed = 1);

/// Mean of polygon_area over the given centres and every cyclic rotation of
/// the vertex order; SpreadTooLarge past 1e-8.
double area_oracle(const std::vector<ProjPoint>& vertices, const std::vector<ProjPoint>& centres);

}  // namespace toledo
