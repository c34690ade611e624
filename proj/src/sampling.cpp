#include "toledo/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace toledo {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

using PGens = std::vector<precise::Mat>;

// Sign-normalized relation entries that vanish exactly on the relation variety.
Eigen::VectorXd relation_residual(const PGens& gens) {
  const int n = static_cast<int>(gens.size());
  std::array<precise::Mat, 3> rel;
  for (int k = 1; k <= n; ++k) {
    rel[0] = gens[k - 1] * rel[0];
    rel[k % 2 == 0 ? 1 : 2] = gens[k - 1] * rel[k % 2 == 0 ? 1 : 2];
  }
  Eigen::VectorXd r(9);
  for (int k = 0; k < 3; ++k) {
    precise::Mat m = rel[k];
    if (m.a.re + m.d.re < 0) m = {-m.a, -m.b, -m.c, -m.d};
    r(3 * k) = static_cast<double>(m.a.im);
    r(3 * k + 1) = static_cast<double>(m.b.re);
    r(3 * k + 2) = static_cast<double>(m.b.im);
  }
  return r;
}

// exp of [[i a, b], [conj(b), -i a]], which squares to (|b|^2 - a^2) I.
precise::Mat su11_exp_precise(const precise::real& a, const precise::Complex& b) {
  using namespace boost::multiprecision;
  const precise::real delta = precise::norm(b) - a * a;
  precise::real c = 1, s = 1;
  if (delta > 0) {
    precise::real w = sqrt(delta);
    c = cosh(w);
    s = sinh(w) / w;
  } else if (delta < 0) {
    precise::real w = sqrt(-delta);
    c = cos(w);
    s = sin(w) / w;
  }
  return {precise::Complex(c, s * a), s * b, s * precise::conj(b), precise::Complex(c, -s * a)};
}

PGens perturbed(const PGens& gens, const Eigen::VectorXd& x, double scale = 1.0) {
  PGens out = gens;
  for (size_t k = 0; k < gens.size(); ++k) {
    precise::real a = precise::real(x(3 * k)) * scale;
    precise::Complex b(precise::real(x(3 * k + 1)) * scale, precise::real(x(3 * k + 2)) * scale);
    out[k] = su11_exp_precise(a, b) * gens[k];
  }
  return out;
}

Eigen::MatrixXd relation_jacobian(const PGens& gens) {
  const int dim = 3 * static_cast<int>(gens.size());
  const double h = 1e-15;
  Eigen::MatrixXd jac(9, dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(c) = 1.0;
    jac.col(c) = (relation_residual(perturbed(gens, e, h)) - relation_residual(perturbed(gens, e, -h))) / (2 * h);
  }
  return jac;
}

SurfRep from_precise(PGens gens) {
  std::vector<Isometry> rounded;
  for (const auto& m : gens) rounded.push_back(m.to_isometry());
  return SurfRep::trusted(std::move(rounded), std::move(gens));
}

ProjPoint klein_centroid(const std::vector<ProjPoint>& pts) {
  cplx sum = 0.0;
  for (const auto& p : pts) sum += klein(p);
  return from_klein(sum / static_cast<double>(pts.size()));
}

struct ProbeState {
  ProjPoint base;
  Isometry to_base;
  double delta;
  bool hyperelliptic;
  OrbitProbeReport report;
};

void inspect(ProbeState& st, const Isometry& m, const std::function<std::string()>& name) {
  OrbitProbeReport& rep = st.report;
  ++rep.words;
  if (is_plus_minus_identity(m, 1e-8)) {
    ++rep.identity_words;
    return;
  }
  double tr = std::abs(m.trace().real());
  // |a| of the conjugate moving the base to the origin is cosh(disp / 2);
  // this stays finite where the image point itself rounds onto the circle.
  Isometry c = st.to_base * m * st.to_base.inverse();
  double ch = std::abs(c.a()) / std::sqrt(std::abs(c.det()));
  double disp = 2.0 * std::acosh(std::max(1.0, ch));
  rep.min_displacement = std::min(rep.min_displacement, disp);
  if (rep.verdict == ProbeVerdict::violation_found) return;
  std::string why;
  if (std::abs(tr - 2.0) <= 1e-9) {
    why = "parabolic";
  } else if (tr < 2.0) {
    if (!(st.hyperelliptic && tr <= 1e-7)) why = "elliptic of infinite or wrong order";
  } else if (disp < st.delta) {
    why = "displacement " + std::to_string(disp);
  }
  if (!why.empty()) {
    rep.verdict = ProbeVerdict::violation_found;
    rep.witness = name() + " (" + why + ")";
  }
}

long reduced_word_count(long letters, long branching, int L) {
  long total = 0;
  long level = letters;
  for (int l = 1; l <= L; ++l) {
    total += level;
    if (total > std::numeric_limits<long>::max() / (branching + 1)) return std::numeric_limits<long>::max();
    level *= branching;
  }
  return total;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(index), hi32(index)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

BoundaryTuple sample_tuple(const SampleConfig& cfg, Rng& rng) {
  const int m = 2 * cfg.n - 6;
  if (cfg.n < 5) throw Error(ErrorKind::TooFewGenerators, "n must be at least 5");
  if (cfg.sign != 1 && cfg.sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
  double free = kPi - (m + 1) * cfg.min_gap;
  if (!(cfg.min_gap >= 0.0) || free <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "minimum gap too large for " + std::to_string(m) + " angles");
  }
  std::vector<double> u(m);
  for (auto& x : u) x = rng.uniform() * free;
  std::sort(u.begin(), u.end());
  BoundaryTuple t;
  t.sign = cfg.sign;
  for (int k = 0; k < m; ++k) t.angles.push_back(cfg.sign * (u[k] + (k + 1) * cfg.min_gap));
  return t;
}

HypRep sample_discrete(const SampleConfig& cfg) {
  Rng rng(cfg.seed, cfg.index);
  for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    BoundaryTuple t = sample_tuple(cfg, rng);
    try {
      HypRep rep = from_boundary_tuple(t);
      Verdict want = cfg.sign > 0 ? Verdict::discrete_positive : Verdict::discrete_negative;
      if (is_discrete(rep).verdict == want) return rep;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::BadOrdering) throw;
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no discrete sample within the retry budget");
}

HypRep sample_generic(const SampleConfig& cfg) {
  if (cfg.n < 5) throw Error(ErrorKind::TooFewGenerators, "n must be at least 5");
  Rng rng(cfg.seed, cfg.index);
  const double cosh2 = std::cosh(2.0);
  for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    std::vector<ProjPoint> centers;
    Isometry prod;
    for (int k = 0; k < cfg.n - 2; ++k) {
      double r = std::acosh(1.0 + rng.uniform() * (cosh2 - 1.0));
      double phi = rng.uniform(0.0, 2 * kPi);
      centers.push_back(ProjPoint::disc(std::polar(std::tanh(0.5 * r), phi)));
      prod = reflection(centers.back()) * prod;
    }
    Isometry k = prod.inverse();
    double offset = rng.uniform(-1.0, 1.0);
    IsometryClass cls = classify(k);
    if (cls.tag != IsometryTag::hyperbolic) continue;
    try {
      ProjPoint anchor = hyperbolic_power(k, offset / cls.translation_length)(axis_point_nearest_origin(k));
      HalfTurns halves = decompose_half_turns(k, anchor);
      centers.push_back(halves.first);
      centers.push_back(halves.second);
      return validate(std::move(centers), 1e-9);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no generic sample within the retry budget");
}

Isometry su11_exp(double a, cplx b) {
  Isometry x{cplx(0.0, a), b, std::conj(b), cplx(0.0, -a)};
  double delta = std::norm(b) - a * a;  // x^2 = delta I
  double c, s;
  if (delta > 1e-300) {
    double w = std::sqrt(delta);
    c = std::cosh(w);
    s = std::sinh(w) / w;
  } else if (delta < -1e-300) {
    double w = std::sqrt(-delta);
    c = std::cos(w);
    s = std::sin(w) / w;
  } else {
    c = 1.0;
    s = 1.0;
  }
  return {c + s * x.a(), s * x.b(), s * x.c(), c + s * x.d()};
}

SurfRep project_to_relations(std::vector<precise::Mat> gens, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd r = relation_residual(gens);
    if (r.lpNorm<Eigen::Infinity>() < 1e-30) break;
    Eigen::VectorXd step = relation_jacobian(gens).completeOrthogonalDecomposition().solve(-r);
    // Halve the step until the residual drops; full steps overshoot when the
    // generators translate far.
    const double before = r.norm();
    bool moved = false;
    for (int halving = 0; halving < 30 && !moved; ++halving, step /= 2) {
      PGens next = perturbed(gens, step);
      if (relation_residual(next).norm() < before) {
        gens = std::move(next);
        moved = true;
      }
    }
    if (!moved) break;
  }
  return from_precise(std::move(gens));
}

SurfRep project_to_relations(std::vector<Isometry> gens, int max_iter) {
  PGens wide;
  for (const auto& g : gens) wide.push_back(precise::Mat::from(g));
  return project_to_relations(std::move(wide), max_iter);
}

SurfRep sample_surface(const SampleConfig& cfg, bool discrete, double scale) {
  if (cfg.n % 2 != 0) throw Error(ErrorKind::OddN, "surface groups need even n");
  Rng rng(cfg.seed ^ 0x5deece66dULL, cfg.index);
  const int dim = 3 * cfg.n;
  for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
    SampleConfig base = cfg;
    base.index = cfg.index * 1000003ULL + attempt;
    HypRep hyp = discrete ? sample_discrete(base) : sample_generic(base);
    PGens gens = restrict_to_surface(hyp).precise_gens();
    // Step along the relation variety, then correct the second-order drift.
    Eigen::VectorXd x(dim);
    // Shrink the step after each failed projection.
    const double step = std::ldexp(scale, -std::min(attempt, 30));
    for (int k = 0; k < dim; ++k) x(k) = rng.uniform(-step, step);
    Eigen::MatrixXd jac = relation_jacobian(gens);
    x -= jac.completeOrthogonalDecomposition().solve(jac * x);
    SurfRep rep = project_to_relations(perturbed(gens, x));
    double residual = 0.0;
    for (const auto& r : rep.relations()) residual = std::max(residual, projective_distance(r, Isometry::identity()));
    if (residual > 1e-20) continue;
    if (discrete && is_discrete_goldman(rep).verdict == Verdict::not_discrete) continue;
    return rep;
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no surface sample within the retry budget");
}

const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::consistent_with_discrete: return "consistent_with_discrete";
    case ProbeVerdict::violation_found: return "violation_found";
    case ProbeVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

OrbitProbeReport orbit_probe(const HypRep& rep, int L, double delta, long cap) {
  const int n = rep.n();
  if (L < 0 || L > 6) throw Error(ErrorKind::InvalidArgument, "word length bound must be in [0, 6]");
  if (reduced_word_count(n, n - 1, L) > cap) {
    throw Error(ErrorKind::BudgetExceeded, "too many words of length <= " + std::to_string(L));
  }
  const ProjPoint base = klein_centroid(rep.centers());
  ProbeState st{base, translation_to_origin(base.z()), delta, true, {}};
  st.report.max_length = L;
  st.report.base = st.base;
  st.report.min_displacement = std::numeric_limits<double>::infinity();
  std::vector<Isometry> r;
  for (int i = 1; i <= n; ++i) r.push_back(rep.r(i));
  std::vector<int> word;
  std::function<void(const Isometry&, int)> walk = [&](const Isometry& m, int last) {
    if (static_cast<int>(word.size()) == L) return;
    for (int i = 1; i <= n; ++i) {
      if (i == last) continue;
      Isometry next = m * r[i - 1];
      word.push_back(i);
      inspect(st, next, [&] {
        std::string s;
        for (int j : word) s += (s.empty() ? "r" : " r") + std::to_string(j);
        return s;
      });
      walk(next, i);
      word.pop_back();
    }
  };
  walk(Isometry(), 0);
  if (L > 0 && st.report.verdict != ProbeVerdict::violation_found) {
    st.report.verdict = ProbeVerdict::consistent_with_discrete;
  }
  return st.report;
}

OrbitProbeReport orbit_probe(const SurfRep& rep, int L, double delta, long cap) {
  const int n = rep.n();
  if (L < 0 || L > 6) throw Error(ErrorKind::InvalidArgument, "word length bound must be in [0, 6]");
  if (reduced_word_count(2 * n, 2 * n - 1, L) > cap) {
    throw Error(ErrorKind::BudgetExceeded, "too many words of length <= " + std::to_string(L));
  }
  ProbeState st{ProjPoint::disc(0.0), Isometry(), delta, false, {}};
  st.report.max_length = L;
  st.report.base = st.base;
  st.report.min_displacement = std::numeric_limits<double>::infinity();
  GWord word;
  std::function<void(const Isometry&)> walk = [&](const Isometry& m) {
    if (static_cast<int>(word.size()) == L) return;
    for (int i = 1; i <= n; ++i) {
      for (int pw : {1, -1}) {
        if (!word.empty() && word.back().index == i && word.back().power == -pw) continue;
        Isometry next = m * (pw > 0 ? rep.g(i) : rep.g(i).inverse());
        word.push_back({i, pw});
        inspect(st, next, [&] { return to_string(word); });
        walk(next);
        word.pop_back();
      }
    }
  };
  walk(Isometry());
  if (L > 0 && st.report.verdict != ProbeVerdict::violation_found) {
    st.report.verdict = ProbeVerdict::consistent_with_discrete;
  }
  return st.report;
}

TilingReport tiling_check(const std::vector<precise::Vec>& polygon, const std::vector<precise::Mat>& pairings,
                          int depth, int samples_per_cell, std::uint64_t seed) {
  TilingReport out;
  if (depth <= 0) return out;

  // interior sample points, by rejection in the Klein bounding box
  double x0 = 1, x1 = -1, y0 = 1, y1 = -1;
  precise::Complex ksum;
  for (const auto& v : polygon) {
    precise::Complex k = precise::klein(v);
    ksum = ksum + k;
    cplx kd = k.to_cplx();
    x0 = std::min(x0, kd.real());
    x1 = std::max(x1, kd.real());
    y0 = std::min(y0, kd.imag());
    y1 = std::max(y1, kd.imag());
  }
  Rng rng(seed, 0);
  std::vector<precise::Vec> samples;
  for (int tries = 0; static_cast<int>(samples.size()) < samples_per_cell && tries < 1000 * samples_per_cell; ++tries) {
    cplx k(rng.uniform(x0, x1), rng.uniform(y0, y1));
    if (std::norm(k) >= 1.0) continue;
    precise::Vec x = precise::from_klein(precise::Complex(k));
    if (precise::polygon_contains(polygon, x, 1e-6)) samples.push_back(x);
  }
  std::vector<precise::Complex> kvertices;
  for (const auto& v : polygon) kvertices.push_back(precise::klein(v));
  const precise::Vec centre =
      precise::from_klein(precise::real(1) / precise::real(static_cast<int>(polygon.size())) * ksum);
  double radius = 0.0;
  for (const auto& v : polygon) radius = std::max(radius, precise::dist(centre, v));
  // within(y, b): cosh(d(centre, y) / 2) <= b, squared to skip the root.
  const precise::real centre_form = precise::form(centre, centre).re;
  auto within = [&](const precise::Vec& y, const precise::real& bound) {
    return precise::norm(precise::form(centre, y)) <= bound * bound * centre_form * precise::form(y, y).re;
  };
  const precise::real reach = boost::multiprecision::cosh(precise::real(radius + 1e-9) / 2);
  // Copies whose centre lands beyond twice the circumradius cannot meet the base.
  const precise::real far = boost::multiprecision::cosh(precise::real(radius + 1e-9));

  struct Letter {
    precise::Mat m;
    int id;
    int inverse_id;
  };
  std::vector<Letter> letters;
  for (size_t k = 0; k < pairings.size(); ++k) {
    const int id = 2 * static_cast<int>(k);
    if (precise::distance_to_identity(pairings[k] * pairings[k]) < 1e-8) {
      letters.push_back({pairings[k], id, id});
    } else {
      letters.push_back({pairings[k], id, id + 1});
      letters.push_back({pairings[k].inverse(), id + 1, id});
    }
  }
  std::vector<int> word;
  std::function<void(const precise::Mat&, int)> walk = [&](const precise::Mat& m, int forbidden) {
    if (!out.ok || static_cast<int>(word.size()) == 2 * depth) return;
    for (const auto& l : letters) {
      if (l.id == forbidden) continue;
      precise::Mat next = m * l.m;
      word.push_back(l.id);
      if (precise::distance_to_identity(next) >= 1e-8) {
        ++out.elements;
        const bool beyond = !within(next(centre), far);
        for (const auto& x : samples) {
          if (beyond) break;
          precise::Vec y = next(x);
          if (!within(y, reach)) continue;
          if (precise::polygon_contains(polygon, kvertices, y, 1e-9)) {
            out.ok = false;
            std::string w;
            for (int id : word) {
              w += (w.empty() ? "" : " ") + std::string("P") + std::to_string(id / 2 + 1) + (id % 2 ? "^-1" : "");
            }
            out.witness = "word " + w + " moves an interior point back inside";
            return;
          }
        }
      }
      walk(next, l.inverse_id);
      word.pop_back();
      if (!out.ok) return;
    }
  };
  walk(precise::Mat(), -1);
  return out;
}

TilingReport tiling_check(const std::vector<ProjPoint>& polygon, const std::vector<Isometry>& pairings, int depth,
                          int samples_per_cell, std::uint64_t seed) {
  std::vector<precise::Vec> v;
  for (const auto& p : polygon) v.push_back(precise::lift(p));
  std::vector<precise::Mat> m;
  for (const auto& p : pairings) m.push_back(precise::Mat::from(p));
  return tiling_check(v, m, depth, samples_per_cell, seed);
}

TilingReport tiling_check(const FundamentalPolygon& polygon, int depth, int samples_per_cell, std::uint64_t seed) {
  return tiling_check(polygon.precise_vertices, polygon.precise_pairings, depth, samples_per_cell, seed);
}

TilingReport tiling_check(const SurfacePolygon& polygon, int depth, int samples_per_cell, std::uint64_t seed) {
  std::vector<precise::Mat> maps;
  for (const auto& p : polygon.pairings) {
    if (p.edge < p.partner) maps.push_back(p.precise_map);
  }
  return tiling_check(polygon.precise_vertices, maps, depth, samples_per_cell, seed);
}

double area_oracle(const std::vector<ProjPoint>& vertices, const std::vector<ProjPoint>& centres) {
  if (centres.empty()) throw Error(ErrorKind::InvalidArgument, "area oracle needs at least one centre");
  const size_t m = vertices.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  long count = 0;
  std::vector<ProjPoint> rotated = vertices;
  for (const auto& c : centres) {
    for (size_t shift = 0; shift < std::max<size_t>(m, 1); ++shift) {
      if (m > 0) std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
      double a = polygon_area(c, rotated);
      lo = std::min(lo, a);
      hi = std::max(hi, a);
      sum += a;
      ++count;
    }
  }
  if (hi - lo > 1e-8) {
    throw Error(ErrorKind::SpreadTooLarge, "area spread " + short_number(hi - lo) + " over centres");
  }
  return sum / count;
}

}  // namespace toledo
