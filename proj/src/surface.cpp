#include "toledo/surface.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace toledo {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }

precise::Mat evaluate_precise(const std::vector<precise::Mat>& gens, const GWord& w) {
  precise::Mat m;
  for (const auto& l : w) {
    const precise::Mat& g = gens[l.index - 1];
    m = m * (l.power > 0 ? g : g.inverse());
  }
  return m;
}

GWord free_reduce(const GWord& w) {
  GWord out;
  for (const auto& l : w) {
    if (!out.empty() && out.back().index == l.index && out.back().power == -l.power) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

const Isometry& SurfRep::g(int i) const { return gens_[wrap(i, n()) - 1]; }

std::array<Isometry, 3> SurfRep::relations() const {
  std::vector<precise::Mat> gens = precise_gens();
  std::array<precise::Mat, 3> prod;
  for (int k = 1; k <= n(); ++k) {
    const precise::Mat& m = gens[k - 1];
    prod[0] = m * prod[0];
    if (k % 2 == 0) {
      prod[1] = m * prod[1];
    } else {
      prod[2] = m * prod[2];
    }
  }
  return {prod[0].to_isometry(), prod[1].to_isometry(), prod[2].to_isometry()};
}

SurfRep validate_relations(std::vector<Isometry> gens, double tol) {
  const int n = static_cast<int>(gens.size());
  if (n % 2 != 0) throw Error(ErrorKind::OddN, "surface groups need even n, got " + std::to_string(n));
  if (n < 6) throw Error(ErrorKind::TooFewGenerators, "n = " + std::to_string(n) + " but at least 6 generators are needed");
  for (int k = 0; k < n; ++k) {
    double defect = std::max(std::abs(gens[k].det() - 1.0), form_defect(gens[k]));
    if (defect > tol * std::max(1.0, gens[k].norm() * gens[k].norm())) {
      throw Error(ErrorKind::RelationViolated,
                  "generator g_" + std::to_string(k + 1) + " is not in SU(1,1) (defect " +
                      short_number(defect) + ")");
    }
  }
  SurfRep rep = SurfRep::trusted(std::move(gens));
  auto rel = rep.relations();
  for (int r = 0; r < 3; ++r) {
    double residual = projective_distance(rel[r], Isometry::identity());
    if (residual > tol) {
      throw Error(ErrorKind::RelationViolated, "relation " + std::to_string(r + 1) +
                                                   " differs from +-I by " + short_number(residual));
    }
  }
  return rep;
}

SurfRep restrict_to_surface(const HypRep& rep) {
  if (rep.n() % 2 != 0) {
    throw Error(ErrorKind::OddN, "surface restriction needs even n, got " + std::to_string(rep.n()));
  }
  std::vector<Isometry> gens;
  std::vector<precise::Mat> wide;
  const auto r = precise::balanced_half_turns(rep.centers());
  const int n = rep.n();
  for (int i = 1; i <= n; ++i) {
    gens.push_back(rep.pair(i));
    wide.push_back(r[i - 1] * r[(i + n - 2) % n]);
  }
  return SurfRep::trusted(std::move(gens), std::move(wide));
}

std::vector<precise::Mat> SurfRep::precise_gens() const {
  if (!precise_.empty()) return precise_;
  std::vector<precise::Mat> out;
  for (const auto& g : gens_) out.push_back(precise::Mat::from(g));
  return out;
}

GWord to_g_word(const RWord& w, int n) {
  if (w.size() % 2 != 0) throw Error(ErrorKind::InvalidArgument, "odd r-words are not in G_n");
  GWord out;
  for (size_t k = 0; k < w.size(); k += 2) {
    int a = wrap(w[k], n);
    int b = wrap(w[k + 1], n);
    int down = ((a - b) % n + n) % n;
    int up = ((b - a) % n + n) % n;
    if (down == 0) continue;
    if (down <= up) {
      for (int j = 0; j < down; ++j) out.push_back({wrap(a - j, n), 1});
    } else {
      for (int j = 1; j <= up; ++j) out.push_back({wrap(a + j, n), -1});
    }
  }
  return free_reduce(out);
}

std::string to_string(const GWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += "g" + std::to_string(l.index);
    if (l.power < 0) out += "^-1";
  }
  return out;
}

RWord v_word(int i, int n) {
  if (i < 0 || i > n - 1) throw Error(ErrorKind::IndexOutOfRange, "v_" + std::to_string(i));
  RWord out;
  for (int j = i; j >= 1; --j) out.push_back(j);
  return out;
}

RWord w_word(int i, int n) {
  const int period = 2 * n - 2;
  int j = ((i % period) + period) % period;
  if (j <= n - 2) {
    RWord out = v_word(j, n);
    if (j % 2 == 1) out.push_back(n);
    return out;
  }
  RWord inner = w_word(j - (n - 1), n);
  if (inner.empty()) return inner;
  RWord out{n};
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(n);
  return out;
}

const GWord& w_gword(int i, int n) {
  static std::mutex mu;
  static std::map<int, std::vector<GWord>> cache;
  const int period = 2 * n - 2;
  int j = ((i % period) + period) % period;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<GWord> words;
    for (int k = 0; k < period; ++k) words.push_back(to_g_word(w_word(k, n), n));
    it = cache.emplace(n, std::move(words)).first;
  }
  return it->second[j];
}

GWord inverse(const GWord& w) {
  GWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.power = -l.power;
  return out;
}

Isometry evaluate(const SurfRep& rep, const GWord& w) {
  // Products of a dozen generic generators lose ~1e-7 relative in double.
  const std::vector<precise::Mat> gens = rep.precise_gens();
  precise::Mat m;
  for (const auto& l : w) {
    const precise::Mat& g = gens[wrap(l.index, rep.n()) - 1];
    m = m * (l.power > 0 ? g : g.inverse());
  }
  return m.to_isometry();
}

Isometry evaluate(const SurfRep& rep, const RWord& w) { return evaluate(rep, to_g_word(w, rep.n())); }

Isometry evaluate_w(const SurfRep& rep, int i) { return evaluate(rep, w_gword(i, rep.n())); }

RWord apply(RAut a, const RWord& w, int n) {
  RWord out;
  if (a == RAut::I) out.push_back(n);
  for (int j : w) {
    switch (a) {
      case RAut::S: out.push_back(wrap(j + 1, n)); break;
      case RAut::S_inverse: out.push_back(wrap(j - 1, n)); break;
      case RAut::J: out.push_back(wrap(n - j, n)); break;
      case RAut::I: out.push_back(j); break;
    }
  }
  if (a == RAut::I) out.push_back(n);
  return out;
}

SurfRep twist(const SurfRep& rep, RAut a) {
  const int n = rep.n();
  const auto pg = rep.precise_gens();
  std::vector<precise::Mat> wide;
  std::vector<Isometry> gens;
  for (int i = 1; i <= n; ++i) {
    wide.push_back(evaluate_precise(pg, to_g_word(apply(a, RWord{i, wrap(i - 1, n)}, n), n)));
    gens.push_back(wide.back().to_isometry());
  }
  return SurfRep::trusted(std::move(gens), std::move(wide));
}

double area_surface(const SurfRep& rep, const std::optional<ProjPoint>& p, const std::optional<ProjPoint>& q) {
  const ProjPoint origin = ProjPoint::disc(0.0);
  const precise::Vec pp = precise::lift(p ? *p : origin);
  const precise::Vec qq = precise::lift(q ? *q : origin);
  const auto gens = rep.precise_gens();
  std::vector<precise::Vec> cycle;
  for (int k = 0; k <= 2 * rep.n() - 3; ++k) {
    cycle.push_back(evaluate_precise(gens, w_gword(k, rep.n()))(k % 2 == 0 ? pp : qq));
  }
  return precise::polygon_area(precise::Vec{}, cycle);
}

SurfaceReport is_discrete_goldman(const SurfRep& rep) {
  const int n = rep.n();
  SurfaceReport out;
  out.area = area_surface(rep);
  out.maximal_area = 2 * (n - 4) * kPi;
  bool maximal = std::abs(std::abs(out.area) - out.maximal_area) <= 1e-6;
  if (!maximal) {
    out.certificate.reason = "certificate unavailable: area is not maximal";
    return out;
  }
  out.verdict = out.area > 0 ? Verdict::discrete_positive : Verdict::discrete_negative;

  SurfRep primed = twist(rep, RAut::I);
  std::vector<ProjPoint> s(n + 1, ProjPoint::disc(0.0)), t = s, s1 = s, t1 = s;
  for (int i = 1; i <= n; ++i) {
    IsometryClass c = classify(rep.g(i));
    IsometryClass c1 = classify(primed.g(i));
    if (c.tag != IsometryTag::hyperbolic || c1.tag != IsometryTag::hyperbolic) {
      throw Error(ErrorKind::NotHyperbolicGenerator,
                  "g_" + std::to_string(i) + " is not hyperbolic although the area is maximal");
    }
    s[wrap(i - 1, n)] = *c.repeller;
    t[i] = *c.attractor;
    s1[wrap(i - 1, n)] = *c1.repeller;
    t1[i] = *c1.attractor;
  }
  SurfaceCertificate& cert = out.certificate;
  cert.endpoint_mismatch = std::max(separation(s[n], t1[1]), separation(t[1], s1[n]));

  const auto gens = rep.precise_gens();
  auto image = [&](int k, const ProjPoint& d) {
    return precise::to_point(evaluate_precise(gens, w_gword(k, n))(precise::lift(d)));
  };
  auto build = [&](const ProjPoint& d) {
    std::vector<ProjPoint> c{t[1], s[2], image(2, d)};
    for (int k = 3; k <= n - 2; ++k) {
      c.push_back(s[k]);
      c.push_back(t[k]);
      c.push_back(image(k, d));
    }
    c.push_back(t[n - 1]);
    c.push_back(s[n]);
    c.push_back(s1[2]);
    c.push_back(image(n + 1, d));
    for (int k = 3; k <= n - 2; ++k) {
      c.push_back(s1[k]);
      c.push_back(t1[k]);
      c.push_back(image(n + k - 1, d));
    }
    c.push_back(t1[n - 1]);
    return c;
  };
  cert.cycle = build(s[n]);
  Orientation first = cycle_orientation(cert.cycle).orientation;
  Orientation second = cycle_orientation(build(t[1])).orientation;
  cert.orientation = first == second ? first : Orientation::neither;
  cert.available = true;
  return out;
}

SurfacePolygon fundamental_polygon_surface(const SurfRep& rep) {
  SurfaceReport report = is_discrete_goldman(rep);
  if (report.verdict == Verdict::not_discrete) {
    throw Error(ErrorKind::NotDiscrete, "no fundamental polygon for a non-discrete representation");
  }
  const int n = rep.n();
  const auto gens = rep.precise_gens();
  SurfacePolygon out;
  const precise::Vec q = precise::lift(axis_point_nearest_origin(rep.g(1)));
  const precise::Vec p = gens[0](q);
  for (int k = 1; k <= 2 * n - 3; ++k) {
    if (k == n - 1) continue;
    out.word_index.push_back(k);
    precise::Vec v = evaluate_precise(gens, w_gword(k, n))(k % 2 == 0 ? p : q);
    out.precise_vertices.push_back(v);
    out.vertices.push_back(precise::to_point(v));
  }
  const auto& pv = out.precise_vertices;
  const int m = static_cast<int>(pv.size());
  const bool positive = report.verdict == Verdict::discrete_positive;
  for (int k = 0; k < m; ++k) {
    const precise::Vec& prev = pv[(k + m - 1) % m];
    const precise::Vec& next = pv[(k + 1) % m];
    double a = positive ? precise::interior_angle(prev, pv[k], next) : precise::interior_angle(next, pv[k], prev);
    out.angles.push_back(a);
    out.angle_sum += a;
  }
  precise::check_simple(pv);

  out.pairings.resize(m);
  std::vector<GWord> gamma_words;
  for (int i = 2; i <= n - 1; ++i) {
    GWord w = to_g_word(RWord{n, i}, n);
    gamma_words.push_back(w);
    precise::Mat gp = evaluate_precise(gens, w);
    Isometry gamma = evaluate(rep, w);
    out.gammas.push_back(gamma);
    int e = i - 2;
    int e1 = e + n - 2;
    out.pairings[e] = {e, e1, gamma, gp};
    out.pairings[e1] = {e1, e, gamma.inverse(), gp.inverse()};
  }
  for (const auto& pr : out.pairings) {
    const precise::Vec& a = pv[pr.edge];
    const precise::Vec& b = pv[(pr.edge + 1) % m];
    out.pairing_error = std::max({out.pairing_error, precise::dist(pr.precise_map(a), pv[(pr.partner + 1) % m]),
                                  precise::dist(pr.precise_map(b), pv[pr.partner])});
  }

  // gamma_{n-1} ... gamma_3 gamma_2^-1 gamma_{n-1}^-1 ... gamma_3^-1 gamma_2 with
  // exponents +1 at odd and -1 at even indices in the first half, reduced as a
  // g-word before evaluation.
  GWord rel;
  for (int half = 0; half < 2; ++half) {
    for (int k = n - 1; k >= 2; --k) {
      int sigma = (k % 2 == 1 ? 1 : -1) * (half == 0 ? 1 : -1);
      const GWord& w = gamma_words[k - 2];
      GWord part = sigma > 0 ? w : inverse(w);
      rel.insert(rel.end(), part.begin(), part.end());
    }
  }
  out.relation_error = precise::distance_to_identity(evaluate_precise(gens, free_reduce(rel)));
  return out;
}

VertexCycle vertex_cycle(const std::vector<precise::Vec>& vertices, const std::vector<EdgePairing>& pairings,
                         const std::vector<double>& angles, int start) {
  const int m = static_cast<int>(vertices.size());
  std::vector<const EdgePairing*> by_edge(m, nullptr);
  for (const auto& p : pairings) by_edge[p.edge] = &p;
  VertexCycle out;
  int v = start;
  precise::Vec x = vertices[start];
  for (int step = 0; step <= m; ++step) {
    out.vertices.push_back(v);
    out.angle_sum += angles[v];
    const EdgePairing* p = by_edge[v];
    if (p == nullptr) throw Error(ErrorKind::InvalidArgument, "edge " + std::to_string(v) + " is unpaired");
    x = p->precise_map(x);
    v = (p->partner + 1) % m;
    out.step_error = std::max(out.step_error, precise::dist(x, vertices[v]));
    if (v == start) {
      out.closure = precise::dist(x, vertices[start]);
      return out;
    }
  }
  throw Error(ErrorKind::Inconsistent, "vertex cycle does not close");
}

std::vector<EdgePairing> edge_pairings(const FundamentalPolygon& p) {
  std::vector<EdgePairing> out;
  for (int k = 0; k < static_cast<int>(p.pairings.size()); ++k) {
    out.push_back({k, k, p.pairings[k], p.precise_pairings[k]});
  }
  return out;
}

SurfRep earthquake_gn(const SurfRep& rep, int i, double t) {
  const int n = rep.n();
  if (i < 1 || i > n) throw Error(ErrorKind::IndexOutOfRange, "earthquake index " + std::to_string(i));
  const Isometry& g = rep.g(i);
  if (classify(g).tag != IsometryTag::hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "g_" + std::to_string(i) + " is not hyperbolic");
  }
  std::vector<precise::Mat> pg = rep.precise_gens();
  const precise::Mat h = pg[wrap(i, n) - 1];
  pg[wrap(i + 1, n) - 1] = pg[wrap(i + 1, n) - 1] * precise::hyperbolic_power(h, -t);
  pg[wrap(i - 1, n) - 1] = precise::hyperbolic_power(h, t) * pg[wrap(i - 1, n) - 1];
  std::vector<Isometry> gens;
  for (const auto& m : pg) gens.push_back(m.to_isometry());
  return SurfRep::trusted(std::move(gens), std::move(pg));
}

double generator_distance(const SurfRep& a, const SurfRep& b) {
  if (a.n() != b.n()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int i = 1; i <= a.n(); ++i) worst = std::max(worst, projective_distance(a.g(i), b.g(i)));
  return worst;
}

}  // namespace toledo
