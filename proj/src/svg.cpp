#include "toledo/svg.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace toledo {

namespace {

struct Canvas {
  double half;
  double x(cplx z) const { return half * (1.0 + 0.95 * z.real()); }
  double y(cplx z) const { return half * (1.0 - 0.95 * z.imag()); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Arc of the circle orthogonal to the unit circle through a and b, or a
// straight segment when a, b and the centre are collinear.
std::string geodesic_segment(const Canvas& cv, cplx a, cplx b) {
  double det = a.real() * b.imag() - a.imag() * b.real();
  std::string end = num(cv.x(b)) + " " + num(cv.y(b));
  if (std::abs(det) < 1e-9) return " L " + end;
  // centre c with Re(conj(c) z) = (1 + |z|^2) / 2 for z = a, b
  double ra = 0.5 * (1.0 + std::norm(a));
  double rb = 0.5 * (1.0 + std::norm(b));
  cplx c((ra * b.imag() - rb * a.imag()) / det, (a.real() * rb - b.real() * ra) / det);
  double radius = std::abs(a - c) * 0.95 * cv.half;
  double cross = (a - c).real() * (b - c).imag() - (a - c).imag() * (b - c).real();
  return " A " + num(radius) + " " + num(radius) + " 0 0 " + (cross > 0 ? "1" : "0") + " " + end;
}

}  // namespace

std::vector<std::vector<ProjPoint>> tiling_copies(const std::vector<ProjPoint>& polygon,
                                                  const std::vector<Isometry>& pairings, int depth) {
  std::vector<Isometry> letters;
  for (const auto& p : pairings) {
    letters.push_back(p);
    if (!projectively_equal(p, p.inverse())) letters.push_back(p.inverse());
  }
  std::vector<Isometry> seen{Isometry()};
  std::function<void(const Isometry&, int)> walk = [&](const Isometry& m, int level) {
    if (level == depth) return;
    for (const auto& l : letters) {
      Isometry next = m * l;
      bool fresh = true;
      for (const auto& s : seen) {
        if (projectively_equal(s, next, 1e-7)) {
          fresh = false;
          break;
        }
      }
      if (fresh) seen.push_back(next);
      walk(next, level + 1);
    }
  };
  walk(Isometry(), 0);
  std::vector<std::vector<ProjPoint>> out;
  for (const auto& g : seen) {
    std::vector<ProjPoint> copy;
    for (const auto& v : polygon) copy.push_back(g(v));
    out.push_back(std::move(copy));
  }
  return out;
}

std::string render_svg(const std::vector<std::vector<ProjPoint>>& polygons, const std::vector<ProjPoint>& marks,
                       int size) {
  Canvas cv{0.5 * size};
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(size) +
         "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " +
         std::to_string(size) + "\">\n";
  out += "  <circle cx=\"" + num(cv.half) + "\" cy=\"" + num(cv.half) + "\" r=\"" + num(0.95 * cv.half) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (size_t k = polygons.size(); k-- > 0;) {
    const auto& poly = polygons[k];
    if (poly.empty()) continue;
    std::string d = "M " + num(cv.x(poly[0].z())) + " " + num(cv.y(poly[0].z()));
    for (size_t i = 0; i < poly.size(); ++i) {
      d += geodesic_segment(cv, poly[i].z(), poly[(i + 1) % poly.size()].z());
    }
    d += " Z";
    const bool base = k == 0;
    out += std::string("  <path class=\"") + (base ? "polygon" : "copy") + "\" d=\"" + d + "\" fill=\"" +
           (base ? "#f4d8a8" : "none") + "\" stroke=\"" + (base ? "#8a3b12" : "#5577aa") +
           "\" stroke-width=\"" + (base ? "1.5" : "0.6") + "\"/>\n";
  }
  for (const auto& m : marks) {
    out += "  <circle class=\"mark\" cx=\"" + num(cv.x(m.z())) + "\" cy=\"" + num(cv.y(m.z())) +
           "\" r=\"2.5\" fill=\"#222222\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace toledo
