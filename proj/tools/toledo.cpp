// toledo: sample, check, deform and draw representations of H_n and G_n.
//
// Exit codes: 0 ok / discrete, 1 not discrete, 2 bad flags, 3 sampler
// failure, 4 unreadable or invalid document, 5 degenerate earthquake pair,
// 6 boundary tuple out of order, 7 any other domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "toledo/sampling.hpp"
#include "toledo/service.hpp"
#include "toledo/svg.hpp"

using namespace toledo;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Exit {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{4, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Exit{7, "cannot write " + out};
  f << text;
}

AnyRep load_file(const std::string& path) {
  try {
    return load_rep(read_document(slurp(path)), relation_tolerance_from_env());
  } catch (const Error& e) {
    throw Exit{4, path + ": " + e.what()};
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Exit{2, "not a number: '" + item + "'"};
    }
    out.push_back(v);
  }
  return out;
}

int cmd_sample(int n, std::uint64_t seed, int sign, bool generic, const std::string& out) {
  SampleConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.sign = sign;
  HypRep rep = HypRep::trusted({});
  try {
    rep = generic ? sample_generic(cfg) : sample_discrete(cfg);
  } catch (const Error& e) {
    throw Exit{3, e.what()};
  }
  DiscretenessReport r = is_discrete(rep);
  json meta = {{"seed", seed},
               {"sampler", generic ? "generic" : "discrete"},
               {"verdict", to_string(r.verdict)},
               {"area", r.area}};
  put(write_document(make_document(rep, meta)), out);
  std::ostream& log = out.empty() || out == "-" ? std::cerr : std::cout;
  log << "verdict " << to_string(r.verdict) << "\narea " << fmt(r.area) << "\narea_over_pi " << fmt(r.area / kPi)
      << "\n";
  return 0;
}

int cmd_check(const std::string& file, std::optional<int> i, int probe_depth) {
  AnyRep rep = load_file(file);
  json report = summarize(rep, i);
  report.erase("polygon");
  if (probe_depth > 0) {
    OrbitProbeReport p = std::visit([&](const auto& r) { return orbit_probe(r, probe_depth, 1e-6); }, rep);
    report["probe"] = {{"max_length", p.max_length},
                       {"words", p.words},
                       {"identity_words", p.identity_words},
                       {"min_displacement", p.min_displacement},
                       {"verdict", to_string(p.verdict)}};
    if (!p.witness.empty()) report["probe"]["witness"] = p.witness;
  }
  std::cout << emit_json(report) << "\n";
  return report["verdict"] == "not_discrete" ? 1 : 0;
}

int cmd_quake(const std::string& file, const std::string& moves, const std::string& out) {
  AnyRep rep = load_file(file);
  auto rep_area = [](const AnyRep& r) {
    if (const auto* h = std::get_if<HypRep>(&r)) return area(*h);
    return area_surface(std::get<SurfRep>(r));
  };
  const double before = rep_area(rep);
  std::stringstream ss(moves);
  std::string item;
  int index = 0;
  while (std::getline(ss, item, ',')) {
    ++index;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Exit{2, "moves are i:t, got '" + item + "'"};
    int i = 0;
    double t = 0.0;
    try {
      size_t used = 0;
      i = std::stoi(item.substr(0, colon), &used);
      t = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw Exit{2, "moves are i:t, got '" + item + "'"};
    }
    try {
      if (auto* h = std::get_if<HypRep>(&rep)) {
        rep = earthquake(*h, i, t);
      } else {
        rep = earthquake_gn(std::get<SurfRep>(rep), i, t);
      }
    } catch (const Error& e) {
      int code = e.kind() == ErrorKind::DegeneratePair ? 5 : 7;
      throw Exit{code, "move " + std::to_string(index) + " (" + item + "): " + e.what()};
    }
  }
  const double after = rep_area(rep);
  json meta = {{"moves", moves}};
  put(std::visit([&](const auto& r) { return write_document(make_document(r, meta)); }, rep), out);
  std::ostream& log = out.empty() || out == "-" ? std::cerr : std::cout;
  log << "area_before " << fmt(before) << "\narea_after " << fmt(after) << "\narea_delta " << fmt(after - before)
      << "\n";
  return 0;
}

int cmd_coords(const std::string& file, const std::string& tuple, bool to, bool from, std::optional<int> sign,
               int i, const std::string& out) {
  if (to == from) throw Exit{2, "give exactly one of --to and --from"};
  try {
    if (to) {
      if (file.empty()) throw Exit{2, "--to needs a document"};
      AnyRep rep = load_file(file);
      const auto* h = std::get_if<HypRep>(&rep);
      if (h == nullptr) throw Exit{7, "boundary coordinates exist for hyp documents only"};
      BoundaryTuple t = to_boundary_tuple(*h, i);
      BoundaryTuple back = to_boundary_tuple(from_boundary_tuple(t, i), i);
      double dev = 0.0;
      for (size_t k = 0; k < t.angles.size(); ++k) dev = std::max(dev, std::abs(back.angles[k] - t.angles[k]));
      json j = {{"i", i}, {"sign", t.sign}, {"angles", t.angles}, {"roundtrip_max_angle_deviation", dev}};
      put(emit_json(j) + "\n", out);
      return 0;
    }
    if (tuple.empty()) throw Exit{2, "--from needs --tuple"};
    BoundaryTuple t;
    t.angles = parse_list(tuple);
    t.sign = sign ? *sign : (!t.angles.empty() && t.angles[0] < 0 ? -1 : 1);
    HypRep rep = from_boundary_tuple(t, i);
    put(write_document(make_document(rep, {{"tuple_index", i}})), out);
    return 0;
  } catch (const Error& e) {
    throw Exit{e.kind() == ErrorKind::BadOrdering ? 6 : 7, e.what()};
  }
}

int cmd_polygon(const std::string& file, const std::string& format, int depth, const std::string& out) {
  AnyRep rep = load_file(file);
  try {
    json poly = polygon_json(rep);
    if (poly.is_null()) throw Exit{1, "not discrete: no fundamental polygon"};
    if (format == "json") {
      put(emit_json(poly) + "\n", out);
      return 0;
    }
    std::vector<ProjPoint> vertices;
    std::vector<Isometry> pairings;
    std::vector<ProjPoint> marks;
    if (const auto* h = std::get_if<HypRep>(&rep)) {
      FundamentalPolygon p = fundamental_polygon(*h);
      vertices = p.vertices;
      pairings = p.pairings;
      marks = p.edge_midpoints;
    } else {
      SurfacePolygon p = fundamental_polygon_surface(std::get<SurfRep>(rep));
      vertices = p.vertices;
      pairings = p.gammas;
    }
    put(render_svg(tiling_copies(vertices, pairings, depth), marks), out);
    return 0;
  } catch (const Error& e) {
    throw Exit{e.kind() == ErrorKind::NotDiscrete ? 1 : 7, e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discreteness, area and deformations of hyperelliptic and surface group representations"};
  app.require_subcommand(1);

  int n = 6;
  std::uint64_t seed = 0;
  int sign = 1;
  bool generic = false;
  std::string out;
  auto* sample = app.add_subcommand("sample", "Sample a representation and write its document");
  sample->add_option("--n", n, "Number of generators")->check(CLI::Range(5, 1000));
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("--sign", sign, "Relation sign")->check(CLI::IsMember({-1, 1}));
  sample->add_flag("--generic", generic, "Skip the discreteness construction");
  sample->add_option("--out", out, "Output file (default stdout)");

  std::string file;
  std::optional<int> cycle_index;
  int probe_depth = 0;
  auto* check = app.add_subcommand("check", "Report area, cycle orientation and verdict");
  check->add_option("file", file, "Representation document")->required();
  check->add_option("--i", cycle_index, "Index of the discreteness cycle");
  check->add_option("--probe-depth", probe_depth, "Also probe the orbit with words up to this length")
      ->check(CLI::Range(0, 12));

  std::string moves;
  auto* quake = app.add_subcommand("quake", "Apply earthquakes i:t left to right");
  quake->add_option("file", file, "Representation document")->required();
  quake->add_option("--moves", moves, "Comma-separated i:t pairs")->required();
  quake->add_option("--out", out, "Output file (default stdout)");

  std::string tuple;
  bool to = false;
  bool from = false;
  std::optional<int> tuple_sign;
  int base = 1;
  auto* coords = app.add_subcommand("coords", "Convert between documents and boundary tuples");
  coords->add_option("file", file, "Representation document (with --to)");
  coords->add_option("--tuple", tuple, "Comma-separated angles in radians (with --from)");
  coords->add_flag("--to", to, "Document to tuple");
  coords->add_flag("--from", from, "Tuple to document");
  coords->add_option("--sign", tuple_sign, "Tuple sign (default from the first angle)")->check(CLI::IsMember({-1, 1}));
  coords->add_option("--i", base, "Base index of the tuple")->check(CLI::PositiveNumber);
  coords->add_option("--out", out, "Output file (default stdout)");

  std::string format = "json";
  int depth = 0;
  auto* polygon = app.add_subcommand("polygon", "Fundamental polygon as JSON or SVG");
  polygon->add_option("file", file, "Representation document")->required();
  polygon->add_option("--format", format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
  polygon->add_option("--tiling-depth", depth, "Draw copies under pairing words up to this length")
      ->check(CLI::Range(0, 3));
  polygon->add_option("--out", out, "Output file (default stdout)");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API over HTTP");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) return cmd_sample(n, seed, sign, generic, out);
    if (*check) return cmd_check(file, cycle_index, probe_depth);
    if (*quake) return cmd_quake(file, moves, out);
    if (*coords) return cmd_coords(file, tuple, to, from, tuple_sign, base, out);
    if (*polygon) return cmd_polygon(file, format, depth, out);
    if (*serve_cmd) {
      std::cerr << "listening on " << host << ":" << port << "\n";
      serve(host, port);
    }
    return 0;
  } catch (const Exit& e) {
    std::cerr << "toledo: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "toledo: " << e.what() << "\n";
    return 7;
  }
}
