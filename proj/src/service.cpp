#include "toledo/service.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include <httplib.h>

#include "toledo/sampling.hpp"

namespace toledo {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void bad_request(const std::string& what) { throw Error(ErrorKind::MalformedDocument, what); }

int int_field(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) bad_request(std::string("'") + key + "' must be an integer");
  return j[key].get<int>();
}

const json& document_part(const json& j) {
  if (!j.is_object()) bad_request("request body must be a JSON object");
  return j.contains("document") ? j["document"] : j;
}

AnyRep load(const json& body) {
  return load_rep(document_from_json(document_part(body)), relation_tolerance_from_env());
}

json with_document(const AnyRep& rep, json summary, const json& metadata = json::object()) {
  summary["document"] = std::visit([&](const auto& r) { return document_to_json(make_document(r, metadata)); }, rep);
  return summary;
}

json metadata_of(const json& body) { return document_part(body).value("metadata", json::object()); }

double rep_area(const AnyRep& rep) {
  if (const auto* h = std::get_if<HypRep>(&rep)) return area(*h);
  return area_surface(std::get<SurfRep>(rep));
}

json check(const json& body) {
  AnyRep rep = load(body);
  std::optional<int> i;
  if (body.contains("i")) i = int_field(body, "i", 1);
  return with_document(rep, summarize(rep, i), metadata_of(body));
}

json quake(const json& body) {
  AnyRep rep = load(body);
  if (!body.contains("moves") || !body["moves"].is_array()) bad_request("'moves' must be an array");
  const double before = rep_area(rep);
  int index = 0;
  for (const auto& mv : body["moves"]) {
    ++index;
    if (!mv.is_object() || !mv.contains("t") || !mv["t"].is_number()) bad_request("moves are {\"i\": int, \"t\": number}");
    int i = int_field(mv, "i", 0);
    double t = mv["t"].get<double>();
    if (auto* h = std::get_if<HypRep>(&rep)) {
      rep = earthquake(*h, i, t);
    } else {
      rep = earthquake_gn(std::get<SurfRep>(rep), i, t);
    }
  }
  const double after = rep_area(rep);
  json out = with_document(rep, summarize(rep), metadata_of(body));
  out["area_before"] = before;
  out["area_after"] = after;
  out["area_delta"] = after - before;
  out["moves_applied"] = index;
  return out;
}

json coords_from(const json& body) {
  if (!body.is_object() || !body.contains("angles") || !body["angles"].is_array()) {
    bad_request("'angles' must be an array of numbers");
  }
  BoundaryTuple t;
  for (const auto& a : body["angles"]) {
    if (!a.is_number()) bad_request("'angles' must be an array of numbers");
    t.angles.push_back(a.get<double>());
  }
  t.sign = int_field(body, "sign", !t.angles.empty() && t.angles[0] < 0 ? -1 : 1);
  int i = int_field(body, "i", 1);
  HypRep rep = from_boundary_tuple(t, i);
  return with_document(rep, summarize(rep));
}

json coords_to(const json& body) {
  AnyRep rep = load(body);
  const auto* h = std::get_if<HypRep>(&rep);
  if (h == nullptr) throw Error(ErrorKind::InvalidArgument, "boundary coordinates exist for hyp documents only");
  BoundaryTuple t = to_boundary_tuple(*h, int_field(body, "i", 1));
  json out = with_document(rep, summarize(rep), metadata_of(body));
  out["angles"] = t.angles;
  out["sign"] = t.sign;
  return out;
}

json polygon(const json& body) {
  AnyRep rep = load(body);
  json poly = polygon_json(rep);
  if (poly.is_null()) throw Error(ErrorKind::NotDiscrete, "no fundamental polygon for a non-discrete representation");
  json out = with_document(rep, summarize(rep), metadata_of(body));
  out["polygon"] = poly;
  return out;
}

json sample(const json& body) {
  if (!body.is_object()) bad_request("request body must be a JSON object");
  SampleConfig cfg;
  cfg.n = int_field(body, "n", 6);
  cfg.seed = static_cast<std::uint64_t>(int_field(body, "seed", 0));
  cfg.sign = int_field(body, "sign", 1);
  bool generic = body.contains("generic") && body["generic"].is_boolean() && body["generic"].get<bool>();
  HypRep rep = generic ? sample_generic(cfg) : sample_discrete(cfg);
  json meta = {{"seed", cfg.seed}, {"sampler", generic ? "generic" : "discrete"}};
  return with_document(rep, summarize(rep), meta);
}

}  // namespace

double relation_tolerance_from_env() {
  const char* env = std::getenv("TOLEDO_EPS");
  if (env == nullptr || *env == '\0') return kRelationTolerance;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || !(v > 0.0) || !std::isfinite(v)) return kRelationTolerance;
  return v;
}

json polygon_json(const AnyRep& rep) {
  if (const auto* h = std::get_if<HypRep>(&rep)) {
    if (is_discrete(*h).verdict == Verdict::not_discrete) return nullptr;
    FundamentalPolygon p = fundamental_polygon(*h);
    json out;
    out["vertices"] = points_json(p.vertices);
    out["edge_midpoints"] = points_json(p.edge_midpoints);
    out["pairings"] = json::array();
    for (size_t k = 0; k < p.pairings.size(); ++k) {
      out["pairings"].push_back({{"edge", k}, {"partner", k}, {"matrix", matrix_json(p.pairings[k])}});
    }
    out["angles"] = p.angles;
    out["angle_sum"] = p.angle_sum;
    out["angle_sum_over_pi"] = p.angle_sum / kPi;
    out["convex"] = p.convex;
    return out;
  }
  const SurfRep& s = std::get<SurfRep>(rep);
  if (is_discrete_goldman(s).verdict == Verdict::not_discrete) return nullptr;
  SurfacePolygon p = fundamental_polygon_surface(s);
  json out;
  out["vertices"] = points_json(p.vertices);
  out["word_index"] = p.word_index;
  out["pairings"] = json::array();
  for (int i = 2; i <= s.n() - 1; ++i) {
    const EdgePairing& e = p.pairings[i - 2];
    out["pairings"].push_back(
        {{"gamma", i}, {"edge", e.edge}, {"partner", e.partner}, {"matrix", matrix_json(e.map)}});
  }
  out["angles"] = p.angles;
  out["angle_sum"] = p.angle_sum;
  out["angle_sum_over_pi"] = p.angle_sum / kPi;
  out["pairing_error"] = p.pairing_error;
  out["relation_error"] = p.relation_error;
  return out;
}

json summarize(const AnyRep& rep, std::optional<int> i) {
  json out;
  if (const auto* h = std::get_if<HypRep>(&rep)) {
    DiscretenessReport r = is_discrete(*h, i);
    out["kind"] = "hyp";
    out["n"] = h->n();
    out["verdict"] = to_string(r.verdict);
    out["area"] = r.area;
    out["area_over_pi"] = r.area / kPi;
    out["maximal_area_over_pi"] = r.maximal_area / kPi;
    out["orientation"] = to_string(r.cycle.orientation);
    out["i"] = r.cycle.i;
    out["i_cycle"] = points_json(r.cycle.points);
    if (!r.cycle.diagnostic.empty()) out["diagnostic"] = r.cycle.diagnostic;
  } else {
    const SurfRep& s = std::get<SurfRep>(rep);
    SurfaceReport r = is_discrete_goldman(s);
    out["kind"] = "surf";
    out["n"] = s.n();
    out["verdict"] = to_string(r.verdict);
    out["area"] = r.area;
    out["area_over_pi"] = r.area / kPi;
    out["maximal_area_over_pi"] = r.maximal_area / kPi;
    out["orientation"] = to_string(r.certificate.orientation);
    out["i_cycle"] = points_json(r.certificate.cycle);
    if (!r.certificate.available) out["diagnostic"] = r.certificate.reason;
  }
  try {
    json poly = polygon_json(rep);
    out["polygon"] = poly.is_null() ? json(nullptr) : json{{"vertices", poly["vertices"]}};
  } catch (const Error& e) {
    out["polygon"] = nullptr;
    out["diagnostic"] = e.what();
  }
  return out;
}

ServiceResponse handle_request(const std::string& path, const std::string& body) {
  try {
    json j = parse_json(body);
    if (path == "/api/check") return {200, check(j)};
    if (path == "/api/quake") return {200, quake(j)};
    if (path == "/api/coords/from") return {200, coords_from(j)};
    if (path == "/api/coords/to") return {200, coords_to(j)};
    if (path == "/api/polygon") return {200, polygon(j)};
    if (path == "/api/sample") return {200, sample(j)};
    return {404, {{"error", "NotFound"}, {"message", "no endpoint " + path}}};
  } catch (const Error& e) {
    int status = e.kind() == ErrorKind::MalformedDocument ? 400 : 422;
    return {status, {{"error", e.name()}, {"message", e.what()}}};
  } catch (const json::exception& e) {
    return {400, {{"error", "MalformedDocument"}, {"message", e.what()}}};
  }
}

void install_routes(httplib::Server& server) {
  for (const char* path :
       {"/api/check", "/api/quake", "/api/coords/from", "/api/coords/to", "/api/polygon", "/api/sample"}) {
    server.Post(path, [path](const httplib::Request& req, httplib::Response& res) {
      ServiceResponse r = handle_request(path, req.body);
      res.status = r.status;
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_content(emit_json(r.body, 0), "application/json");
    });
  }
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
    res.status = 204;
  });
}

void serve(const std::string& host, int port) {
  httplib::Server server;
  install_routes(server);
  if (!server.listen(host, port)) {
    throw Error(ErrorKind::InvalidArgument, "cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace toledo
