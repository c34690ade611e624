#include "toledo/document.hpp"

#include <cmath>
#include <cstdio>

namespace toledo {

using nlohmann::json;

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Scalar arrays, and pairs of such, print on one line.
bool is_flat(const json& j) {
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array() && !(j.size() <= 2 && is_flat(e))) return false;
  }
  return true;
}

void emit(const json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent > 0) {
      out += '\n';
      out.append(static_cast<size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_items = indent == 0 || is_flat(j);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += inline_items && indent > 0 ? ", " : ",";
        if (!inline_items) newline(depth + 1);
        emit(e, inline_items ? 0 : indent, depth + 1, out);
        first = false;
      }
      if (!inline_items) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        emit(it.value(), indent, depth + 1, out);
        first = false;
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedDocument, what); }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) malformed(where + " must be a number");
  return j.get<double>();
}

cplx complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) malformed(where + " must be a [re, im] pair");
  return {number(j[0], where), number(j[1], where)};
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string emit_json(const json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    int line = 1;
    int col = 1;
    for (size_t k = 0; k < byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    malformed("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

RepDocument document_from_json(const json& j) {
  if (!j.is_object()) malformed("document must be a JSON object");
  RepDocument doc;
  if (!j.contains("schema") || !j["schema"].is_number_integer()) malformed("missing integer field 'schema'");
  doc.schema = j["schema"].get<int>();
  if (doc.schema != kSchemaVersion) malformed("unsupported schema version " + std::to_string(doc.schema));
  if (!j.contains("kind") || !j["kind"].is_string()) malformed("missing string field 'kind'");
  doc.kind = j["kind"].get<std::string>();
  if (doc.kind != "hyp" && doc.kind != "surf") malformed("kind must be 'hyp' or 'surf'");
  if (!j.contains("n") || !j["n"].is_number_integer()) malformed("missing integer field 'n'");
  doc.n = j["n"].get<int>();
  if (j.contains("sign")) {
    if (!j["sign"].is_number_integer()) malformed("'sign' must be 1 or -1");
    doc.sign = j["sign"].get<int>();
    if (doc.sign != 1 && doc.sign != -1) malformed("'sign' must be 1 or -1");
  }
  if (doc.kind == "hyp") {
    if (!j.contains("centers") || !j["centers"].is_array()) malformed("hyp documents need 'centers'");
    for (const auto& c : j["centers"]) doc.centers.push_back(complex_from(c, "centre"));
    if (static_cast<int>(doc.centers.size()) != doc.n) malformed("'centers' has a length other than n");
  } else {
    if (!j.contains("generators") || !j["generators"].is_array()) malformed("surf documents need 'generators'");
    for (const auto& g : j["generators"]) {
      if (!g.is_array() || g.size() != 2 || !g[0].is_array() || g[0].size() != 2 || !g[1].is_array() ||
          g[1].size() != 2) {
        malformed("generators must be 2x2 arrays of [re, im]");
      }
      doc.generators.emplace_back(complex_from(g[0][0], "entry"), complex_from(g[0][1], "entry"),
                                  complex_from(g[1][0], "entry"), complex_from(g[1][1], "entry"));
    }
    if (static_cast<int>(doc.generators.size()) != doc.n) malformed("'generators' has a length other than n");
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) malformed("'metadata' must be an object");
    doc.metadata = j["metadata"];
  }
  return doc;
}

json document_to_json(const RepDocument& doc) {
  json j;
  j["schema"] = doc.schema;
  j["kind"] = doc.kind;
  j["n"] = doc.n;
  j["sign"] = doc.sign;
  if (doc.kind == "hyp") {
    j["centers"] = json::array();
    for (const auto& c : doc.centers) j["centers"].push_back(complex_json(c));
  } else {
    j["generators"] = json::array();
    for (const auto& g : doc.generators) j["generators"].push_back(matrix_json(g));
  }
  j["metadata"] = doc.metadata;
  return j;
}

RepDocument read_document(const std::string& text) { return document_from_json(parse_json(text)); }

std::string write_document(const RepDocument& doc) { return emit_json(document_to_json(doc)) + "\n"; }

RepDocument make_document(const HypRep& rep, json metadata) {
  RepDocument doc;
  doc.kind = "hyp";
  doc.n = rep.n();
  doc.sign = rep.sign();
  for (const auto& c : rep.centers()) doc.centers.push_back(c.z());
  doc.metadata = std::move(metadata);
  return doc;
}

RepDocument make_document(const SurfRep& rep, json metadata) {
  RepDocument doc;
  doc.kind = "surf";
  doc.n = rep.n();
  doc.sign = rep.relations()[0].trace().real() >= 0 ? 1 : -1;
  doc.generators = rep.gens();
  doc.metadata = std::move(metadata);
  return doc;
}

std::variant<HypRep, SurfRep> load_rep(const RepDocument& doc, double tol) {
  if (doc.kind == "hyp") {
    std::vector<ProjPoint> centers;
    for (const auto& z : doc.centers) {
      if (std::norm(z) >= 1.0) {
        throw Error(ErrorKind::NonNegativePoint, "centre " + std::to_string(centers.size() + 1) + " is not inside the disc");
      }
      centers.push_back(ProjPoint::disc(z));
    }
    HypRep rep = validate(std::move(centers), tol);
    if (rep.sign() != doc.sign) {
      throw Error(ErrorKind::Inconsistent, "document sign disagrees with the evaluated relation");
    }
    return rep;
  }
  return validate_relations(doc.generators, tol);
}

json point_json(const ProjPoint& p) { return complex_json(p.z()); }

json points_json(const std::vector<ProjPoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(point_json(p));
  return out;
}

json matrix_json(const Isometry& m) {
  return json::array({json::array({complex_json(m.a()), complex_json(m.b())}),
                      json::array({complex_json(m.c()), complex_json(m.d())})});
}

}  // namespace toledo
