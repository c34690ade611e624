#pragma once

// JSON persistence of representations.
//
// {"schema": 1, "kind": "hyp", "n": 6, "sign": 1,
//  "centers": [[re, im], ...], "metadata": {...}}
// {"schema": 1, "kind": "surf", "n": 6, "sign": 1,
//  "generators": [[[re, im], [re, im]], [[re, im], [re, im]]], ...], ...}
//
// For surface documents `sign` is the sign of g_n ... g_1 as evaluated.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "toledo/surface.hpp"

namespace toledo {

inline constexpr int kSchemaVersion = 1;

struct RepDocument {
  int schema = kSchemaVersion;
  std::string kind = "hyp";  // "hyp" or "surf"
  int n = 0;
  int sign = 1;
  std::vector<cplx> centers;
  std::vector<Isometry> generators;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Serializes with every double rendered by %.17g.
std::string emit_json(const nlohmann::json& value, int indent = 2);

/// Parses JSON text; syntax errors raise MalformedDocument naming line and
/// column.
nlohmann::json parse_json(const std::string& text);

RepDocument document_from_json(const nlohmann::json& j);
nlohmann::json document_to_json(const RepDocument& doc);

RepDocument read_document(const std::string& text);
std::string write_document(const RepDocument& doc);

RepDocument make_document(const HypRep& rep, nlohmann::json metadata = nlohmann::json::object());
RepDocument make_document(const SurfRep& rep, nlohmann::json metadata = nlohmann::json::object());

/// Validated representation held by a document.
std::variant<HypRep, SurfRep> load_rep(const RepDocument& doc, double tol = kRelationTolerance);

nlohmann::json point_json(const ProjPoint& p);
nlohmann::json points_json(const std::vector<ProjPoint>& pts);
nlohmann::json matrix_json(const Isometry& m);

}  // namespace toledo
