#pragma once

// Stateless JSON-over-HTTP front end. Every endpoint takes a JSON body and
// answers with the resulting document (where there is one) together with a
// summary: verdict, area, the discreteness cycle and the polygon vertices.

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "toledo/document.hpp"

namespace httplib {
class Server;
}

namespace toledo {

/// Relation tolerance, overridden by the TOLEDO_EPS environment variable.
double relation_tolerance_from_env();

using AnyRep = std::variant<HypRep, SurfRep>;

/// verdict, area, area_over_pi, orientation, i_cycle, polygon (null unless
/// discrete).
nlohmann::json summarize(const AnyRep& rep, std::optional<int> i = {});

nlohmann::json polygon_json(const AnyRep& rep);

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

/// Dispatches a POST body to the endpoint at `path` ("/api/check", ...).
ServiceResponse handle_request(const std::string& path, const std::string& body);

/// Registers the endpoints on a server.
void install_routes(httplib::Server& server);

/// Blocks serving on host:port.
void serve(const std::string& host, int port);

}  // namespace toledo
