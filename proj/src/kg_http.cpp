// SPDX-License-Identifier: Apache-2.0
#include "httplib.h"
#include "mathqa/kg.hpp"

namespace mathqa {

HttpEndpoint::HttpEndpoint(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  if (url_.rfind("http://", 0) != 0 && url_.rfind("https://", 0) != 0) {
    throw ConfigError("endpoint URL must start with http:// or https://, got '" + url_ + "'");
  }
}

SparqlResult HttpEndpoint::run(const SparqlQuery& query) {
  const auto scheme_end = url_.find("://") + 3;
  const auto path_start = url_.find('/', scheme_end);
  const std::string base = url_.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

  httplib::Client client(base);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const httplib::Headers headers{{"Accept", "application/sparql-results+json"}, {"User-Agent", "mathqa/1.0"}};
  const httplib::Params params{{"query", query.text}, {"format", "json"}};
  auto res = client.Post(path, headers, params);
  if (!res) throw TransportError("request to " + url_ + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw TransportError("endpoint " + url_ + " answered HTTP " + std::to_string(res->status));
  }
  try {
    return parse_sparql_json(res->body);
  } catch (const ParseError& e) {
    throw TransportError(std::string("unreadable endpoint response: ") + e.what());
  }
}

}  // namespace mathqa
