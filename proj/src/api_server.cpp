// SPDX-License-Identifier: Apache-2.0
#include "httplib.h"
#include "mathqa/api.hpp"

namespace mathqa {

struct ApiServer::Impl {
  const QaService& service;
  httplib::Server server;

  explicit Impl(const QaService& s) : service(s) {}
};

ApiServer::ApiServer(const QaService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = handle_api(impl_->service, req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  impl_->server.Get("/api/.*", forward);
  impl_->server.Post("/api/.*", forward);
  if (static_dir && !impl_->server.set_mount_point("/", static_dir->string())) {
    throw ConfigError("static directory " + static_dir->string() + " does not exist");
  }
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void ApiServer::serve() { impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace mathqa
