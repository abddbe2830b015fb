// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "mathqa/service.hpp"

namespace mathqa {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

std::string envelope_to_json(const AnswerEnvelope& envelope);
std::string calculation_to_json(const CalculationResult& result);
std::string health_to_json(const QaService::SourceInventory& inventory);

/// Throws ValidationError on a malformed body.
CalculationRequest parse_calculation_request(std::string_view body);

/// Dispatches POST /api/question, POST /api/calculate and GET /api/health.
ApiResponse handle_api(const QaService& service, std::string_view method, std::string_view path, std::string_view body);

/// Serves the API (and static files when a directory is given) until stop() is called.
class ApiServer {
 public:
  explicit ApiServer(const QaService& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds and returns the port; 0 picks a free one.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mathqa
