// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mathqa/kg.hpp"

namespace mathqa {

struct GraphQualifier {
  std::string property;
  std::string value;
};

struct GraphStatement {
  std::string property;
  std::string value;
  std::vector<GraphQualifier> qualifiers;
};

struct GraphItem {
  std::string qid;
  std::string label;
  std::optional<std::string> formula;
  std::optional<double> numeric_value;
  std::vector<QuantitySymbol> symbols;
  std::vector<GraphStatement> statements;
};

/// Evaluates the query shapes of the client against a small item graph kept
/// in memory. Used to author and re-record fixtures without network access.
class GraphEndpoint : public Endpoint {
 public:
  explicit GraphEndpoint(std::vector<GraphItem> items);
  static GraphEndpoint load(const std::filesystem::path& graph_json);
  static GraphEndpoint parse(std::string_view graph_json);

  SparqlResult run(const SparqlQuery& query) override;
  std::string describe() const override { return "graph of " + std::to_string(items_.size()) + " items"; }

  const std::vector<GraphItem>& items() const { return items_; }
  const GraphItem* find(const std::string& qid) const;

 private:
  std::string label_of(const std::string& value) const;
  std::optional<double> numeric_of(const std::string& value) const;

  std::vector<GraphItem> items_;
  std::map<std::string, std::size_t> by_qid_;
};

}  // namespace mathqa
