// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mathqa/errors.hpp"

namespace mathqa {

struct Triple {
  std::string subject;
  std::string predicate;
  std::optional<std::string> object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class IntentKind { FormulaName, Geometry, RelationshipNames, RelationshipSymbols };

std::string_view to_string(IntentKind k);

struct QuestionIntent {
  IntentKind kind = IntentKind::FormulaName;
  std::string concept_name;           // FormulaName
  std::string object;                 // Geometry
  std::string property;               // Geometry
  std::vector<std::string> operands;  // relationship variants, in written order
  std::string language = "en";
  std::optional<Triple> triple;

  friend bool operator==(const QuestionIntent&, const QuestionIntent&) = default;
};

class UnrecognizedQuestion : public Error {
 public:
  explicit UnrecognizedQuestion(const std::string& what, std::optional<Triple> partial = std::nullopt)
      : Error(what), partial_(std::move(partial)) {}

  const std::optional<Triple>& partial() const noexcept { return partial_; }

 private:
  std::optional<Triple> partial_;
};

class GeometryPropertyList {
 public:
  explicit GeometryPropertyList(std::set<std::string> properties);

  /// The versioned list shipped with the library.
  static const GeometryPropertyList& standard();
  static GeometryPropertyList load(const std::filesystem::path& path);
  static GeometryPropertyList parse(std::string_view text);

  bool contains(std::string_view property) const;
  const std::set<std::string>& properties() const { return properties_; }

 private:
  std::set<std::string> properties_;
};

/// Collapses whitespace and strips trailing punctuation. Case is kept since
/// symbol operands are case-sensitive.
std::string normalize_question(std::string_view text);

/// (subject, predicate, ?) of a "what is the X of/for Y" style question.
Triple to_triple(std::string_view text);

QuestionIntent parse_question(std::string_view text,
                              const GeometryPropertyList& geo = GeometryPropertyList::standard());

}  // namespace mathqa
