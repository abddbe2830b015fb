// SPDX-License-Identifier: Apache-2.0
#include "mathqa/question.hpp"

#include <algorithm>
#include <array>

#include "mathqa/catalog.hpp"
#include "mathqa/corpus.hpp"
#include "mathqa/utf8.hpp"

namespace mathqa {
namespace detail {
extern const char* const kGeometryProperties;
}  // namespace detail

namespace {

using Words = std::vector<std::string>;

Words split_words(std::string_view s) {
  Words out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string join(const Words& w, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to && i < w.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += w[i];
  }
  return out;
}

bool one_of(std::string_view w, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

bool is_article(std::string_view w) { return one_of(w, {"the", "a", "an"}); }

bool is_formula_word(std::string_view w) {
  return one_of(w, {"formula", "formulas", "formulae", "equation", "equations", "expression", "definition"});
}

// Two-letter words that are never read as symbols.
bool is_short_function_word(std::string_view w) {
  return one_of(w, {"an", "of", "to", "in", "on", "is", "by", "or", "at", "as", "be", "it", "if", "we", "us", "so",
                    "no", "do", "up"});
}

// Trims stopwords off both ends of a multi-word phrase.
std::string strip_edges(const Words& words) {
  if (words.size() <= 1) return join(words, 0, words.size());
  const Stopwords& stop = Stopwords::english();
  std::size_t from = 0;
  std::size_t to = words.size();
  while (from < to && stop.contains(words[from])) ++from;
  while (to > from && stop.contains(words[to - 1])) --to;
  if (from == to) return join(words, 0, words.size());
  return join(words, from, to);
}

struct Frame {
  Words lower;
  std::size_t body = 0;  // index of the first word after the frame and any article
  bool calculate = false;
};

std::optional<Frame> match_frame(const Words& lower) {
  static const std::array<std::pair<std::array<std::string_view, 4>, bool>, 12> frames = {{
      {{"what", "is"}, false},
      {{"what's"}, false},
      {{"whats"}, false},
      {{"what", "are"}, false},
      {{"give", "me"}, false},
      {{"tell", "me"}, false},
      {{"show", "me"}, false},
      {{"how", "to", "calculate"}, true},
      {{"how", "do", "i", "calculate"}, true},
      {{"how", "do", "you", "calculate"}, true},
      {{"how", "can", "i", "calculate"}, true},
      {{"calculate"}, true},
  }};
  for (const auto& [words, calculate] : frames) {
    std::size_t n = 0;
    while (n < words.size() && !words[n].empty()) ++n;
    if (lower.size() < n) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = lower[i] == words[i];
    if (!ok) continue;
    Frame f;
    f.lower = lower;
    f.body = n;
    f.calculate = calculate;
    while (f.body < lower.size() && is_article(lower[f.body])) ++f.body;
    return f;
  }
  return std::nullopt;
}

struct ParsedTriple {
  Triple triple;
  std::string phrase;  // predicate, connector and complement as written
};

ParsedTriple triple_of(std::string_view text) {
  const std::string norm = utf8::to_lower(normalize_question(text));
  const Words lower = split_words(norm);
  const auto frame = match_frame(lower);
  if (!frame) throw UnrecognizedQuestion("no question frame matches: '" + std::string(text) + "'");
  const Words& w = frame->lower;
  std::size_t connector = w.size();
  for (std::size_t i = frame->body + 1; i < w.size(); ++i) {
    if (w[i] == "of" || w[i] == "for") {
      connector = i;
      break;
    }
  }
  ParsedTriple out;
  if (connector == w.size()) {
    if (!frame->calculate) {
      Triple partial;
      partial.predicate = join(w, frame->body, w.size());
      throw UnrecognizedQuestion("no 'of'/'for' complement in '" + std::string(text) + "'", partial);
    }
    out.triple.predicate = "formula";
    out.triple.subject = strip_edges(Words(w.begin() + static_cast<std::ptrdiff_t>(frame->body), w.end()));
    out.phrase = out.triple.subject;
  } else {
    out.triple.predicate = join(w, frame->body, connector);
    std::size_t subject_start = connector + 1;
    while (subject_start < w.size() && is_article(w[subject_start])) ++subject_start;
    out.triple.subject = strip_edges(Words(w.begin() + static_cast<std::ptrdiff_t>(subject_start), w.end()));
    out.phrase = strip_edges(Words(w.begin() + static_cast<std::ptrdiff_t>(frame->body), w.end()));
  }
  if (out.triple.subject.empty() || out.triple.predicate.empty()) {
    throw UnrecognizedQuestion("incomplete triple in '" + std::string(text) + "'", out.triple);
  }
  return out;
}

std::optional<QuestionIntent> relationship(const std::string& norm) {
  const Words words = split_words(norm);
  Words lower;
  for (const auto& w : words) lower.push_back(utf8::to_lower(w));
  const bool keyword = std::any_of(lower.begin(), lower.end(), [](const std::string& w) {
    return one_of(w, {"relationship", "relationships", "relation", "relations"});
  });
  if (!keyword) return std::nullopt;
  const auto between = std::find(lower.begin(), lower.end(), "between");
  if (between == lower.end()) {
    throw UnrecognizedQuestion("relationship question without a 'between' clause: '" + norm + "'");
  }
  std::vector<Words> groups(1);
  for (std::size_t i = static_cast<std::size_t>(between - lower.begin()) + 1; i < words.size(); ++i) {
    std::string w = words[i];
    bool boundary_after = false;
    while (!w.empty() && (w.back() == ',' || w.back() == ';')) {
      w.pop_back();
      boundary_after = true;
    }
    if (utf8::to_lower(w) == "and") {
      groups.emplace_back();
    } else if (!w.empty()) {
      groups.back().push_back(w);
    }
    if (boundary_after) groups.emplace_back();
  }
  std::vector<Words> operands;
  for (auto& g : groups) {
    std::size_t from = 0;
    while (from + 1 < g.size() && one_of(utf8::to_lower(g[from]), {"the", "a", "an", "symbol", "symbols", "identifier",
                                                               "identifiers", "name", "names", "variable", "variables",
                                                               "quantity", "quantities"})) {
      ++from;
    }
    if (from < g.size()) operands.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(from), g.end());
  }
  if (operands.size() < 2) {
    throw UnrecognizedQuestion("a relationship needs at least two operands: '" + norm + "'");
  }
  const bool symbol_keyword = std::any_of(lower.begin(), lower.end(),
                                          [](const std::string& w) { return w == "symbol" || w == "symbols"; });
  const bool all_short = std::all_of(operands.begin(), operands.end(), [](const Words& op) {
    if (op.size() != 1) return false;
    if (op[0].find_first_of("_\\^") != std::string::npos) return true;
    const std::size_t len = utf8::length(op[0]);
    if (len == 1) return true;
    return len == 2 && !is_short_function_word(utf8::to_lower(op[0]));
  });
  QuestionIntent intent;
  intent.kind = symbol_keyword || all_short ? IntentKind::RelationshipSymbols : IntentKind::RelationshipNames;
  for (const auto& op : operands) {
    if (intent.kind == IntentKind::RelationshipSymbols) {
      intent.operands.push_back(join(op, 0, op.size()));
    } else {
      Words lowered;
      for (const auto& w : op) lowered.push_back(utf8::to_lower(w));
      intent.operands.push_back(strip_edges(lowered));
    }
  }
  return intent;
}

}  // namespace

std::string_view to_string(IntentKind k) {
  switch (k) {
    case IntentKind::FormulaName:
      return "formula_name";
    case IntentKind::Geometry:
      return "geometry";
    case IntentKind::RelationshipNames:
      return "relationship_names";
    case IntentKind::RelationshipSymbols:
      return "relationship_symbols";
  }
  return "formula_name";
}

GeometryPropertyList::GeometryPropertyList(std::set<std::string> properties) : properties_(std::move(properties)) {
  if (properties_.empty()) throw ValidationError("geometry property list is empty");
}

GeometryPropertyList GeometryPropertyList::parse(std::string_view text) {
  std::set<std::string> props;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = utf8::trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') props.insert(utf8::to_lower(line));
    start = end + 1;
  }
  return GeometryPropertyList(std::move(props));
}

const GeometryPropertyList& GeometryPropertyList::standard() {
  static const GeometryPropertyList list = parse(detail::kGeometryProperties);
  return list;
}

GeometryPropertyList GeometryPropertyList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

bool GeometryPropertyList::contains(std::string_view property) const {
  return properties_.count(std::string(property)) != 0;
}

std::string normalize_question(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  while (!out.empty() && (out.back() == '?' || out.back() == '.' || out.back() == '!' || out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

Triple to_triple(std::string_view text) { return triple_of(text).triple; }

QuestionIntent parse_question(std::string_view text, const GeometryPropertyList& geo) {
  const std::string norm = normalize_question(text);
  if (norm.empty()) throw UnrecognizedQuestion("empty question");
  if (auto rel = relationship(norm)) return *rel;
  const ParsedTriple parsed = triple_of(norm);
  QuestionIntent intent;
  intent.triple = parsed.triple;
  if (geo.contains(parsed.triple.predicate)) {
    intent.kind = IntentKind::Geometry;
    intent.object = parsed.triple.subject;
    intent.property = parsed.triple.predicate;
  } else if (is_formula_word(parsed.triple.predicate)) {
    intent.kind = IntentKind::FormulaName;
    intent.concept_name = parsed.triple.subject;
  } else {
    intent.kind = IntentKind::FormulaName;
    intent.concept_name = parsed.phrase;
  }
  return intent;
}

}  // namespace mathqa
