// SPDX-License-Identifier: Apache-2.0
#include <csignal>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mathqa/api.hpp"
#include "mathqa/catalog.hpp"
#include "mathqa/eval.hpp"
#include "mathqa/graph_endpoint.hpp"
#include "mathqa/recorder.hpp"
#include "mathqa/retrieval.hpp"
#include "mathqa/service.hpp"
#include "mathqa/utf8.hpp"

namespace fs = std::filesystem;
using namespace mathqa;

namespace {

ApiServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void print_ranked(const RankedList& list) {
  for (const auto& r : list.results) std::cout << r.rank << "\t" << r.value << "\t" << r.score << "\n";
}

struct SourceOptions {
  std::vector<std::string> indexes;
  std::string arxiv_index;
  std::string wiki_index;
  std::string kg_fixtures;
  std::string cache_dir;
  std::string endpoint;
  bool offline = false;
  int timeout_ms = 30000;

  void add_to(CLI::App* app) {
    app->add_option("--index", indexes, "Index directory; its catalogs name the source")->check(CLI::ExistingDirectory);
    app->add_option("--arxiv-index", arxiv_index, "arXiv index directory")->check(CLI::ExistingDirectory);
    app->add_option("--wiki-index", wiki_index, "Wikipedia index directory")->check(CLI::ExistingDirectory);
    app->add_option("--kg-fixtures", kg_fixtures, "Recorded knowledge-graph responses")->check(CLI::ExistingDirectory);
    app->add_option("--cache-dir", cache_dir, "Knowledge-graph query cache directory");
    app->add_option("--endpoint", endpoint, "SPARQL endpoint URL");
    app->add_flag("--offline", offline, "Never contact the SPARQL endpoint");
    app->add_option("--timeout-ms", timeout_ms, "Endpoint request timeout")->check(CLI::PositiveNumber);
  }

  ServiceConfig config() const {
    ServiceConfig c = ServiceConfig::from_env();
    for (const auto& dir : indexes) {
      const Source s = load_catalog(fs::path(dir) / "symbol_to_name.tsv").source();
      if (s == Source::Arxiv) {
        c.arxiv_index = dir;
      } else {
        c.wiki_index = dir;
      }
    }
    if (!arxiv_index.empty()) c.arxiv_index = arxiv_index;
    if (!wiki_index.empty()) c.wiki_index = wiki_index;
    if (!kg_fixtures.empty()) c.kg_fixtures = kg_fixtures;
    if (!cache_dir.empty()) c.cache_dir = cache_dir;
    if (!endpoint.empty()) c.endpoint_url = endpoint;
    if (offline) c.offline = true;
    c.endpoint_timeout = std::chrono::milliseconds(timeout_ms);
    return c;
  }
};

std::pair<std::string, double> parse_binding(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ValidationError("binding '" + text + "' is not symbol=value");
  try {
    std::size_t used = 0;
    const std::string value = text.substr(eq + 1);
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {text.substr(0, eq), v};
  } catch (const std::logic_error&) {
    throw ValidationError("binding '" + text + "' has no numeric value");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mathematical question answering over formula indices and a knowledge graph"};
  app.require_subcommand(1);

  auto* index_cmd = app.add_subcommand("index", "Build catalogs from a corpus");
  index_cmd->require_subcommand(1);
  auto* build_cmd = index_cmd->add_subcommand("build", "Build the three catalogs and the formula inventory");
  std::string corpus_dir, source_name = "arxiv", out_dir, stopwords_file;
  std::size_t radius = kDefaultRadius;
  std::vector<std::string> subjects;
  build_cmd->add_option("--corpus", corpus_dir, "Corpus root directory")->required()->check(CLI::ExistingDirectory);
  build_cmd->add_option("--source", source_name, "arxiv or wikipedia");
  build_cmd->add_option("--out", out_dir, "Output index directory")->required();
  build_cmd->add_option("--radius", radius, "Context window radius in characters")->check(CLI::PositiveNumber);
  build_cmd->add_option("--subject,--subjects", subjects, "Only documents of these subject classes")
      ->delimiter(',');
  build_cmd->add_option("--stopwords", stopwords_file, "Stopword list (one per line)")->check(CLI::ExistingFile);

  auto* search_cmd = app.add_subcommand("search", "Query an index");
  std::string search_index, search_kind;
  std::vector<std::string> search_terms;
  std::size_t top_k = kDefaultTopK;
  search_cmd->add_option("--index", search_index, "Index directory")->required()->check(CLI::ExistingDirectory);
  search_cmd->add_option("--kind,--mode", search_kind, "names-to-symbols, symbols-to-names, rel-names, rel-symbols or concept")
      ->required()
      ->transform(CLI::Transformer(std::map<std::string, std::string>{{"names2symbols", "names-to-symbols"},
                                                                      {"symbols2names", "symbols-to-names"}}))
      ->check(CLI::IsMember({"names-to-symbols", "symbols-to-names", "rel-names", "rel-symbols", "concept"}));
  search_cmd->add_option("-k,--k,--top", top_k, "Number of results")->check(CLI::PositiveNumber);
  std::string search_query;
  search_cmd->add_option("--query", search_query, "Query text, split on whitespace");
  search_cmd->add_option("terms", search_terms, "Query terms");

  auto* calc_cmd = app.add_subcommand("calc", "Evaluate a formula");
  std::string formula;
  std::vector<std::string> binds;
  calc_cmd->add_option("--formula", formula, "Formula in the LaTeX subset")->required();
  calc_cmd->add_option("--bind", binds, "symbol=value");

  auto* eval_cmd = app.add_subcommand("eval", "Run evaluation modes and write a report");
  std::string modes = "1-15", gold_file, eval_out;
  SourceOptions eval_sources;
  eval_cmd->add_option("--modes", modes, "Mode list, e.g. 1-15 or 3,6,9");
  eval_cmd->add_option("--gold", gold_file, "Gold benchmark file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval_out, "Report directory")->required();
  eval_sources.add_to(eval_cmd);

  auto* ask_cmd = app.add_subcommand("ask", "Answer one question");
  std::string question, lang = "en";
  SourceOptions ask_sources;
  ask_cmd->add_option("question", question, "Question text")->required();
  ask_cmd->add_option("--lang", lang, "Question language");
  ask_sources.add_to(ask_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  int port = -1;
  std::string host, static_dir;
  SourceOptions serve_sources;
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)");
  serve_cmd->add_option("--host", host, "Listen address");
  serve_cmd->add_option("--static", static_dir, "Directory of static web assets")->check(CLI::ExistingDirectory);
  serve_sources.add_to(serve_cmd);

  auto* kg_cmd = app.add_subcommand("kg", "Knowledge-graph fixtures");
  kg_cmd->require_subcommand(1);
  auto* record_cmd = kg_cmd->add_subcommand("record", "Record fixtures from an item graph");
  std::string graph_file, record_gold, record_out;
  record_cmd->add_option("--graph", graph_file, "Item graph JSON")->required()->check(CLI::ExistingFile);
  record_cmd->add_option("--gold", record_gold, "Gold benchmark file")->required()->check(CLI::ExistingFile);
  record_cmd->add_option("--out", record_out, "Fixture directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build_cmd->parsed()) {
      std::vector<std::string> warnings;
      const Source source = parse_source(source_name);
      const auto corpus = load_corpus(corpus_dir, source, &warnings);
      std::optional<Stopwords> custom;
      BuildOptions options;
      options.radius = radius;
      if (!subjects.empty()) options.subject_filter = subjects;
      if (!stopwords_file.empty()) {
        custom = Stopwords::load(stopwords_file);
        options.stopwords = &*custom;
      }
      const Index index = build_index(corpus, source, options, &warnings);
      save_index(index, out_dir);
      print_warnings(warnings);
      std::cout << "documents\t" << corpus.size() << "\n"
                << "symbol_to_name\t" << index.symbol_to_name.pair_count() << "\n"
                << "name_to_symbol\t" << index.name_to_symbol.pair_count() << "\n"
                << "term_to_formula\t" << index.term_to_formula.pair_count() << "\n"
                << "formulas\t" << index.formulas.formulas.size() << "\n";
      return 0;
    }
    if (search_cmd->parsed()) {
      if (!search_query.empty()) {
        const char sep = search_query.find(',') != std::string::npos ? ',' : ' ';
        std::istringstream in(search_query);
        for (std::string t; std::getline(in, t, sep);) {
          const std::string trimmed(utf8::trim(t));
          if (!trimmed.empty()) search_terms.push_back(trimmed);
        }
      }
      if (search_terms.empty()) throw ConfigError("search needs query terms or --query");
      std::string phrase;
      for (const auto& t : search_terms) phrase += (phrase.empty() ? "" : " ") + t;
      const Index index = load_index(search_index);
      if (search_kind == "names-to-symbols") {
        print_ranked(names_to_symbols(phrase, index.name_to_symbol, top_k));
      } else if (search_kind == "symbols-to-names") {
        print_ranked(symbols_to_names(phrase, index.symbol_to_name, top_k));
      } else if (search_kind == "concept") {
        print_ranked(formulas_by_concept(phrase, index.term_to_formula, top_k, &index.formulas));
      } else {
        const auto mode = search_kind == "rel-names" ? OperandMode::Names : OperandMode::Symbols;
        print_ranked(formulas_by_identifiers(search_terms, mode, index, top_k));
      }
      return 0;
    }
    if (calc_cmd->parsed()) {
      const FormulaExpression e = parse_formula(formula);
      Bindings b;
      for (const auto& text : binds) {
        const auto [sym, value] = parse_binding(text);
        b.set(sym, value);
      }
      const auto unknowns = list_unknowns(e, b);
      if (!unknowns.empty()) {
        std::cerr << "error: no value for";
        for (const auto& u : unknowns) std::cerr << " " << u;
        std::cerr << "\n";
        return 2;
      }
      std::cout << e.lhs_symbol() << " = " << evaluate(e, b) << "\n";
      return 0;
    }
    if (eval_cmd->parsed()) {
      const ServiceConfig c = eval_sources.config();
      const auto gold = load_gold_benchmark(gold_file);
      std::optional<Index> arxiv, wiki;
      std::unique_ptr<Endpoint> endpoint;
      std::unique_ptr<QueryCache> cache;
      std::unique_ptr<KgClient> kg;
      if (c.arxiv_index) arxiv = load_index(*c.arxiv_index);
      if (c.wiki_index) wiki = load_index(*c.wiki_index);
      if (c.endpoint_url && !c.offline) {
        endpoint = std::make_unique<HttpEndpoint>(*c.endpoint_url, c.endpoint_timeout);
      } else if (c.kg_fixtures) {
        endpoint = std::make_unique<FixtureEndpoint>(*c.kg_fixtures);
      }
      if (c.cache_dir) cache = std::make_unique<QueryCache>(*c.cache_dir);
      if (endpoint) kg = std::make_unique<KgClient>(*endpoint, cache.get());
      EvalSources sources;
      sources.arxiv = arxiv ? &*arxiv : nullptr;
      sources.wikipedia = wiki ? &*wiki : nullptr;
      sources.wikidata = kg.get();
      const auto results = run_modes(parse_mode_list(modes), gold, sources);
      emit_report(results, eval_out);
      std::cout << format_summary(results);
      return 0;
    }
    if (ask_cmd->parsed()) {
      const QaService service(ask_sources.config());
      const AnswerEnvelope env = service.answer_question(question, lang);
      std::cout << envelope_to_json(env);
      return env.outcome == Outcome::Answered ? 0 : 3;
    }
    if (serve_cmd->parsed()) {
      ServiceConfig c = serve_sources.config();
      if (port >= 0) c.port = port;
      if (!host.empty()) c.host = host;
      if (!static_dir.empty()) c.static_dir = static_dir;
      const QaService service(c);
      ApiServer server(service, c.static_dir);
      const int bound = server.bind(c.host, c.port);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << c.host << ":" << bound << std::endl;
      server.serve();
      g_server = nullptr;
      return 0;
    }
    if (record_cmd->parsed()) {
      GraphEndpoint graph = GraphEndpoint::load(graph_file);
      const auto gold = load_gold_benchmark(record_gold);
      const std::size_t n = record_fixtures(graph, gold, record_out);
      std::cout << "recorded " << n << " fixtures into " << record_out << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
