// vistalk: narrate scenes, query their relations, and parse sentences.
//
//   vistalk narrate   <bundle> [--out FILE] [--json] [--tense T] [--config FILE]
//   vistalk relations <bundle> [--fluent PATTERN] [--relation R] [--at T | T1,T2] [--config FILE]
//   vistalk parse     [bundle] --sentence TEXT [--lexicon FILE]... [--grammar FILE]
//
// Exit status: 0 success, 1 domain failure, 2 usage or input validation.
// VISTALK_LOG_LEVEL sets the log level (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "vistalk/vistalk.hpp"

namespace {

using namespace vistalk;
namespace fs = std::filesystem;

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::invalid_input:
    case ErrorCode::family_mismatch:
    case ErrorCode::arity_mismatch:
    case ErrorCode::invalid_geometry:
    case ErrorCode::invalid_track:
      return exit_usage;
    default:
      return exit_domain;
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("vistalk");
  logger->set_pattern("vistalk: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("VISTALK_LOG_LEVEL")) spdlog::set_level(spdlog::level::from_str(lvl));
}

std::optional<fs::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

Span parse_at(const std::string& text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return Span(TimePoint::from_seconds(std::stod(text)));
    return Span::from_bounds(TimePoint::from_seconds(std::stod(text.substr(0, comma))),
                             TimePoint::from_seconds(std::stod(text.substr(comma + 1))));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_input, "--at expects seconds or 'start,end', got '" + text + "'");
  }
}

struct NarrateOptions {
  std::string bundle;
  std::string out;
  std::string config;
  std::string tense = "simple_present";
  bool json = false;
};

int run_narrate(const NarrateOptions& opt) {
  const auto tense = nlg::parse_tense(opt.tense);
  if (!tense) throw Error(ErrorCode::invalid_input, "unknown tense '" + opt.tense + "'");
  io::SceneBundle b = io::load_bundle(opt.bundle, optional_path(opt.config));
  if (!b.grammar) throw Error(ErrorCode::invalid_input, opt.bundle + ": scene has no grammar file");
  if (!b.has_vocabulary) throw Error(ErrorCode::invalid_input, opt.bundle + ": scene has no vocabulary file");
  spdlog::info("loaded {} tracks, {} regions", b.scene.tracks().size(), b.scene.regions().size());

  const NarrativeStore store = narrate_scene(b.scene, b.config, b.route_graph ? &*b.route_graph : nullptr);
  spdlog::info("{} holdings, {} occurrences", store.holding_count(), store.occurrences().size());
  const nlg::Summary summary = nlg::summarize(store, b.vocabulary, b.lexicon, *b.grammar, *tense);
  for (const auto& e : summary.errors) spdlog::warn("{}", e);

  std::string output;
  if (opt.json) {
    nlohmann::json sentences = nlohmann::json::array();
    for (const auto& s : summary.sentences) sentences.push_back(nlg::to_json(s));
    nlohmann::json doc{{"narrative", io::store_to_json(store)},
                       {"tense", nlg::to_string(*tense)},
                       {"summary", sentences},
                       {"errors", summary.errors}};
    output = doc.dump(2) + "\n";
  } else {
    output = summary.text();
  }
  if (opt.out.empty())
    std::cout << output;
  else
    io::write_atomically(opt.out, output);
  return summary.errors.empty() ? exit_ok : exit_domain;
}

struct RelationsOptions {
  std::string bundle;
  std::string config;
  std::string fluent;
  std::string relation;
  std::string at;
};

int run_relations(const RelationsOptions& opt) {
  const FluentPattern pattern = opt.fluent.empty() ? FluentPattern{} : parse_fluent_pattern(opt.fluent);
  const std::optional<Span> at = opt.at.empty() ? std::nullopt : std::optional<Span>(parse_at(opt.at));
  io::SceneBundle b = io::load_bundle(opt.bundle, optional_path(opt.config));
  const NarrativeStore store = narrate_scene(b.scene, b.config, b.route_graph ? &*b.route_graph : nullptr);
  const auto relation = opt.relation.empty() ? std::nullopt : std::optional<std::string>(opt.relation);
  for (const Holding& h : store.query(pattern, relation, at)) std::cout << h.to_string() << "\n";
  if (opt.fluent.empty() && opt.relation.empty() && opt.at.empty())
    for (const auto& o : store.occurrences()) std::cout << "occurs " << o.id() << " " << o.span.to_string() << "\n";
  return exit_ok;
}

struct ParseOptions {
  std::string bundle;
  std::string sentence;
  bool sentence_given = false;
  std::vector<std::string> lexicons;
  std::string grammar;
  std::string possessive = "plain";
};

int run_parse(const ParseOptions& opt) {
  if (!opt.sentence_given) throw Error(ErrorCode::invalid_input, "--sentence is required");
  const auto style = opt.possessive == "apostrophe" ? nlg::PossessiveStyle::apostrophe : nlg::PossessiveStyle::plain;
  std::optional<io::SceneBundle> bundle;
  if (!opt.bundle.empty()) bundle = io::load_bundle(opt.bundle);

  nlg::Lexicon lexicon = opt.lexicons.empty() && bundle ? bundle->lexicon : io::load_lexicons(opt.lexicons, style);
  std::optional<nlg::Grammar> grammar;
  if (!opt.grammar.empty()) grammar = nlg::load_grammar_file(opt.grammar);
  else if (bundle) grammar = bundle->grammar;
  if (!grammar) throw Error(ErrorCode::invalid_input, "no grammar: pass --grammar or a bundle");
  if (lexicon.size() == 0) throw Error(ErrorCode::invalid_input, "no lexicon: pass --lexicon or a bundle");

  const auto trees = nlg::parse(opt.sentence, *grammar, lexicon);
  nlohmann::json all = nlohmann::json::array();
  for (std::size_t i = 0; i < trees.size(); ++i) {
    std::cout << "# parse " << (i + 1) << "\n" << trees[i].indented();
    all.push_back(nlg::to_json(trees[i]));
  }
  std::cout << all.dump() << "\n";
  std::cout << "parses: " << trees.size() << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Ground scene tracks in qualitative relations and describe them in English."};
  app.require_subcommand(1);

  NarrateOptions narrate;
  auto* cmd_narrate = app.add_subcommand("narrate", "Build the narrative for a scene bundle and print its summary");
  cmd_narrate->add_option("bundle", narrate.bundle, "Bundle directory or scene.json")->required();
  cmd_narrate->add_option("--out", narrate.out, "Write output to this file instead of stdout");
  cmd_narrate->add_flag("--json", narrate.json, "Emit narrative, sentences and syntax trees as JSON");
  cmd_narrate->add_option("--tense", narrate.tense,
                          "simple_present, simple_past, simple_future, present_continuous, past_continuous, "
                          "future_continuous (or present, past, future)");
  cmd_narrate->add_option("--config", narrate.config, "Scene configuration to use instead of the bundle's scene.json");

  RelationsOptions relations;
  auto* cmd_relations = app.add_subcommand("relations", "Print holdings that match a query");
  cmd_relations->add_option("bundle", relations.bundle, "Bundle directory or scene.json")->required();
  cmd_relations->add_option("--fluent", relations.fluent, "Fluent pattern, e.g. topology(irene_face,_)");
  cmd_relations->add_option("--relation", relations.relation, "Relation symbol, e.g. ntpp");
  cmd_relations->add_option("--at", relations.at, "Time in seconds, or 'start,end'");
  cmd_relations->add_option("--config", relations.config, "Scene configuration to use instead of the bundle's scene.json");

  ParseOptions parse;
  auto* cmd_parse = app.add_subcommand("parse", "Parse a sentence into syntax trees");
  cmd_parse->add_option("bundle", parse.bundle, "Bundle whose lexicon and grammar to use");
  auto* sentence_opt = cmd_parse->add_option("--sentence", parse.sentence, "Sentence to parse");
  cmd_parse->add_option("--lexicon", parse.lexicons, "Lexicon file (repeatable)");
  cmd_parse->add_option("--grammar", parse.grammar, "Grammar file");
  cmd_parse->add_option("--possessive", parse.possessive, "plain or apostrophe")
      ->check(CLI::IsMember({"plain", "apostrophe"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*cmd_narrate) return run_narrate(narrate);
    if (*cmd_relations) return run_relations(relations);
    parse.sentence_given = sentence_opt->count() > 0;
    return run_parse(parse);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return exit_domain;
  }
}
