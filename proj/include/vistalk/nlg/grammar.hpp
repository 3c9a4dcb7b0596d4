// Context-free grammar with sentence templates, loaded from text.
//
//   start S
//   comma_before WHILE_CL PATH        # comma in front of these constituents
//   comma_after SUB_CL                # comma after these constituents
//   S -> CL | CL WHILE_CL
//   template containment compound = S -> CL WHILE_CL
//
// A symbol is a nonterminal when it appears on some left-hand side and a
// preterminal (lexical category) otherwise. `Cat.form` restricts a
// preterminal to one inflected form or form family ("V.pres" accepts
// "pres:sg" and "pres:pl").
#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vistalk/core.hpp"
#include "vistalk/nlg/lexicon.hpp"

namespace vistalk::nlg {

enum class SentenceClass { simple, compound, complex };

inline std::string_view to_string(SentenceClass c) {
  switch (c) {
    case SentenceClass::simple: return "simple";
    case SentenceClass::compound: return "compound";
    case SentenceClass::complex: return "complex";
  }
  return "simple";
}

inline std::optional<SentenceClass> parse_sentence_class(std::string_view s) {
  for (auto c : {SentenceClass::simple, SentenceClass::compound, SentenceClass::complex})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

struct GrammarSymbol {
  std::string name;
  std::string form;  // empty: any form

  std::string to_string() const { return form.empty() ? name : name + "." + form; }
  friend bool operator==(const GrammarSymbol&, const GrammarSymbol&) = default;
};

struct GrammarRule {
  std::string lhs;
  std::vector<GrammarSymbol> rhs;
  int line = 0;

  std::string to_string() const {
    std::string s = lhs + " ->";
    for (const auto& r : rhs) s += " " + r.to_string();
    return s;
  }
};

class Grammar {
 public:
  const std::string& start() const { return start_; }
  const std::vector<GrammarRule>& rules() const { return rules_; }

  bool is_nonterminal(const std::string& name) const { return by_lhs_.count(name) > 0; }

  const std::vector<std::size_t>& rules_for(const std::string& lhs) const {
    static const std::vector<std::size_t> none;
    auto it = by_lhs_.find(lhs);
    return it == by_lhs_.end() ? none : it->second;
  }

  bool comma_before(const std::string& sym) const { return comma_before_.count(sym) > 0; }
  bool comma_after(const std::string& sym) const { return comma_after_.count(sym) > 0; }

  /// Index of the top-level rule for an event kind and sentence class.
  std::optional<std::size_t> template_rule(const std::string& event_kind, SentenceClass cls) const {
    auto it = templates_.find({event_kind, cls});
    if (it == templates_.end()) return std::nullopt;
    return it->second;
  }

  friend Grammar load_grammar_text(std::string_view text, const std::string& source);

 private:
  void add_rule(GrammarRule r) {
    by_lhs_[r.lhs].push_back(rules_.size());
    rules_.push_back(std::move(r));
  }

  std::string start_;
  std::vector<GrammarRule> rules_;
  std::map<std::string, std::vector<std::size_t>> by_lhs_;
  std::set<std::string> comma_before_, comma_after_;
  std::map<std::pair<std::string, SentenceClass>, std::size_t> templates_;
};

namespace detail {
inline GrammarSymbol parse_symbol(const std::string& tok) {
  const auto dot = tok.find('.');
  if (dot == std::string::npos) return {tok, {}};
  return {tok.substr(0, dot), tok.substr(dot + 1)};
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}
}  // namespace detail

/// Parses grammar text. Rejects empty right-hand sides, cycles of unit
/// rules and templates that do not name an existing start rule, so the
/// parser always terminates.
inline Grammar load_grammar_text(std::string_view text, const std::string& source = "<grammar>") {
  Grammar g;
  struct PendingTemplate {
    std::string kind;
    SentenceClass cls;
    std::string rule;
    std::string where;
  };
  std::vector<PendingTemplate> pending;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto parse_rule_body = [](const std::string& lhs, const std::string& body, int line, const std::string& where) {
    std::vector<GrammarRule> out;
    for (const std::string& alt : detail::split(body, '|')) {
      GrammarRule r{lhs, {}, line};
      for (const auto& w : detail::words(alt)) r.rhs.push_back(detail::parse_symbol(w));
      if (r.rhs.empty()) throw Error(ErrorCode::invalid_input, where + ": empty right-hand side for " + lhs);
      out.push_back(std::move(r));
    }
    return out;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto w = detail::words(line);
    if (w[0] == "start") {
      if (w.size() != 2) throw Error(ErrorCode::invalid_input, where + ": expected 'start SYMBOL'");
      g.start_ = w[1];
    } else if (w[0] == "comma_before" || w[0] == "comma_after") {
      auto& set = w[0] == "comma_before" ? g.comma_before_ : g.comma_after_;
      set.insert(w.begin() + 1, w.end());
    } else if (w[0] == "template") {
      const auto eq = line.find('=');
      if (w.size() < 4 || eq == std::string::npos)
        throw Error(ErrorCode::invalid_input, where + ": expected 'template KIND CLASS = LHS -> RHS'");
      const auto cls = parse_sentence_class(w[2]);
      if (!cls) throw Error(ErrorCode::invalid_input, where + ": unknown sentence class '" + w[2] + "'");
      pending.push_back({w[1], *cls, detail::trim(line.substr(eq + 1)), where});
    } else {
      const auto arrow = line.find("->");
      if (arrow == std::string::npos) throw Error(ErrorCode::invalid_input, where + ": expected a rule 'LHS -> RHS'");
      const auto lhs_words = detail::words(line.substr(0, arrow));
      if (lhs_words.size() != 1) throw Error(ErrorCode::invalid_input, where + ": left-hand side must be one symbol");
      if (lhs_words[0].find('.') != std::string::npos)
        throw Error(ErrorCode::invalid_input, where + ": left-hand side cannot carry a form");
      for (auto& r : parse_rule_body(lhs_words[0], line.substr(arrow + 2), lineno, where)) g.add_rule(std::move(r));
    }
  }

  if (g.start_.empty()) throw Error(ErrorCode::invalid_input, source + ": missing 'start' directive");
  if (!g.is_nonterminal(g.start_)) throw Error(ErrorCode::invalid_input, source + ": start symbol has no rules");

  // Unit-rule cycles (A -> B, B -> A) would make the chart loop forever.
  std::map<std::string, std::vector<std::string>> unit;
  for (const auto& r : g.rules_)
    if (r.rhs.size() == 1 && r.rhs[0].form.empty() && g.is_nonterminal(r.rhs[0].name)) unit[r.lhs].push_back(r.rhs[0].name);
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& s) {
    state[s] = 1;
    for (const auto& n : unit[s]) {
      if (state[n] == 1) throw Error(ErrorCode::invalid_input, source + ": unit-rule cycle through " + s + " and " + n);
      if (state[n] == 0) visit(n);
    }
    state[s] = 2;
  };
  for (const auto& [lhs, _] : unit)
    if (state[lhs] == 0) visit(lhs);

  for (const auto& t : pending) {
    const auto arrow = t.rule.find("->");
    if (arrow == std::string::npos) throw Error(ErrorCode::invalid_input, t.where + ": template needs a rule");
    const std::string lhs = detail::trim(t.rule.substr(0, arrow));
    std::vector<GrammarSymbol> rhs;
    for (const auto& w : detail::words(t.rule.substr(arrow + 2))) rhs.push_back(detail::parse_symbol(w));
    if (lhs != g.start_) throw Error(ErrorCode::invalid_input, t.where + ": template rule must expand the start symbol");
    std::optional<std::size_t> found;
    for (std::size_t idx : g.rules_for(lhs))
      if (g.rules_[idx].rhs == rhs) found = idx;
    if (!found) throw Error(ErrorCode::invalid_input, t.where + ": template names no existing rule '" + t.rule + "'");
    g.templates_[{t.kind, t.cls}] = *found;
  }
  return g;
}

inline Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open grammar file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_grammar_text(buf.str(), path);
}

}  // namespace vistalk::nlg
