// Syntax trees, linearisation and the chart parser.
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "vistalk/core.hpp"
#include "vistalk/nlg/grammar.hpp"
#include "vistalk/nlg/lexicon.hpp"

namespace vistalk::nlg {

/// A constituent: either an internal node with children or a preterminal
/// node carrying one lexical leaf.
struct SyntaxTree {
  std::string label;
  std::vector<SyntaxTree> children;
  std::optional<Leaf> leaf;

  bool is_leaf() const { return leaf.has_value(); }

  void collect_leaves(std::vector<const Leaf*>& out) const {
    if (leaf) out.push_back(&*leaf);
    for (const auto& c : children) c.collect_leaves(out);
  }

  std::vector<Leaf> leaves() const {
    std::vector<const Leaf*> ptrs;
    collect_leaves(ptrs);
    std::vector<Leaf> out;
    for (auto* p : ptrs) out.push_back(*p);
    return out;
  }

  /// Bracketed one-line form: (S (CL (NP (PN Irene)) ...)).
  std::string bracketed() const {
    if (leaf) return "(" + label + " " + leaf->surface + ")";
    std::string s = "(" + label;
    for (const auto& c : children) s += " " + c.bracketed();
    return s + ")";
  }

  /// Indented multi-line form; leaves show key and form.
  std::string indented(int depth = 0) const {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (leaf) return pad + label + " \"" + leaf->surface + "\" [" + leaf->key + ":" + leaf->form + "]\n";
    std::string s = pad + label + "\n";
    for (const auto& c : children) s += c.indented(depth + 1);
    return s;
  }

  friend bool operator==(const SyntaxTree&, const SyntaxTree&) = default;
};

inline nlohmann::json to_json(const SyntaxTree& t) {
  if (t.leaf) return {{"label", t.label}, {"key", t.leaf->key}, {"form", t.leaf->form}, {"surface", t.leaf->surface}};
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& c : t.children) kids.push_back(to_json(c));
  return {{"label", t.label}, {"children", kids}};
}

inline SyntaxTree tree_from_json(const nlohmann::json& j) {
  SyntaxTree t{j.at("label").get<std::string>(), {}, std::nullopt};
  if (j.contains("surface")) {
    t.leaf = Leaf{t.label, j.at("key").get<std::string>(), j.at("form").get<std::string>(),
                  j.at("surface").get<std::string>()};
    return t;
  }
  for (const auto& c : j.at("children")) t.children.push_back(tree_from_json(c));
  return t;
}

/// Joins the leaves into a sentence: commas where the grammar asks for
/// them, first character upper-cased, final period.
inline std::string linearize(const SyntaxTree& tree, const Grammar& grammar) {
  std::vector<std::string> tokens;
  std::vector<bool> comma_gap;  // comma_gap[k]: comma between token k-1 and k
  struct Walker {
    const Grammar& g;
    std::vector<std::string>& tokens;
    std::vector<bool>& gaps;
    void operator()(const SyntaxTree& t) {
      const std::size_t first = tokens.size();
      if (t.leaf) {
        tokens.push_back(t.leaf->surface);
        gaps.push_back(false);
      }
      for (const auto& c : t.children) (*this)(c);
      if (!t.leaf && g.comma_before(t.label) && first > 0 && first < gaps.size()) gaps[first] = true;
      if (!t.leaf && g.comma_after(t.label)) after.push_back(tokens.size());
    }
    std::vector<std::size_t> after;
  } walk{grammar, tokens, comma_gap, {}};
  walk(tree);
  for (std::size_t k : walk.after)
    if (k > 0 && k < comma_gap.size()) comma_gap[k] = true;

  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k > 0) out += comma_gap[k] ? ", " : " ";
    out += tokens[k];
  }
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out + ".";
}

/// Splits a sentence into word tokens, dropping commas and the final period.
inline std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : sentence) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  while (!out.empty() && !out.back().empty() && (out.back().back() == '.' || out.back().back() == '!' || out.back().back() == '?')) {
    out.back().pop_back();
    if (out.back().empty()) out.pop_back();
  }
  return out;
}

/// A lexical edge: leaf covering tokens [from, to).
struct LexicalEdge {
  std::size_t from;
  std::size_t to;
  Leaf leaf;
};

/// Memoised all-parses chart over lexical edges. Alternatives are explored
/// in grammar file order, then by ascending split point, then by edge order,
/// so the parse list is deterministic. Each cell keeps at most `max_parses`
/// trees.
class Chart {
 public:
  Chart(const Grammar& grammar, std::vector<LexicalEdge> edges, std::size_t n, std::size_t max_parses = 256)
      : g_(grammar), edges_(std::move(edges)), n_(n), cap_(max_parses) {}

  const std::vector<SyntaxTree>& trees(const GrammarSymbol& sym, std::size_t i, std::size_t j) {
    const Key key{sym.name, sym.form, i, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<SyntaxTree> out;
    if (sym.form.empty() && g_.is_nonterminal(sym.name)) {
      for (std::size_t idx : g_.rules_for(sym.name)) {
        for (auto& kids : sequence(idx, 0, i, j)) {
          if (out.size() >= cap_) break;
          out.push_back({sym.name, std::move(kids), std::nullopt});
        }
      }
    } else {
      for (const auto& e : edges_)
        if (e.from == i && e.to == j && e.leaf.category == sym.name && form_matches(sym.form, e.leaf.form))
          out.push_back({sym.name, {}, e.leaf});
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  /// All child sequences for rule `rule` from rhs position k over [i, j).
  std::vector<std::vector<SyntaxTree>> sequence(std::size_t rule, std::size_t k, std::size_t i, std::size_t j) {
    const auto& rhs = g_.rules()[rule].rhs;
    std::vector<std::vector<SyntaxTree>> out;
    const std::size_t remaining = rhs.size() - k;
    if (j - i < remaining) return out;
    if (remaining == 1) {
      for (const auto& t : trees(rhs[k], i, j)) out.push_back({t});
      return out;
    }
    for (std::size_t m = i + 1; m + (remaining - 1) <= j; ++m) {
      const auto& left = trees(rhs[k], i, m);
      if (left.empty()) continue;
      const auto rest = sequence(rule, k + 1, m, j);
      for (const auto& l : left) {
        for (const auto& r : rest) {
          if (out.size() >= cap_) return out;
          std::vector<SyntaxTree> seq{l};
          seq.insert(seq.end(), r.begin(), r.end());
          out.push_back(std::move(seq));
        }
      }
    }
    return out;
  }

  std::size_t size() const { return n_; }

 private:
  using Key = std::tuple<std::string, std::string, std::size_t, std::size_t>;
  const Grammar& g_;
  std::vector<LexicalEdge> edges_;
  std::size_t n_;
  std::size_t cap_;
  std::map<Key, std::vector<SyntaxTree>> memo_;
};

/// Every parse of the sentence from the grammar's start symbol, in
/// deterministic order. Tokens are matched against lexicon surfaces
/// (multi-word surfaces included); the first token is also tried with its
/// initial letter lower-cased.
inline std::vector<SyntaxTree> parse(std::string_view sentence, const Grammar& grammar, const Lexicon& lexicon,
                                     std::size_t max_parses = 256) {
  const auto tokens = tokenize(sentence);
  if (tokens.empty()) throw Error(ErrorCode::parse_failure, "empty sentence");

  std::vector<LexicalEdge> edges;
  std::vector<bool> covered(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string phrase;
    for (std::size_t len = 1; len <= lexicon.max_words() && i + len <= tokens.size(); ++len) {
      phrase += (len > 1 ? " " : "") + tokens[i + len - 1];
      std::vector<std::string> variants{phrase};
      if (i == 0 && !phrase.empty() && std::isupper(static_cast<unsigned char>(phrase[0]))) {
        std::string lower = phrase;
        lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
        variants.push_back(lower);
      }
      for (const auto& v : variants) {
        for (Leaf& leaf : lexicon.leaves(v)) {
          leaf.surface = v;
          edges.push_back({i, i + len, std::move(leaf)});
          for (std::size_t c = i; c < i + len; ++c) covered[c] = true;
        }
      }
    }
  }
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (!covered[i]) throw Error(ErrorCode::unknown_token, "token '" + tokens[i] + "' (position " + std::to_string(i + 1) + ") is not in the lexicon");

  Chart chart(grammar, std::move(edges), tokens.size(), max_parses);
  auto result = chart.trees({grammar.start(), {}}, 0, tokens.size());
  if (result.empty()) {
    std::string joined;
    for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
    throw Error(ErrorCode::parse_failure, "no " + grammar.start() + " spans \"" + joined + "\"");
  }
  return result;
}

}  // namespace vistalk::nlg
