// Lexicon entries, English inflection and the line-based lexicon format.
//
// One entry per line:
//
//   key | part_of_speech | base form | attr=value attr=value ...
//
// Recognised attributes: `cat` (grammar category, overrides the default
// for the part of speech), `tags` (comma-separated semantic tags), and
// inflection overrides `pl`, `poss`, `pres:sg`, `pres:pl`, `past`,
// `past:sg`, `past:pl`, `pp`, `ing`. `#` starts a comment.
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vistalk/core.hpp"

namespace vistalk::nlg {

enum class PartOfSpeech { noun, proper_noun, verb, preposition, determiner, adjective, conjunction, auxiliary };

inline std::string_view to_string(PartOfSpeech p) {
  switch (p) {
    case PartOfSpeech::noun: return "noun";
    case PartOfSpeech::proper_noun: return "proper_noun";
    case PartOfSpeech::verb: return "verb";
    case PartOfSpeech::preposition: return "preposition";
    case PartOfSpeech::determiner: return "determiner";
    case PartOfSpeech::adjective: return "adjective";
    case PartOfSpeech::conjunction: return "conjunction";
    case PartOfSpeech::auxiliary: return "auxiliary";
  }
  return "noun";
}

inline std::optional<PartOfSpeech> parse_part_of_speech(std::string_view s) {
  for (auto p : {PartOfSpeech::noun, PartOfSpeech::proper_noun, PartOfSpeech::verb, PartOfSpeech::preposition,
                 PartOfSpeech::determiner, PartOfSpeech::adjective, PartOfSpeech::conjunction, PartOfSpeech::auxiliary})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

inline std::string_view default_category(PartOfSpeech p) {
  switch (p) {
    case PartOfSpeech::noun: return "N";
    case PartOfSpeech::proper_noun: return "PN";
    case PartOfSpeech::verb: return "V";
    case PartOfSpeech::preposition: return "P";
    case PartOfSpeech::determiner: return "Det";
    case PartOfSpeech::adjective: return "Adj";
    case PartOfSpeech::conjunction: return "Conj";
    case PartOfSpeech::auxiliary: return "Aux";
  }
  return "N";
}

enum class PossessiveStyle { plain, apostrophe };

struct LexiconEntry {
  std::string key;
  PartOfSpeech pos;
  std::string base;
  std::string category;
  std::map<std::string, std::string> irregular;
  std::vector<std::string> tags;
};

/// A lexical leaf: the entry it came from, the inflected form name and the
/// surface string.
struct Leaf {
  std::string category;
  std::string key;
  std::string form;
  std::string surface;

  friend bool operator==(const Leaf&, const Leaf&) = default;
};

namespace morphology {

inline bool is_vowel(char c) {
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline bool consonant_y(std::string_view s) { return s.size() >= 2 && s.back() == 'y' && !is_vowel(s[s.size() - 2]); }

inline bool sibilant(std::string_view s) {
  return ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") || ends_with(s, "ch") || ends_with(s, "sh");
}

inline std::string plural(std::string_view s) {
  if (consonant_y(s)) return std::string(s.substr(0, s.size() - 1)) + "ies";
  if (sibilant(s)) return std::string(s) + "es";
  return std::string(s) + "s";
}

inline std::string third_singular(std::string_view s) {
  if (consonant_y(s)) return std::string(s.substr(0, s.size() - 1)) + "ies";
  if (sibilant(s) || ends_with(s, "o")) return std::string(s) + "es";
  return std::string(s) + "s";
}

inline std::string past(std::string_view s) {
  if (ends_with(s, "e")) return std::string(s) + "d";
  if (consonant_y(s)) return std::string(s.substr(0, s.size() - 1)) + "ied";
  return std::string(s) + "ed";
}

inline std::string present_participle(std::string_view s) {
  if (ends_with(s, "ie")) return std::string(s.substr(0, s.size() - 2)) + "ying";
  if (ends_with(s, "e") && !ends_with(s, "ee") && !ends_with(s, "ye") && !ends_with(s, "oe") && s.size() > 2)
    return std::string(s.substr(0, s.size() - 1)) + "ing";
  return std::string(s) + "ing";
}

inline std::string possessive(std::string_view s, PossessiveStyle style) {
  if (style == PossessiveStyle::apostrophe) return std::string(s) + (ends_with(s, "s") ? "'" : "'s");
  return std::string(s) + "s";
}

}  // namespace morphology

/// All inflected (form, surface) pairs of an entry, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> inflections(const LexiconEntry& e, PossessiveStyle style) {
  auto pick = [&](const std::string& form, std::string regular) {
    auto it = e.irregular.find(form);
    return std::make_pair(form, it != e.irregular.end() ? it->second : std::move(regular));
  };
  switch (e.pos) {
    case PartOfSpeech::noun:
      return {{"sg", e.base}, pick("pl", morphology::plural(e.base))};
    case PartOfSpeech::proper_noun:
      return {{"base", e.base}, pick("poss", morphology::possessive(e.base, style))};
    case PartOfSpeech::verb: {
      const auto past = pick("past", morphology::past(e.base));
      return {{"base", e.base},
              pick("pres:sg", morphology::third_singular(e.base)),
              pick("pres:pl", e.base),
              past,
              pick("pp", past.second),
              pick("ing", morphology::present_participle(e.base))};
    }
    case PartOfSpeech::auxiliary: {
      std::vector<std::pair<std::string, std::string>> out{{"base", e.base}};
      for (const char* f : {"pres:sg", "pres:pl", "past", "past:sg", "past:pl", "pp", "ing"})
        if (auto it = e.irregular.find(f); it != e.irregular.end()) out.emplace_back(f, it->second);
      return out;
    }
    default:
      return {{"base", e.base}};
  }
}

/// True when a leaf form satisfies a requested form: exact match, or the
/// request names a form family ("pres") and the leaf is a member ("pres:sg").
inline bool form_matches(std::string_view requested, std::string_view form) {
  if (requested.empty() || requested == form) return true;
  return form.size() > requested.size() && form.substr(0, requested.size()) == requested && form[requested.size()] == ':';
}

class Lexicon {
 public:
  struct Reading {
    std::size_t entry;
    std::string form;
  };

  explicit Lexicon(PossessiveStyle style = PossessiveStyle::plain) : style_(style) {}

  PossessiveStyle possessive_style() const { return style_; }

  void set_possessive_style(PossessiveStyle style) {
    style_ = style;
    reindex();
  }

  void add(LexiconEntry e, const std::string& where = "lexicon") {
    if (e.key.empty()) throw Error(ErrorCode::invalid_input, where + ": empty key");
    if (e.base.empty()) throw Error(ErrorCode::invalid_input, where + ": entry '" + e.key + "' has an empty base form");
    if (by_key_.count(e.key)) throw Error(ErrorCode::invalid_input, where + ": duplicate lexicon key '" + e.key + "'");
    if (e.category.empty()) e.category = std::string(default_category(e.pos));
    by_key_[e.key] = entries_.size();
    entries_.push_back(std::move(e));
    index(entries_.size() - 1);
  }

  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const LexiconEntry* find(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : &entries_[it->second];
  }

  /// The leaf for `key` in `form`. Missing keys or forms raise LexiconGap.
  Leaf leaf(const std::string& key, const std::string& form) const {
    const LexiconEntry* e = find(key);
    if (!e) throw Error(ErrorCode::lexicon_gap, "no lexicon entry for '" + key + "'");
    for (auto& [f, surface] : inflections(*e, style_))
      if (f == form) return {e->category, e->key, f, surface};
    throw Error(ErrorCode::lexicon_gap, "lexicon entry '" + key + "' has no form '" + form + "'");
  }

  /// Every reading of an exact surface string, in lexicon order.
  const std::vector<Reading>& readings(const std::string& surface) const {
    static const std::vector<Reading> none;
    auto it = by_surface_.find(surface);
    return it == by_surface_.end() ? none : it->second;
  }

  std::vector<Leaf> leaves(const std::string& surface) const {
    std::vector<Leaf> out;
    for (const Reading& r : readings(surface)) {
      const LexiconEntry& e = entries_[r.entry];
      out.push_back({e.category, e.key, r.form, surface});
    }
    return out;
  }

  /// Longest surface string in words, for multi-word lookups.
  std::size_t max_words() const { return max_words_; }

 private:
  void reindex() {
    by_surface_.clear();
    max_words_ = 1;
    for (std::size_t i = 0; i < entries_.size(); ++i) index(i);
  }

  void index(std::size_t i) {
    for (auto& [form, surface] : inflections(entries_[i], style_)) {
      auto& list = by_surface_[surface];
      const bool dup = std::any_of(list.begin(), list.end(), [&](const Reading& r) { return r.entry == i && r.form == form; });
      if (!dup) list.push_back({i, form});
      max_words_ = std::max<std::size_t>(max_words_, 1 + std::count(surface.begin(), surface.end(), ' '));
    }
  }

  PossessiveStyle style_;
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::size_t> by_key_;
  std::map<std::string, std::vector<Reading>> by_surface_;
  std::size_t max_words_ = 1;
};

namespace detail {
inline std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}
}  // namespace detail

/// Adds the entries in `text` to `lexicon`; `source` names the input in errors.
inline void load_lexicon_text(Lexicon& lexicon, std::string_view text, const std::string& source = "<lexicon>") {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto fields = detail::split(line, '|');
    if (fields.size() < 3 || fields.size() > 4)
      throw Error(ErrorCode::invalid_input, where + ": expected 'key | pos | base [| attrs]'");
    const auto pos = parse_part_of_speech(fields[1]);
    if (!pos) throw Error(ErrorCode::invalid_input, where + ": unknown part of speech '" + fields[1] + "'");
    LexiconEntry e{fields[0], *pos, fields[2], {}, {}, {}};
    if (fields.size() == 4) {
      std::istringstream attrs(fields[3]);
      std::string kv;
      while (attrs >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
          throw Error(ErrorCode::invalid_input, where + ": malformed attribute '" + kv + "'");
        const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "cat")
          e.category = v;
        else if (k == "tags")
          e.tags = detail::split(v, ',');
        else
          e.irregular[k] = v;
      }
    }
    lexicon.add(std::move(e), where);
  }
}

inline void load_lexicon_file(Lexicon& lexicon, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open lexicon file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  load_lexicon_text(lexicon, buf.str(), path);
}

}  // namespace vistalk::nlg
