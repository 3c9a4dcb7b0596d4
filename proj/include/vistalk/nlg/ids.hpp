// Interaction description schemas: the per-sentence semantic input to the
// realiser, built from schema occurrences through a vocabulary that maps
// scene entities to lexicon keys.
//
// Vocabulary files hold one entity per line:
//
//   entity_id key=value key=value ...
//
// Keys: head (lexicon key of the head noun or proper noun), mods
// (comma-separated modifier keys), number (singular|plural), owner (entity
// whose possessive fronts this entity's phrases), path_head/path_number
// (noun used when the entity is a gaze trajector), attention_head (noun
// used when the entity is attracted).
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vistalk/core.hpp"
#include "vistalk/image_schemas.hpp"
#include "vistalk/nlg/lexicon.hpp"
#include "vistalk/store.hpp"
#include "vistalk/temporal.hpp"

namespace vistalk::nlg {

enum class Tense { simple_present, simple_past, simple_future, present_continuous, past_continuous, future_continuous };

inline constexpr std::array<Tense, 6> all_tenses = {Tense::simple_present,      Tense::simple_past,
                                                    Tense::simple_future,       Tense::present_continuous,
                                                    Tense::past_continuous,     Tense::future_continuous};

inline std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::simple_present: return "simple_present";
    case Tense::simple_past: return "simple_past";
    case Tense::simple_future: return "simple_future";
    case Tense::present_continuous: return "present_continuous";
    case Tense::past_continuous: return "past_continuous";
    case Tense::future_continuous: return "future_continuous";
  }
  return "simple_present";
}

/// Accepts the full names plus the short forms present, past, future.
inline std::optional<Tense> parse_tense(std::string_view s) {
  if (s == "present") return Tense::simple_present;
  if (s == "past") return Tense::simple_past;
  if (s == "future") return Tense::simple_future;
  for (Tense t : all_tenses)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// A noun phrase in lexicon keys.
struct NounPhraseSpec {
  std::string head;
  std::vector<std::string> mods;
  bool plural = false;
  std::optional<std::string> possessor;  // lexicon key of a proper noun

  friend bool operator==(const NounPhraseSpec&, const NounPhraseSpec&) = default;
};

/// "While <verb>ing <prep> <location>," fronting a clause.
struct GerundModifier {
  std::string verb;
  std::string preposition;
  NounPhraseSpec location;

  friend bool operator==(const GerundModifier&, const GerundModifier&) = default;
};

struct IDSInstance {
  std::string occurrence_id;
  std::string event_kind;
  std::map<std::string, std::vector<NounPhraseSpec>> roles;
  std::map<std::string, std::string> attributes;
  Span span = Span(TimePoint{});
  Tense tense = Tense::simple_present;
  /// Co-temporal clauses joined with "while".
  std::vector<IDSInstance> while_links;
  std::optional<GerundModifier> gerund;

  const NounPhraseSpec& role(const std::string& name) const {
    auto it = roles.find(name);
    if (it == roles.end() || it->second.empty())
      throw Error(ErrorCode::incomplete_roles, event_kind + " IDS lacks role '" + name + "'");
    return it->second.front();
  }

  std::string attribute(const std::string& name, std::string fallback = {}) const {
    auto it = attributes.find(name);
    return it == attributes.end() ? fallback : it->second;
  }

  /// Occurrence ids of this clause and all linked clauses.
  std::vector<std::string> occurrence_ids() const {
    std::vector<std::string> out{occurrence_id};
    for (const auto& l : while_links) out.push_back(l.occurrence_id);
    return out;
  }

  friend bool operator==(const IDSInstance&, const IDSInstance&) = default;
};

struct VocabEntry {
  std::string head;
  std::vector<std::string> mods;
  bool plural = false;
  std::optional<std::string> owner;
  std::optional<std::string> path_head;
  bool path_plural = false;
  std::optional<std::string> attention_head;
};

class Vocabulary {
 public:
  void add(const std::string& entity, VocabEntry e) { entries_[entity] = std::move(e); }

  const VocabEntry* find(const std::string& entity) const {
    auto it = entries_.find(entity);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const VocabEntry& at(const std::string& entity) const {
    if (const VocabEntry* e = find(entity)) return *e;
    throw Error(ErrorCode::vocabulary_gap, "no vocabulary entry for entity '" + entity + "'");
  }

  /// Plain reference to an entity: "the blue elevators", "Barbara".
  NounPhraseSpec plain(const std::string& entity) const {
    const VocabEntry& e = at(entity);
    if (e.head.empty()) throw Error(ErrorCode::vocabulary_gap, "entity '" + entity + "' has no head noun");
    NounPhraseSpec np{e.head, e.mods, e.plural, std::nullopt};
    if (e.owner) np.possessor = plain(*e.owner).head;
    return np;
  }

  /// Reference to a moving gaze: "Barbaras eyes".
  NounPhraseSpec as_gaze_trajector(const std::string& entity) const {
    const VocabEntry& e = at(entity);
    if (!e.path_head) return plain(entity);
    if (!e.owner) throw Error(ErrorCode::vocabulary_gap, "gaze entity '" + entity + "' needs an owner");
    return {*e.path_head, {}, e.path_plural, plain(*e.owner).head};
  }

  /// Reference to attention: "Barbaras attention".
  NounPhraseSpec as_attention(const std::string& entity) const {
    const VocabEntry& e = at(entity);
    if (!e.attention_head) return plain(entity);
    if (!e.owner) throw Error(ErrorCode::vocabulary_gap, "entity '" + entity + "' needs an owner for attention");
    return {*e.attention_head, {}, false, plain(*e.owner).head};
  }

 private:
  std::map<std::string, VocabEntry> entries_;
};

inline Vocabulary load_vocabulary_text(std::string_view text, const std::string& source = "<vocab>") {
  Vocabulary v;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    std::istringstream words(line);
    std::string entity, kv;
    words >> entity;
    VocabEntry e;
    auto number = [&](const std::string& value) {
      if (value != "singular" && value != "plural")
        throw Error(ErrorCode::invalid_input, where + ": number must be singular or plural");
      return value == "plural";
    };
    while (words >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
        throw Error(ErrorCode::invalid_input, where + ": malformed field '" + kv + "'");
      const std::string k = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (k == "head") e.head = val;
      else if (k == "mods") e.mods = detail::split(val, ',');
      else if (k == "number") e.plural = number(val);
      else if (k == "owner") e.owner = val;
      else if (k == "path_head") e.path_head = val;
      else if (k == "path_number") e.path_plural = number(val);
      else if (k == "attention_head") e.attention_head = val;
      else throw Error(ErrorCode::invalid_input, where + ": unknown field '" + k + "'");
    }
    if (e.head.empty() && !e.owner) throw Error(ErrorCode::invalid_input, where + ": entity '" + entity + "' needs head or owner");
    v.add(entity, std::move(e));
  }
  return v;
}

inline Vocabulary load_vocabulary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open vocabulary file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_vocabulary_text(buf.str(), path);
}

/// Maps one occurrence to its IDS. Every role entity must be in the
/// vocabulary; a gaze trajector is referred to through its owner.
inline IDSInstance schema_to_ids(const Occurrence& occ, const Vocabulary& vocab, Tense tense = Tense::simple_present) {
  IDSInstance ids;
  ids.occurrence_id = occ.id();
  ids.event_kind = occ.kind;
  ids.attributes = occ.attributes;
  ids.span = occ.span;
  ids.tense = tense;
  const bool gaze = occ.attribute("trajector_kind") == "gaze";
  for (const auto& [role, entities] : occ.roles) {
    auto& nps = ids.roles[role];
    for (const auto& e : entities) {
      if (role == "trajector" && gaze) nps.push_back(vocab.as_gaze_trajector(e));
      else if (role == "entity" && occ.kind == occurrence_kinds::attraction) nps.push_back(vocab.as_attention(e));
      else nps.push_back(vocab.plain(e));
    }
  }
  return ids;
}

/// Words used for each schema; swap these to change lexical choices
/// without touching grammar or detectors.
struct LexicalChoices {
  std::string occupy_verb = "occupy";
  std::string copula = "be";
  std::string modal = "will";
  std::string determiner = "the";
  std::string in_preposition = "in";
  std::string person_verb = "walk";
  std::string gaze_verb = "move";
  std::string source_preposition = "from";
  std::string person_via = "through";
  std::string gaze_via = "over";
  std::string goal_preposition = "to";
  std::string attraction_verb = "attract";
  std::string agent_preposition = "by";
  std::string while_conjunction = "while";
};

/// All IDS instances for a store, one per sentence, ordered by span start.
///
/// Containment occurrences with co-temporal spans and different entities
/// are paired into one compound IDS, the earlier one as main clause.
/// Attraction occurrences whose owner has a co-temporal location holding
/// get a fronting gerund for the location with the largest overlap.
inline std::vector<IDSInstance> build_ids(const NarrativeStore& store, const Vocabulary& vocab, Tense tense,
                                          const LexicalChoices& choices = {},
                                          std::vector<std::string>* errors = nullptr) {
  const auto& occs = store.occurrences();  // sorted by span start
  std::vector<bool> used(occs.size(), false);
  std::vector<IDSInstance> out;

  auto attempt = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (!errors) throw;
      errors->push_back(e.what());
    }
  };

  for (std::size_t i = 0; i < occs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Occurrence& occ = occs[i];
    attempt([&] {
      IDSInstance ids = schema_to_ids(occ, vocab, tense);
      if (occ.kind == occurrence_kinds::containment) {
        for (std::size_t j = i + 1; j < occs.size(); ++j) {
          const Occurrence& other = occs[j];
          if (used[j] || other.kind != occurrence_kinds::containment) continue;
          if (other.role("entity") == occ.role("entity") || !cotemporal(occ.span, other.span)) continue;
          ids.while_links.push_back(schema_to_ids(other, vocab, tense));
          used[j] = true;
          break;
        }
      }
      if (occ.kind == occurrence_kinds::attraction) {
        if (const VocabEntry* ve = vocab.find(occ.role("entity")); ve && ve->owner) {
          const FluentPattern pattern{std::string(families::at_location), {{*ve->owner, std::nullopt}}};
          std::optional<Holding> best;
          double best_overlap = -1.0;
          for (const Holding& h : store.query(pattern, std::string(inside_symbol), occ.span)) {
            if (!cotemporal(h.span, occ.span)) continue;
            const double overlap = std::min(h.span.end(), occ.span.end()).seconds() -
                                   std::max(h.span.start(), occ.span.start()).seconds();
            if (overlap > best_overlap) best = h, best_overlap = overlap;
          }
          if (best) {
            const auto owner_kind = store.entity_kind(*ve->owner);
            const bool person = !owner_kind || *owner_kind != EntityKind::gaze;
            ids.gerund = GerundModifier{person ? choices.person_verb : choices.gaze_verb,
                                        person ? choices.person_via : choices.gaze_via,
                                        vocab.plain(best->fluent.args()[1])};
          }
        }
      }
      out.push_back(std::move(ids));
    });
  }
  return out;
}

}  // namespace vistalk::nlg
