// Surface realisation: IDS -> inflected leaf sequence -> syntax tree under
// the grammar's template rule, and store-level summaries.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vistalk/core.hpp"
#include "vistalk/nlg/grammar.hpp"
#include "vistalk/nlg/ids.hpp"
#include "vistalk/nlg/lexicon.hpp"
#include "vistalk/nlg/syntax.hpp"
#include "vistalk/store.hpp"

namespace vistalk::nlg {

namespace detail {

enum class Voice { active, passive, copula };

class ClauseBuilder {
 public:
  ClauseBuilder(const Lexicon& lexicon, const LexicalChoices& choices) : lex_(lexicon), words_(choices) {}

  std::vector<Leaf> leaves;

  void word(const std::string& key, const std::string& form = "base") { leaves.push_back(lex_.leaf(key, form)); }

  void noun_phrase(const NounPhraseSpec& np) {
    const LexiconEntry* head = lex_.find(np.head);
    if (!head) throw Error(ErrorCode::lexicon_gap, "no lexicon entry for '" + np.head + "'");
    const bool proper = head->pos == PartOfSpeech::proper_noun;
    if (np.possessor) {
      word(*np.possessor, "poss");
    } else if (proper) {
      word(np.head, "base");
      return;
    } else {
      word(words_.determiner);
    }
    for (const auto& m : np.mods) {
      const LexiconEntry* e = lex_.find(m);
      if (!e) throw Error(ErrorCode::lexicon_gap, "no lexicon entry for modifier '" + m + "'");
      word(m, e->pos == PartOfSpeech::noun ? "sg" : "base");
    }
    word(np.head, proper ? "base" : (np.plural ? "pl" : "sg"));
  }

  void verb_group(const std::string& verb, Tense tense, Voice voice, bool plural) {
    const std::string n = plural ? "pl" : "sg";
    const std::string& be = words_.copula;
    const std::string& will = words_.modal;
    if (voice == Voice::copula) {
      switch (tense) {
        case Tense::simple_present:
        case Tense::present_continuous: return word(be, "pres:" + n);
        case Tense::simple_past:
        case Tense::past_continuous: return word(be, "past:" + n);
        case Tense::simple_future:
        case Tense::future_continuous: return word(will), word(be);
      }
    }
    const std::string main = voice == Voice::passive ? "pp" : "ing";
    switch (tense) {
      case Tense::simple_present:
        if (voice == Voice::passive) return word(be, "pres:" + n), word(verb, "pp");
        return word(verb, "pres:" + n);
      case Tense::simple_past:
        if (voice == Voice::passive) return word(be, "past:" + n), word(verb, "pp");
        return word(verb, "past");
      case Tense::simple_future:
        word(will);
        if (voice == Voice::passive) return word(be), word(verb, "pp");
        return word(verb);
      case Tense::present_continuous:
        word(be, "pres:" + n);
        if (voice == Voice::passive) word(be, "ing");
        return word(verb, main);
      case Tense::past_continuous:
        word(be, "past:" + n);
        if (voice == Voice::passive) word(be, "ing");
        return word(verb, main);
      case Tense::future_continuous:
        word(will), word(be);
        if (voice == Voice::passive) word(be, "ing");
        return word(verb, main);
    }
  }

  void clause(const IDSInstance& ids) {
    const std::string& kind = ids.event_kind;
    if (kind == occurrence_kinds::containment) {
      const auto& subject = ids.role("entity");
      if (ids.attribute("lexical_variant", "in") == "occupies") {
        noun_phrase(subject);
        verb_group(words_.occupy_verb, ids.tense, Voice::active, subject.plural);
        noun_phrase(ids.role("container"));
      } else {
        noun_phrase(subject);
        verb_group(words_.copula, ids.tense, Voice::copula, subject.plural);
        word(words_.in_preposition);
        noun_phrase(ids.role("container"));
      }
    } else if (kind == occurrence_kinds::source_path_goal || kind == occurrence_kinds::path_goal) {
      const bool gaze = ids.attribute("trajector_kind") == "gaze";
      const auto& subject = ids.role("trajector");
      noun_phrase(subject);
      verb_group(gaze ? words_.gaze_verb : words_.person_verb, ids.tense, Voice::active, subject.plural);
      if (kind == occurrence_kinds::source_path_goal) {
        word(words_.source_preposition);
        noun_phrase(ids.role("source"));
        if (auto it = ids.roles.find("via"); it != ids.roles.end()) {
          for (const auto& v : it->second) {
            word(gaze ? words_.gaze_via : words_.person_via);
            noun_phrase(v);
          }
        }
      }
      word(words_.goal_preposition);
      noun_phrase(ids.role("goal"));
    } else if (kind == occurrence_kinds::attraction) {
      const auto& subject = ids.role("entity");
      noun_phrase(subject);
      verb_group(words_.attraction_verb, ids.tense, Voice::passive, subject.plural);
      word(words_.agent_preposition);
      noun_phrase(ids.role("attractor"));
    } else {
      throw Error(ErrorCode::grammar_gap, "no clause pattern for event kind '" + kind + "'");
    }
  }

  void sentence(const IDSInstance& ids) {
    if (ids.gerund) {
      word(words_.while_conjunction);
      word(ids.gerund->verb, "ing");
      word(ids.gerund->preposition);
      noun_phrase(ids.gerund->location);
    }
    clause(ids);
    for (const auto& link : ids.while_links) {
      word(words_.while_conjunction);
      clause(link);
    }
  }

 private:
  const Lexicon& lex_;
  const LexicalChoices& words_;
};

}  // namespace detail

inline SentenceClass sentence_class(const IDSInstance& ids) {
  if (!ids.while_links.empty()) return SentenceClass::compound;
  if (ids.gerund) return SentenceClass::complex;
  return SentenceClass::simple;
}

/// Builds the syntax tree for an IDS: the clause words are inflected from
/// the lexicon, then structured by the grammar with the root fixed to the
/// template rule for (event kind, sentence class).
inline SyntaxTree realize(const IDSInstance& ids, const Lexicon& lexicon, const Grammar& grammar,
                          const LexicalChoices& choices = {}) {
  const SentenceClass cls = sentence_class(ids);
  const auto rule = grammar.template_rule(ids.event_kind, cls);
  if (!rule)
    throw Error(ErrorCode::grammar_gap,
                "grammar has no template for " + ids.event_kind + " " + std::string(to_string(cls)) + " sentences");

  detail::ClauseBuilder builder(lexicon, choices);
  builder.sentence(ids);

  std::vector<LexicalEdge> edges;
  for (std::size_t i = 0; i < builder.leaves.size(); ++i) edges.push_back({i, i + 1, builder.leaves[i]});
  const std::size_t n = edges.size();
  Chart chart(grammar, std::move(edges), n, 1);
  auto kids = chart.sequence(*rule, 0, 0, n);
  if (kids.empty())
    throw Error(ErrorCode::grammar_gap,
                "template '" + grammar.rules()[*rule].to_string() + "' does not cover the " + ids.event_kind + " clause");
  return SyntaxTree{grammar.rules()[*rule].lhs, std::move(kids.front()), std::nullopt};
}

struct SummarySentence {
  std::string text;
  SyntaxTree tree;
  std::vector<std::string> occurrence_ids;
};

struct Summary {
  std::vector<SummarySentence> sentences;
  std::vector<std::string> errors;

  std::string text() const {
    std::string out;
    for (const auto& s : sentences) out += s.text + "\n";
    return out;
  }
};

/// One sentence per IDS, in span-start order. Failures are collected in
/// `errors` and the remaining sentences are still produced.
inline Summary summarize(const NarrativeStore& store, const Vocabulary& vocab, const Lexicon& lexicon,
                         const Grammar& grammar, Tense tense, const LexicalChoices& choices = {}) {
  Summary out;
  for (const IDSInstance& ids : build_ids(store, vocab, tense, choices, &out.errors)) {
    try {
      SyntaxTree tree = realize(ids, lexicon, grammar, choices);
      std::string text = linearize(tree, grammar);
      out.sentences.push_back({std::move(text), std::move(tree), ids.occurrence_ids()});
    } catch (const Error& e) {
      out.errors.push_back(ids.occurrence_id + ": " + e.what());
    }
  }
  return out;
}

inline nlohmann::json to_json(const SummarySentence& s) {
  return {{"text", s.text}, {"tree", to_json(s.tree)}, {"occurrence_id", s.occurrence_ids.front()},
          {"occurrence_ids", s.occurrence_ids}};
}

}  // namespace vistalk::nlg
