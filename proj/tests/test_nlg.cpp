#include <gtest/gtest.h>

#include "support.hpp"

using namespace vistalk;
using namespace vistalk::nlg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no vistalk::Error thrown";
  return ErrorCode::invalid_input;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Span between(double a, double b) { return Span::from_bounds(TimePoint::from_seconds(a), TimePoint::from_seconds(b)); }

/// The L1 bundle: it carries the core lexicon, the domain words and the
/// shared grammar.
const io::SceneBundle& l1() {
  static const io::SceneBundle b = io::load_bundle(support::fixture("l1_quadrants"));
  return b;
}

const io::SceneBundle& l2() {
  static const io::SceneBundle b = io::load_bundle(support::fixture("l2_wayfinding"));
  return b;
}

Occurrence containment(const std::string& entity, const std::string& container, const std::string& variant,
                       Span span = between(10, 18)) {
  return {"containment", {{"entity", {entity}}, {"container", {container}}}, {{"lexical_variant", variant}}, span};
}

std::string say(const IDSInstance& ids, const io::SceneBundle& b, const LexicalChoices& choices = {}) {
  return linearize(realize(ids, b.lexicon, *b.grammar, choices), *b.grammar);
}

}  // namespace

TEST(Morphology, RegularInflection) {
  using namespace morphology;
  EXPECT_EQ(plural("elevator"), "elevators");
  EXPECT_EQ(plural("box"), "boxes");
  EXPECT_EQ(plural("city"), "cities");
  EXPECT_EQ(plural("day"), "days");
  EXPECT_EQ(third_singular("occupy"), "occupies");
  EXPECT_EQ(third_singular("go"), "goes");
  EXPECT_EQ(third_singular("walk"), "walks");
  EXPECT_EQ(past("occupy"), "occupied");
  EXPECT_EQ(past("move"), "moved");
  EXPECT_EQ(past("walk"), "walked");
  EXPECT_EQ(present_participle("move"), "moving");
  EXPECT_EQ(present_participle("see"), "seeing");
  EXPECT_EQ(present_participle("lie"), "lying");
  EXPECT_EQ(possessive("Barbara", PossessiveStyle::plain), "Barbaras");
  EXPECT_EQ(possessive("Barbara", PossessiveStyle::apostrophe), "Barbara's");
  EXPECT_EQ(possessive("James", PossessiveStyle::apostrophe), "James'");
}

TEST(Morphology, FormFamilies) {
  EXPECT_TRUE(form_matches("pres", "pres:sg"));
  EXPECT_TRUE(form_matches("pres", "pres:pl"));
  EXPECT_TRUE(form_matches("pres:sg", "pres:sg"));
  EXPECT_FALSE(form_matches("pres:sg", "pres:pl"));
  EXPECT_FALSE(form_matches("pres", "past"));
}

TEST(Lexicon, IrregularFormsOverrideRules) {
  Lexicon lex;
  load_lexicon_text(lex, "see | verb | see | past=saw pp=seen\nchild | noun | child | pl=children\n");
  EXPECT_EQ(lex.leaf("see", "past").surface, "saw");
  EXPECT_EQ(lex.leaf("see", "pres:sg").surface, "sees");
  EXPECT_EQ(lex.leaf("see", "ing").surface, "seeing");
  EXPECT_EQ(lex.leaf("child", "pl").surface, "children");
  ASSERT_EQ(lex.leaves("saw").size(), 1u);
  EXPECT_EQ(lex.leaves("saw")[0].form, "past");
  EXPECT_EQ(code_of([&] { lex.leaf("see", "poss"); }), ErrorCode::lexicon_gap);
  EXPECT_EQ(code_of([&] { lex.leaf("saw", "base"); }), ErrorCode::lexicon_gap);
}

TEST(Lexicon, LoadErrorsNameTheLine) {
  Lexicon lex;
  EXPECT_EQ(message_of([&] { load_lexicon_text(lex, "# words\nfoo | gerundive | foo\n", "x.lex"); }),
            "InvalidInput: x.lex:2: unknown part of speech 'gerundive'");
  EXPECT_NE(message_of([&] { load_lexicon_text(lex, "foo | noun\n", "x.lex"); }).find("x.lex:1"), std::string::npos);
  EXPECT_NE(message_of([&] { load_lexicon_text(lex, "foo | noun | foo | =bad\n", "x.lex"); }).find("malformed"),
            std::string::npos);
  Lexicon dup;
  EXPECT_NE(message_of([&] { load_lexicon_text(dup, "a | noun | a\na | noun | b\n", "d.lex"); }).find("d.lex:2"),
            std::string::npos);
}

TEST(Lexicon, PossessiveStyleSwitchesSurfaces) {
  Lexicon lex;
  load_lexicon_text(lex, "barbara | proper_noun | Barbara\n");
  EXPECT_EQ(lex.leaf("barbara", "poss").surface, "Barbaras");
  lex.set_possessive_style(PossessiveStyle::apostrophe);
  EXPECT_EQ(lex.leaf("barbara", "poss").surface, "Barbara's");
  EXPECT_EQ(lex.leaves("Barbara's").size(), 1u);
  EXPECT_TRUE(lex.leaves("Barbaras").empty());
}

TEST(Grammar, LoadErrors) {
  EXPECT_EQ(code_of([] { load_grammar_text("S -> NP\n"); }), ErrorCode::invalid_input);
  EXPECT_NE(message_of([] { load_grammar_text("start S\nS -> NP |\n", "g.cfg"); }).find("g.cfg:2"),
            std::string::npos);
  EXPECT_NE(message_of([] { load_grammar_text("start S\nS -> A\nA -> B\nB -> A\n"); }).find("cycle"),
            std::string::npos);
  EXPECT_NE(message_of([] { load_grammar_text("start S\nS -> N\ntemplate x simple = S -> V\n"); }).find("no existing rule"),
            std::string::npos);
  EXPECT_NE(message_of([] { load_grammar_text("start S\nS -> N\nwhatever\n", "g.cfg"); }).find("g.cfg:3"),
            std::string::npos);
}

TEST(Realize, L1CompoundSentence) {
  const auto p = support::run_fixture("l1_quadrants");
  const Summary s = summarize(p.store, p.bundle.vocabulary, p.bundle.lexicon, *p.bundle.grammar, Tense::simple_present);
  ASSERT_TRUE(s.errors.empty());
  ASSERT_EQ(s.sentences.size(), 1u);
  EXPECT_EQ(s.sentences[0].text, "Irene occupies the right quadrant, while The Driver occupies the left quadrant.");
  EXPECT_EQ(s.sentences[0].occurrence_ids.size(), 2u);
}

TEST(Realize, ContainmentInAllTenses) {
  const IDSInstance base = schema_to_ids(containment("irene_face", "right_quadrant", "occupies"), l1().vocabulary);
  const std::map<Tense, std::string> expected = {
      {Tense::simple_present, "Irene occupies the right quadrant."},
      {Tense::simple_past, "Irene occupied the right quadrant."},
      {Tense::simple_future, "Irene will occupy the right quadrant."},
      {Tense::present_continuous, "Irene is occupying the right quadrant."},
      {Tense::past_continuous, "Irene was occupying the right quadrant."},
      {Tense::future_continuous, "Irene will be occupying the right quadrant."},
  };
  for (const auto& [tense, text] : expected) {
    IDSInstance ids = base;
    ids.tense = tense;
    EXPECT_EQ(say(ids, l1()), text) << to_string(tense);
  }
}

TEST(Realize, InVariantUsesCopula) {
  IDSInstance ids = schema_to_ids(containment("irene_face", "right_quadrant", "in"), l1().vocabulary);
  EXPECT_EQ(say(ids, l1()), "Irene is in the right quadrant.");
  ids.tense = Tense::simple_past;
  EXPECT_EQ(say(ids, l1()), "Irene was in the right quadrant.");
}

TEST(Realize, L2Sentences) {
  const auto p = support::run_fixture("l2_wayfinding");
  const Summary s = summarize(p.store, p.bundle.vocabulary, p.bundle.lexicon, *p.bundle.grammar, Tense::simple_present);
  ASSERT_TRUE(s.errors.empty()) << s.errors.front();
  std::vector<std::string> texts;
  for (const auto& x : s.sentences) texts.push_back(x.text);
  ASSERT_EQ(texts.size(), 4u);
  EXPECT_EQ(texts[0], "Barbara walks from the emergency, through the atrium lobby to the blue elevators.");
  EXPECT_EQ(texts[1], "Barbaras eyes move from the emergency sign, over the exit sign to the elevator sign.");
  EXPECT_EQ(texts[3], "While walking through the hallway, Barbaras attention is attracted by the outside view.");
}

TEST(Linearize, SingleLeafSentence) {
  const Grammar g = load_grammar_text("start S\nS -> PN\n");
  const SyntaxTree t{"S", {SyntaxTree{"PN", {}, Leaf{"PN", "barbara", "base", "Barbara"}}}, std::nullopt};
  EXPECT_EQ(linearize(t, g), "Barbara.");
}

TEST(Linearize, TwoViaPhrasesAreCommaSeparated) {
  Occurrence o{"source_path_goal",
               {{"trajector", {"barbara"}},
                {"source", {"emergency"}},
                {"via", {"corridor", "reception"}},
                {"goal", {"blue_elevators"}}},
               {{"trajector_kind", "person"}},
               between(0, 30)};
  EXPECT_EQ(say(schema_to_ids(o, l2().vocabulary), l2()),
            "Barbara walks from the emergency, through the hallway, through the reception to the blue elevators.");
  o.roles["via"].clear();
  EXPECT_EQ(say(schema_to_ids(o, l2().vocabulary), l2()), "Barbara walks from the emergency to the blue elevators.");
}

TEST(Realize, PathGoalDropsSource) {
  const Occurrence o{"path_goal", {{"trajector", {"barbara"}}, {"goal", {"pharmacy"}}}, {{"trajector_kind", "person"}},
                     between(0, 30)};
  EXPECT_EQ(say(schema_to_ids(o, l2().vocabulary, Tense::simple_past), l2()), "Barbara walked to the pharmacy.");
}

TEST(RoundTrip, EveryFixtureIdsInEveryTense) {
  for (const std::string name : {"l1_quadrants", "l2_wayfinding"}) {
    const auto p = support::run_fixture(name);
    for (Tense tense : all_tenses) {
      for (const IDSInstance& ids : build_ids(p.store, p.bundle.vocabulary, tense)) {
        const SyntaxTree tree = realize(ids, p.bundle.lexicon, *p.bundle.grammar);
        const std::string text = linearize(tree, *p.bundle.grammar);
        const auto parses = parse(text, *p.bundle.grammar, p.bundle.lexicon);
        ASSERT_FALSE(parses.empty()) << text;
        EXPECT_EQ(parses.front(), tree) << text << "\n" << parses.front().bracketed() << "\n" << tree.bracketed();
      }
    }
  }
}

TEST(Parse, QuadrantSentenceHasVerbLeaf) {
  const auto parses = parse("Irene occupies the right quadrant.", *l1().grammar, l1().lexicon);
  ASSERT_EQ(parses.size(), 1u);
  const auto leaves = parses[0].leaves();
  ASSERT_GE(leaves.size(), 2u);
  EXPECT_EQ(leaves[1].key, "occupy");
  EXPECT_EQ(leaves[1].form, "pres:sg");
}

TEST(Parse, MultiWordProperNoun) {
  const auto parses = parse("The Driver occupies the left quadrant.", *l1().grammar, l1().lexicon);
  ASSERT_EQ(parses.size(), 1u);
  EXPECT_EQ(parses[0].leaves()[0].key, "the_driver");
}

TEST(Parse, AmbiguityReturnsAllTreesInStableOrder) {
  Lexicon lex;
  load_lexicon_file(lex, support::fixture("ambiguous/attachment.lex"));
  const Grammar g = load_grammar_file(support::fixture("ambiguous/attachment.cfg"));
  const auto a = parse("Ada saw the dog with the telescope.", g, lex);
  const auto b = parse("Ada saw the dog with the telescope.", g, lex);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a, b);
  EXPECT_NE(a[0], a[1]);
  EXPECT_EQ(parse("Ada saw the dog.", g, lex).size(), 1u);
}

TEST(Parse, Errors) {
  Lexicon gap;
  load_lexicon_text(gap, "green | adjective | green\n");
  EXPECT_EQ(code_of([&] { parse("Colorless green ideas", *l1().grammar, gap); }), ErrorCode::unknown_token);
  EXPECT_EQ(code_of([] { parse("", *l1().grammar, l1().lexicon); }), ErrorCode::parse_failure);
  EXPECT_EQ(code_of([] { parse("  .", *l1().grammar, l1().lexicon); }), ErrorCode::parse_failure);
  EXPECT_EQ(code_of([] { parse("quadrant the occupies Irene.", *l1().grammar, l1().lexicon); }),
            ErrorCode::parse_failure);
}

TEST(Realize, Deterministic) {
  const auto a = support::run_fixture("l2_wayfinding");
  const auto b = support::run_fixture("l2_wayfinding");
  const auto sa = summarize(a.store, a.bundle.vocabulary, a.bundle.lexicon, *a.bundle.grammar, Tense::past_continuous);
  const auto sb = summarize(b.store, b.bundle.vocabulary, b.bundle.lexicon, *b.bundle.grammar, Tense::past_continuous);
  EXPECT_EQ(sa.text(), sb.text());
  EXPECT_EQ(to_json(sa.sentences[0]).dump(), to_json(sb.sentences[0]).dump());
}

TEST(Realize, VariantAloneSelectsVerb) {
  auto g = support::rng(47);
  const std::vector<std::string> entities = {"irene_face", "driver_face", "couple"};
  const std::vector<std::string> containers = {"left_quadrant", "right_quadrant", "top_quadrant"};
  for (int i = 0; i < 200; ++i) {
    const bool occupies = support::uniform_int(g, 0, 1) == 1;
    const double start = support::uniform_int(g, 0, 20);
    Occurrence o = containment(entities[support::uniform_int(g, 0, 2)], containers[support::uniform_int(g, 0, 2)],
                               occupies ? "occupies" : "in", between(start, start + support::uniform_int(g, 1, 4)));
    o.attributes["occupancy"] = std::to_string(support::uniform_real(g, 0, 1));
    const Tense tense = all_tenses[support::uniform_int(g, 0, 5)];
    const auto leaves = realize(schema_to_ids(o, l1().vocabulary, tense), l1().lexicon, *l1().grammar).leaves();
    const bool has_occupy = std::any_of(leaves.begin(), leaves.end(), [](const Leaf& l) { return l.key == "occupy"; });
    const bool has_in = std::any_of(leaves.begin(), leaves.end(), [](const Leaf& l) { return l.key == "in"; });
    ASSERT_EQ(has_occupy, occupies);
    ASSERT_EQ(has_in, !occupies);
  }
}

TEST(Realize, LexicalChoicesSwapWords) {
  LexicalChoices choices;
  choices.person_verb = "move";
  const Occurrence o{"path_goal", {{"trajector", {"barbara"}}, {"goal", {"pharmacy"}}}, {{"trajector_kind", "person"}},
                     between(0, 30)};
  EXPECT_EQ(say(schema_to_ids(o, l2().vocabulary), l2(), choices), "Barbara moves to the pharmacy.");
}

TEST(Realize, ApostropheFlag) {
  io::SceneBundle b = l2();
  b.lexicon.set_possessive_style(PossessiveStyle::apostrophe);
  const auto store = narrate_scene(b.scene, b.config, &*b.route_graph);
  const Summary s = summarize(store, b.vocabulary, b.lexicon, *b.grammar, Tense::simple_present);
  EXPECT_EQ(s.sentences[3].text, "While walking through the hallway, Barbara's attention is attracted by the outside view.");
  EXPECT_EQ(parse(s.sentences[3].text, *b.grammar, b.lexicon).front(), s.sentences[3].tree);
}

TEST(Gaps, VocabularyLexiconAndGrammar) {
  EXPECT_EQ(code_of([] { schema_to_ids(containment("ghost", "right_quadrant", "in"), l1().vocabulary); }),
            ErrorCode::vocabulary_gap);

  Vocabulary vocab = l1().vocabulary;
  vocab.add("ghost", {"ghost", {}, false, std::nullopt, std::nullopt, false, std::nullopt});
  const IDSInstance ids = schema_to_ids(containment("ghost", "right_quadrant", "in"), vocab);
  EXPECT_EQ(code_of([&] { realize(ids, l1().lexicon, *l1().grammar); }), ErrorCode::lexicon_gap);

  const Grammar bare = load_grammar_text("start S\nS -> CL\nCL -> NP V NP\nNP -> PN\n");
  const IDSInstance ok = schema_to_ids(containment("irene_face", "right_quadrant", "occupies"), l1().vocabulary);
  EXPECT_EQ(code_of([&] { realize(ok, l1().lexicon, bare); }), ErrorCode::grammar_gap);
}

TEST(Summarize, CollectsErrorsAndKeepsGoing) {
  const auto p = support::run_fixture("l2_wayfinding");
  Vocabulary vocab = load_vocabulary_text("barbara head=barbara\nemergency head=emergency\n"
                                          "atrium_lobby head=lobby mods=atrium\nblue_elevators head=elevator "
                                          "mods=blue number=plural\n");
  const Summary s = summarize(p.store, vocab, p.bundle.lexicon, *p.bundle.grammar, Tense::simple_present);
  ASSERT_EQ(s.sentences.size(), 1u);
  EXPECT_EQ(s.sentences[0].text, "Barbara walks from the emergency, through the atrium lobby to the blue elevators.");
  EXPECT_EQ(s.errors.size(), 3u);
}

TEST(Summarize, EmptyStoreGivesEmptySummary) {
  const Summary s = summarize(NarrativeStore{}, l1().vocabulary, l1().lexicon, *l1().grammar, Tense::simple_present);
  EXPECT_TRUE(s.sentences.empty());
  EXPECT_TRUE(s.errors.empty());
  EXPECT_EQ(s.text(), "");
}

TEST(Vocabulary, LoadErrors) {
  EXPECT_NE(message_of([] { load_vocabulary_text("a head=x number=dual\n", "v.txt"); }).find("v.txt:1"),
            std::string::npos);
  EXPECT_EQ(code_of([] { load_vocabulary_text("a colour=red\n"); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { load_vocabulary_text("a\n"); }), ErrorCode::invalid_input);
}

TEST(Tense, ParseNames) {
  for (Tense t : all_tenses) EXPECT_EQ(parse_tense(to_string(t)), t);
  EXPECT_EQ(parse_tense("past"), Tense::simple_past);
  EXPECT_FALSE(parse_tense("pluperfect").has_value());
}

TEST(SyntaxJson, RoundTrip) {
  const auto parses = parse("Irene occupies the right quadrant.", *l1().grammar, l1().lexicon);
  EXPECT_EQ(tree_from_json(to_json(parses[0])), parses[0]);
}
