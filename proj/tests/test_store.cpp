#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "vistalk/store.hpp"

using namespace vistalk;

namespace {

Span between(double a, double b) { return Span::from_bounds(TimePoint::from_seconds(a), TimePoint::from_seconds(b)); }

Holding topo(const std::string& a, const std::string& b, const std::string& rel, Span s) {
  return {Fluent("topology", {a, b}), rel, s};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no vistalk::Error thrown";
  return ErrorCode::invalid_input;
}

}  // namespace

TEST(Fluent, ValidatesFamilyAndArity) {
  EXPECT_EQ(code_of([] { Fluent("teleport", {"a", "b"}); }), ErrorCode::family_mismatch);
  EXPECT_EQ(code_of([] { Fluent("topology", {"a"}); }), ErrorCode::arity_mismatch);
  EXPECT_EQ(code_of([] { Fluent("size_motion_horizontal", {"a", "b"}); }), ErrorCode::arity_mismatch);
  EXPECT_EQ(code_of([] { Fluent("topology", {"a", ""}); }), ErrorCode::invalid_input);
  EXPECT_EQ(Fluent("move", {"couple", "camera"}).to_string(), "move(couple,camera)");
}

TEST(Store, RejectsForeignRelationSymbol) {
  NarrativeStore s;
  EXPECT_EQ(code_of([&] { s.insert(topo("a", "b", "approaching", between(0, 1))); }), ErrorCode::family_mismatch);
  EXPECT_EQ(s.holding_count(), 0u);
}

TEST(Store, MergesTouchingAndOverlappingSpans) {
  NarrativeStore s;
  s.insert(topo("a", "b", "po", between(0, 2)));
  s.insert(topo("a", "b", "po", between(2, 4)));
  s.insert(topo("a", "b", "po", between(6, 7)));
  s.insert(topo("a", "b", "po", between(3, 5)));
  s.insert(topo("a", "b", "dc", between(5, 6)));
  const auto hs = s.holdings();
  ASSERT_EQ(hs.size(), 3u);
  EXPECT_EQ(hs[0].to_string(), "topology(a,b) po between(0.0,5.0)");
  EXPECT_EQ(hs[1].to_string(), "topology(a,b) dc between(5.0,6.0)");
  EXPECT_EQ(hs[2].to_string(), "topology(a,b) po between(6.0,7.0)");
  s.insert(topo("a", "b", "po", Span(6.5_s)));
  EXPECT_EQ(s.holding_count(), 3u);
  s.insert(topo("a", "b", "po", Span(5_s)));
  EXPECT_EQ(s.holding_count(), 3u);
  EXPECT_EQ(s.holdings()[0].span.to_string(), "between(0.0,5.0)");
}

TEST(Store, FinalStateIndependentOfInsertionOrder) {
  auto g = support::rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Holding> hs;
    for (int i = 0; i < 30; ++i) {
      const int a = support::uniform_int(g, 0, 40), len = support::uniform_int(g, 0, 4);
      const char* rel = support::uniform_int(g, 0, 1) ? "po" : "ec";
      const char* other = support::uniform_int(g, 0, 1) ? "r1" : "r2";
      hs.push_back(topo("x", other, rel, between(a, a + len)));
    }
    NarrativeStore first;
    for (const auto& h : hs) first.insert(h);
    std::shuffle(hs.begin(), hs.end(), g);
    NarrativeStore second;
    for (const auto& h : hs) second.insert(h);
    ASSERT_EQ(first, second);
    // Maximality: stored spans of one (fluent, relation) never touch.
    const auto out = first.holdings();
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[i].fluent == out[j].fluent && out[i].relation == out[j].relation) {
          ASSERT_FALSE(out[i].span.intersects(out[j].span)) << out[i].to_string() << " / " << out[j].to_string();
        }
  }
}

TEST(Store, FixedTimelineRejectsOutsideSpans) {
  NarrativeStore s({0_s, 1_s, 2_s});
  EXPECT_EQ(code_of([&] { s.insert(topo("a", "b", "po", between(1, 3))); }), ErrorCode::out_of_timeline);
  EXPECT_NO_THROW(s.insert(topo("a", "b", "po", between(0, 2))));
  EXPECT_EQ(s.next_frame(1_s), TimePoint(2_s));
  EXPECT_FALSE(s.next_frame(2_s).has_value());
}

TEST(Store, QueryByPatternRelationAndTime) {
  NarrativeStore s;
  s.insert(topo("irene_face", "right_quadrant", "po", between(0, 9.5)));
  s.insert(topo("irene_face", "right_quadrant", "ntpp", between(10, 18)));
  s.insert(topo("driver_face", "left_quadrant", "ntpp", between(11, 20)));
  s.insert({Fluent("move", {"couple", "camera"}), "receding", between(0.5, 24)});

  const auto at12 = s.query(parse_fluent_pattern("topology(irene_face,_)"), std::nullopt, Span(12_s));
  ASSERT_EQ(at12.size(), 1u);
  EXPECT_EQ(at12[0].relation, "ntpp");

  EXPECT_EQ(s.query(parse_fluent_pattern("topology"), std::string("ntpp"), std::nullopt).size(), 2u);
  EXPECT_EQ(s.query(parse_fluent_pattern("_(_,camera)"), std::nullopt, std::nullopt).size(), 1u);
  EXPECT_EQ(s.query({}, std::nullopt, between(9.6, 9.9)).size(), 1u);
  EXPECT_TRUE(s.query({}, std::nullopt, Span(100_s)).empty());
  EXPECT_EQ(query_holds(s, {}).size(), 4u);
}

TEST(FluentPatternParse, AcceptsWildcardsAndRejectsJunk) {
  const FluentPattern p = parse_fluent_pattern(" topology( a , _ ) ");
  ASSERT_TRUE(p.name && p.args);
  EXPECT_EQ(*p.name, "topology");
  EXPECT_EQ((*p.args)[0], std::optional<std::string>("a"));
  EXPECT_FALSE((*p.args)[1].has_value());
  EXPECT_EQ(code_of([] { parse_fluent_pattern("topology(a"); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { parse_fluent_pattern("topology(a,)"); }), ErrorCode::invalid_input);
  EXPECT_EQ(code_of([] { parse_fluent_pattern("topology(a)"); }), ErrorCode::arity_mismatch);
}

TEST(Occurrences, ValidateRolesAndDeduplicate) {
  NarrativeStore s;
  Occurrence o{"containment", {{"entity", {"irene_face"}}, {"container", {"right_quadrant"}}}, {}, between(10, 18)};
  s.add_occurrence(o);
  s.add_occurrence(o);
  ASSERT_EQ(s.occurrences().size(), 1u);
  EXPECT_EQ(s.occurrences()[0].id(), "containment(container=right_quadrant,entity=irene_face)@10.0");
  EXPECT_EQ(s.entity_kind("irene_face"), EntityKind::object);

  Occurrence missing{"containment", {{"entity", {"irene_face"}}}, {}, between(10, 18)};
  EXPECT_EQ(code_of([&] { s.add_occurrence(missing); }), ErrorCode::incomplete_roles);

  NarrativeStore framed({0_s, 5_s});
  EXPECT_EQ(code_of([&] { framed.add_occurrence(o); }), ErrorCode::out_of_timeline);
}
