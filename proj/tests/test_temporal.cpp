#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "vistalk/temporal.hpp"

using namespace vistalk;

namespace {

Interval iv(int s, int e) { return make_interval(TimePoint::from_seconds(s), TimePoint::from_seconds(e)); }

}  // namespace

TEST(Allen, NamedRelations) {
  EXPECT_EQ(allen(iv(0, 2), iv(3, 5)), Allen::before);
  EXPECT_EQ(allen(iv(0, 3), iv(3, 5)), Allen::meets);
  EXPECT_EQ(allen(iv(0, 4), iv(3, 5)), Allen::overlaps);
  EXPECT_EQ(allen(iv(3, 4), iv(3, 5)), Allen::starts);
  EXPECT_EQ(allen(iv(4, 5), iv(3, 5)), Allen::finishes);
  EXPECT_EQ(allen(iv(4, 5), iv(3, 6)), Allen::during);
  EXPECT_EQ(allen(iv(3, 5), iv(3, 5)), Allen::equal);
  EXPECT_EQ(allen(iv(10, 18), iv(11, 20)), Allen::overlaps);
}

TEST(Allen, JepdAgainstDefinitionsOnRandomPairs) {
  auto g = support::rng(13);
  for (int i = 0; i < 10'000; ++i) {
    int s1 = support::uniform_int(g, 0, 20), e1 = support::uniform_int(g, 0, 20);
    int s2 = support::uniform_int(g, 0, 20), e2 = support::uniform_int(g, 0, 20);
    if (s1 == e1 || s2 == e2) continue;
    if (s1 > e1) std::swap(s1, e1);
    if (s2 > e2) std::swap(s2, e2);
    const auto matches = oracle::allen_matches({s1, e1}, {s2, e2});
    ASSERT_EQ(matches.size(), 1u);
    ASSERT_EQ(std::string(to_string(allen(iv(s1, e1), iv(s2, e2)))), matches.front());
  }
}

TEST(Allen, CompositionTableMatchesEnumeration) {
  const auto table = oracle::enumerate_composition(8);
  for (Allen r1 : all_allen) {
    for (Allen r2 : all_allen) {
      std::set<std::string> got;
      for (Allen r : compose_allen(r1, r2).members()) got.insert(std::string(to_string(r)));
      const auto it = table.find({std::string(to_string(r1)), std::string(to_string(r2))});
      ASSERT_NE(it, table.end());
      EXPECT_EQ(got, it->second) << to_string(r1) << " ; " << to_string(r2);
    }
  }
}

TEST(Allen, ConverseLawForComposition) {
  for (Allen r1 : all_allen)
    for (Allen r2 : all_allen)
      EXPECT_EQ(compose_allen(r1, r2).converse(), compose_allen(converse(r2), converse(r1)))
          << to_string(r1) << " ; " << to_string(r2);
}

TEST(Allen, ConverseOfRelation) {
  auto g = support::rng(17);
  for (int i = 0; i < 2'000; ++i) {
    const int s1 = support::uniform_int(g, 0, 9), s2 = support::uniform_int(g, 0, 9);
    const Interval a = iv(s1, s1 + support::uniform_int(g, 1, 5)), b = iv(s2, s2 + support::uniform_int(g, 1, 5));
    ASSERT_EQ(allen(b, a), converse(allen(a, b)));
  }
}

TEST(Allen, ParseAndPrint) {
  for (Allen r : all_allen) EXPECT_EQ(parse_allen(to_string(r)), r);
  EXPECT_FALSE(parse_allen("sometime").has_value());
  EXPECT_EQ(AllenSet({Allen::before, Allen::meets}).to_string(), "{before,meets}");
  EXPECT_EQ(AllenSet::all().size(), 13u);
}

TEST(Allen, CotemporalSetExcludesTouching) {
  EXPECT_EQ(cotemporal_relations.size(), 9u);
  EXPECT_FALSE(cotemporal_relations.contains(Allen::meets));
  EXPECT_TRUE(cotemporal(Span(iv(10, 18)), Span(iv(11, 20))));
  EXPECT_FALSE(cotemporal(Span(iv(0, 3)), Span(iv(3, 5))));
  EXPECT_TRUE(cotemporal(Span(TimePoint::from_seconds(4)), Span(iv(3, 5))));
}

TEST(PointRelations, PointAndInterval) {
  EXPECT_EQ(point_relation(1_s, 2_s), PointRelation::before);
  EXPECT_EQ(point_relation(2_s, 2_s), PointRelation::equals);
  const Interval i = iv(3, 5);
  EXPECT_EQ(point_interval(2_s, i), PointInterval::before);
  EXPECT_EQ(point_interval(3_s, i), PointInterval::starts);
  EXPECT_EQ(point_interval(4_s, i), PointInterval::during);
  EXPECT_EQ(point_interval(5_s, i), PointInterval::finishes);
  EXPECT_EQ(point_interval(6_s, i), PointInterval::after);
  EXPECT_EQ(interval_point(i, 2_s), IntervalPoint::after);
  EXPECT_EQ(interval_point(i, 4_s), IntervalPoint::contains);
  for (int t = 0; t < 8; ++t) {
    const TimePoint p = TimePoint::from_seconds(t);
    EXPECT_EQ(converse(interval_point(i, p)), point_interval(p, i));
  }
}
