#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "support.hpp"
#include "vistalk/spatial.hpp"

using namespace vistalk;

TEST(Rcc8, NamedConfigurations) {
  const Box2 room(0, 0, 10, 10);
  EXPECT_EQ(rcc8(Box2(20, 0, 30, 10), room), RCC8::dc);
  EXPECT_EQ(rcc8(Box2(10, 0, 20, 10), room), RCC8::ec);
  EXPECT_EQ(rcc8(Box2(10, 10, 20, 20), room), RCC8::ec);  // corner contact
  EXPECT_EQ(rcc8(Box2(5, 5, 15, 15), room), RCC8::po);
  EXPECT_EQ(rcc8(Box2(0, 0, 10, 10), room), RCC8::eq);
  EXPECT_EQ(rcc8(Box2(0, 2, 5, 8), room), RCC8::tpp);
  EXPECT_EQ(rcc8(Box2(2, 2, 8, 8), room), RCC8::ntpp);
  EXPECT_EQ(rcc8(room, Box2(0, 2, 5, 8)), RCC8::tpp_i);
  EXPECT_EQ(rcc8(room, Box2(2, 2, 8, 8)), RCC8::ntpp_i);
}

TEST(Rcc8, QuadrantFaceIsNonTangentialPart) {
  const Box2 right_quadrant(960, 0, 1920, 1080);
  EXPECT_EQ(rcc8(Box2(1040, 130, 1880, 1000), right_quadrant), RCC8::ntpp);
  EXPECT_EQ(rcc8(Box2(800, 130, 1640, 1000), right_quadrant), RCC8::po);
}

TEST(Rcc8, PointAgainstBox) {
  const Box2 sign(900, 100, 1100, 200);
  EXPECT_EQ(rcc8(Point2{1000, 150}, sign), RCC8::ntpp);
  EXPECT_EQ(rcc8(Point2{900, 150}, sign), RCC8::tpp);
  EXPECT_EQ(rcc8(Point2{640, 400}, sign), RCC8::dc);
}

TEST(Rcc8, MatchesGridOracleOnRandomPairs) {
  auto g = support::rng(7);
  std::map<std::string, int> seen;
  for (int i = 0; i < 10'000; ++i) {
    const auto [a, b] = oracle::random_pair(g);
    const std::string expected = oracle::rcc8_by_sampling(a, b);
    // Power-of-two scales keep the coordinates exact in floating point.
    const double scale = std::ldexp(1.0, support::uniform_int(g, -3, 6));
    const RCC8 got = rcc8(oracle::to_box(a, scale), oracle::to_box(b, scale));
    ASSERT_EQ(std::string(to_string(got)), expected)
        << "a=[" << a.x0 << "," << a.y0 << "," << a.x1 << "," << a.y1 << "] b=[" << b.x0 << "," << b.y0 << ","
        << b.x1 << "," << b.y1 << "]";
    ++seen[expected];
  }
  for (RCC8 r : all_rcc8) EXPECT_GT(seen[std::string(to_string(r))], 50) << to_string(r);
}

TEST(Rcc8, ConverseLaw) {
  auto g = support::rng(11);
  for (int i = 0; i < 5'000; ++i) {
    const auto [a, b] = oracle::random_pair(g);
    const Box2 ba = oracle::to_box(a), bb = oracle::to_box(b);
    ASSERT_EQ(rcc8(bb, ba), converse(rcc8(ba, bb)));
  }
  for (RCC8 r : all_rcc8) EXPECT_EQ(converse(converse(r)), r);
}

TEST(Position, ImageCoordinatesPutSmallerYAbove) {
  const Observation irene{12_s, Box2(1040, 130, 1880, 1000), std::nullopt, std::nullopt};
  const Observation driver{12_s, Box2(40, 130, 880, 1000), std::nullopt, std::nullopt};
  const PositionTriple p = relative_position(irene, driver);
  EXPECT_EQ(to_string(p.horizontal), "right");
  EXPECT_EQ(to_string(p.vertical), "vertically_equal");
  EXPECT_FALSE(p.depth.has_value());

  const Observation high{0_s, Box2(0, 0, 10, 10), std::nullopt, std::nullopt};
  const Observation low{0_s, Box2(0, 20, 10, 30), std::nullopt, std::nullopt};
  EXPECT_EQ(to_string(relative_position(high, low).vertical), "above");
  AxisPolarity world;
  world.vertical = Polarity::decreasing;  // y grows upward
  EXPECT_EQ(to_string(relative_position(high, low, world).vertical), "below");
}

TEST(Position, SevenSymbolsAlongOneAxis) {
  const Extent b{10, 20};
  EXPECT_EQ(position_1d({0, 5}, b), Pos1D::first);
  EXPECT_EQ(position_1d({0, 10}, b), Pos1D::along_first);
  EXPECT_EQ(position_1d({0, 15}, b), Pos1D::overlaps_first);
  EXPECT_EQ(position_1d({10, 20}, b), Pos1D::equal);
  EXPECT_EQ(position_1d({15, 25}, b), Pos1D::overlaps_second);
  EXPECT_EQ(position_1d({20, 30}, b), Pos1D::along_second);
  EXPECT_EQ(position_1d({25, 30}, b), Pos1D::second);
  // Containment falls back to comparing midpoints.
  EXPECT_EQ(position_1d({11, 13}, b), Pos1D::overlaps_first);
  EXPECT_EQ(position_1d({12, 18}, b), Pos1D::equal);
}

TEST(Position, ConverseOnRandomExtents) {
  auto g = support::rng(5);
  for (int i = 0; i < 5'000; ++i) {
    const auto a = oracle::random_rect(g, 0, 10), b = oracle::random_rect(g, 0, 10);
    const Extent ea{double(a.x0), double(a.x1)}, eb{double(b.x0), double(b.x1)};
    ASSERT_EQ(position_1d(eb, ea), converse(position_1d(ea, eb)));
  }
}

TEST(Position, DepthUsesToleranceBand) {
  const Observation a{0_s, Box2(0, 0, 1, 1), std::nullopt, 2.0};
  const Observation b{0_s, Box2(0, 0, 1, 1), std::nullopt, 2.4};
  const Observation c{0_s, Box2(0, 0, 1, 1), std::nullopt, 5.0};
  EXPECT_EQ(to_string(*relative_position(a, b).depth), "overlaps_closer");
  EXPECT_EQ(to_string(*relative_position(a, c).depth), "closer");
  SpatialTolerances wide;
  wide.depth = 2.0;
  EXPECT_EQ(to_string(*relative_position(a, c, {}, wide).depth), "overlaps_closer");
}

TEST(Position, MissingBoxIsGeometryMissing) {
  const Observation p{0_s, std::nullopt, Point2{1, 1}, std::nullopt};
  const Observation b{0_s, Box2(0, 0, 1, 1), std::nullopt, std::nullopt};
  try {
    relative_position(p, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::geometry_missing);
  }
}

TEST(RelativeDistance, ClosestWins) {
  EXPECT_EQ(relative_distance({1, 0}, {3, 0}, {0, 0}), DistRelation::closer);
  EXPECT_EQ(relative_distance({3, 0}, {1, 0}, {0, 0}), DistRelation::further);
  EXPECT_EQ(relative_distance({0, 2}, {2, 0}, {0, 0}), DistRelation::same);
  EXPECT_EQ(relative_distance({1.9, 0}, {2, 0}, {0, 0}, 0.2), DistRelation::same);
}

TEST(RelativeSize, RelativeTolerance) {
  EXPECT_EQ(relative_size(Box2(0, 0, 1, 1), Box2(0, 0, 2, 2)), SizeRelation::smaller);
  EXPECT_EQ(relative_size(Box2(0, 0, 2, 2), Box2(0, 0, 1, 1)), SizeRelation::bigger);
  EXPECT_EQ(relative_size(Box2(0, 0, 10, 10), Box2(0, 0, 10, 10.4)), SizeRelation::same);
  EXPECT_EQ(relative_size(Box2(0, 0, 10, 10), Box2(0, 0, 10, 10.4), 0.0), SizeRelation::smaller);
}
