#include <gtest/gtest.h>

#include "support.hpp"
#include "vistalk/motion.hpp"

using namespace vistalk;

namespace {

Observation at_box(double t, double x0, double y0, double x1, double y1, std::optional<double> depth = std::nullopt) {
  return {TimePoint::from_seconds(t), Box2(x0, y0, x1, y1), std::nullopt, depth};
}

Track camera() { return Track("camera", EntityKind::camera, {{0_s, std::nullopt, Point2{0, 0}, std::nullopt},
                                                              {1_s, std::nullopt, Point2{0, 0}, std::nullopt}}); }

Track walker(double x0, double x1) {
  return Track("walker", EntityKind::person, {at_box(0, x0 - 1, -1, x0 + 1, 1), at_box(1, x1 - 1, -1, x1 + 1, 1)});
}

}  // namespace

TEST(Movement, ApproachRecedeStatic) {
  const Window w{0_s, 1_s};
  EXPECT_EQ(movement(walker(10, 5), camera(), w, 0.1), MoveRelation::approaching);
  EXPECT_EQ(movement(walker(5, 10), camera(), w, 0.1), MoveRelation::receding);
  EXPECT_EQ(movement(walker(5, 5.05), camera(), w, 0.1), MoveRelation::static_);
  EXPECT_EQ(movement(walker(5, 5.05), camera(), w, 0.0), MoveRelation::receding);
}

TEST(Movement, ReversedWindowFlipsDirection) {
  const Window w{0_s, 1_s};
  for (double end : {2.0, 5.0, 9.0}) {
    const MoveRelation forward = movement(walker(5, end), camera(), w, 0.1);
    const MoveRelation backward = movement(walker(5, end), camera(), w.reversed(), 0.1);
    if (forward == MoveRelation::static_)
      EXPECT_EQ(backward, MoveRelation::static_);
    else
      EXPECT_NE(forward, backward);
  }
}

TEST(Movement, IsSymmetricInItsArguments) {
  const Window w{0_s, 1_s};
  EXPECT_EQ(movement(camera(), walker(10, 5), w, 0.1), movement(walker(10, 5), camera(), w, 0.1));
}

TEST(Movement, ZeroLengthWindowIsDegenerate) {
  try {
    movement(walker(1, 2), camera(), Window{1_s, 1_s}, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_interval);
  }
}

TEST(SampleTrack, InterpolatesInsideSmallGaps) {
  const Track t("w", EntityKind::person, {at_box(0, 0, 0, 2, 2, 1.0), at_box(0.4, 4, 0, 6, 2, 3.0)});
  const Observation mid = sample_track(t, 0.2_s);
  ASSERT_TRUE(mid.box.has_value());
  EXPECT_DOUBLE_EQ(mid.box->xmin(), 2.0);
  EXPECT_DOUBLE_EQ(*mid.depth, 2.0);
  EXPECT_EQ(sample_track(t, 0.4_s), t.observations().back());
}

TEST(SampleTrack, LargeGapsAndOutsideRangeAreSamplingGaps) {
  const Track t("w", EntityKind::person, {at_box(0, 0, 0, 2, 2), at_box(2, 4, 0, 6, 2)});
  for (TimePoint q : {1_s, 3_s}) {
    try {
      sample_track(t, q);
      FAIL() << format_seconds(q);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::sampling_gap);
    }
  }
  EXPECT_NO_THROW(sample_track(t, 1_s, 2.0));
}

TEST(SizeMotion, WidthHeightAndDepth) {
  const Track t("w", EntityKind::person, {at_box(0, 0, 0, 2, 4, 5.0), at_box(1, 0, 0, 4, 4, 3.0)});
  const Window w{0_s, 1_s};
  EXPECT_EQ(size_motion(t, Axis::horizontal, w, 0.1).change, SizeChange::elongating);
  EXPECT_EQ(size_motion(t, Axis::vertical, w, 0.1).change, SizeChange::static_);
  EXPECT_EQ(size_motion(t, Axis::depth, w, 0.1).change, SizeChange::shortening);
  EXPECT_EQ(size_motion(t, Axis::horizontal, w.reversed(), 0.1).change, SizeChange::shortening);
  EXPECT_EQ(size_motion(t, Axis::horizontal, w, 5.0).change, SizeChange::static_);
}

TEST(SizeMotion, DepthNeedsDepthReadings) {
  const Track t("w", EntityKind::person, {at_box(0, 0, 0, 2, 4), at_box(1, 0, 0, 4, 4)});
  try {
    size_motion(t, Axis::depth, Window{0_s, 1_s}, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::geometry_missing);
  }
}

TEST(MotionEpsilon, ScalesWithDiagonalAndWindow) {
  EXPECT_DOUBLE_EQ(default_motion_epsilon(1000.0, Window{0_s, 0.5_s}), 5.0);
  EXPECT_DOUBLE_EQ(default_motion_epsilon(1000.0, Window{2_s, 0_s}, 0.02), 40.0);
}
