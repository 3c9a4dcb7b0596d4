// Qualitative motion: change of inter-object distance and of per-axis size
// across a time window.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "vistalk/core.hpp"
#include "vistalk/spatial.hpp"

namespace vistalk {

enum class MoveRelation { approaching, receding, static_ };

inline std::string_view to_string(MoveRelation r) {
  switch (r) {
    case MoveRelation::approaching: return "approaching";
    case MoveRelation::receding: return "receding";
    case MoveRelation::static_: return "static";
  }
  return "static";
}

enum class SizeChange { elongating, shortening, static_ };

inline std::string_view to_string(SizeChange r) {
  switch (r) {
    case SizeChange::elongating: return "elongating";
    case SizeChange::shortening: return "shortening";
    case SizeChange::static_: return "static";
  }
  return "static";
}

struct SizeMotionRelation {
  Axis axis;
  SizeChange change;

  friend bool operator==(const SizeMotionRelation&, const SizeMotionRelation&) = default;
};

/// Comparison window (from, to). Reversed windows are allowed and flip the
/// direction of every change.
struct Window {
  TimePoint from;
  TimePoint to;

  Window reversed() const { return {to, from}; }
  double seconds() const { return std::abs(to.seconds() - from.seconds()); }
};

inline constexpr double default_max_gap_seconds = 0.5;

/// The track's state at t: the exact observation, or a linear interpolation
/// between the neighbouring observations when they are at most `max_gap`
/// seconds apart.
inline Observation sample_track(const Track& track, TimePoint t, double max_gap = default_max_gap_seconds) {
  if (const Observation* o = track.at(t)) return *o;
  const auto& obs = track.observations();
  auto next = std::lower_bound(obs.begin(), obs.end(), t, [](const Observation& o, TimePoint v) { return o.at < v; });
  if (next == obs.begin() || next == obs.end())
    throw Error(ErrorCode::sampling_gap, track.entity_id() + " not observed around t=" + format_seconds(t));
  auto prev = std::prev(next);
  const double gap = next->at.seconds() - prev->at.seconds();
  if (gap > max_gap)
    throw Error(ErrorCode::sampling_gap, track.entity_id() + ": gap of " + std::to_string(gap) + " s around t=" +
                                             format_seconds(t));
  const double f = (t.seconds() - prev->at.seconds()) / gap;
  auto lerp = [f](double a, double b) { return a + (b - a) * f; };

  Observation out{t, std::nullopt, std::nullopt, std::nullopt};
  if (prev->box && next->box) {
    out.box = Box2(lerp(prev->box->xmin(), next->box->xmin()), lerp(prev->box->ymin(), next->box->ymin()),
                   lerp(prev->box->xmax(), next->box->xmax()), lerp(prev->box->ymax(), next->box->ymax()));
  }
  if (prev->point && next->point) out.point = Point2{lerp(prev->point->x, next->point->x), lerp(prev->point->y, next->point->y)};
  if (prev->depth && next->depth) out.depth = lerp(*prev->depth, *next->depth);
  if (!out.box && !out.point)
    throw Error(ErrorCode::sampling_gap, track.entity_id() + ": neighbouring observations share no geometry");
  return out;
}

/// Static band for motion classification: `rate` of the scene diagonal per
/// second, scaled by the window duration.
inline double default_motion_epsilon(double scene_diagonal, const Window& w, double rate = 0.01) {
  return rate * scene_diagonal * w.seconds();
}

/// Relative movement of two tracks: approaching when the distance between
/// their representative points shrinks by more than eps across the window.
inline MoveRelation movement(const Track& a, const Track& b, const Window& w, double eps_motion,
                             double max_gap = default_max_gap_seconds) {
  if (w.from == w.to) throw Error(ErrorCode::degenerate_interval, "motion window of zero length");
  auto dist_at = [&](TimePoint t) {
    return distance(representative_point(sample_track(a, t, max_gap), a.kind()),
                    representative_point(sample_track(b, t, max_gap), b.kind()));
  };
  const double d0 = dist_at(w.from);
  const double d1 = dist_at(w.to);
  if (d1 < d0 - eps_motion) return MoveRelation::approaching;
  if (d1 > d0 + eps_motion) return MoveRelation::receding;
  return MoveRelation::static_;
}

/// Per-axis size change of one track. Horizontal and vertical use the box
/// extent; the depth axis uses the scalar depth reading.
inline SizeMotionRelation size_motion(const Track& track, Axis axis, const Window& w, double eps_motion,
                                      double max_gap = default_max_gap_seconds) {
  if (w.from == w.to) throw Error(ErrorCode::degenerate_interval, "motion window of zero length");
  auto extent_at = [&](TimePoint t) {
    const Observation o = sample_track(track, t, max_gap);
    if (axis == Axis::depth) {
      if (!o.depth) throw Error(ErrorCode::geometry_missing, track.entity_id() + ": no depth at t=" + format_seconds(t));
      return *o.depth;
    }
    if (!o.box) throw Error(ErrorCode::geometry_missing, track.entity_id() + ": no box at t=" + format_seconds(t));
    return axis == Axis::horizontal ? o.box->width() : o.box->height();
  };
  const double e0 = extent_at(w.from);
  const double e1 = extent_at(w.to);
  if (e1 > e0 + eps_motion) return {axis, SizeChange::elongating};
  if (e1 < e0 - eps_motion) return {axis, SizeChange::shortening};
  return {axis, SizeChange::static_};
}

}  // namespace vistalk
