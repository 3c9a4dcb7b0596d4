// Narrative construction: per-frame relation evaluation, run-length
// extraction of maximal holdings, and the full scene-to-store pipeline.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vistalk/core.hpp"
#include "vistalk/image_schemas.hpp"
#include "vistalk/motion.hpp"
#include "vistalk/scene.hpp"
#include "vistalk/spatial.hpp"
#include "vistalk/store.hpp"

namespace vistalk {

/// One fluent to evaluate at every frame, e.g. {"topology", {"irene_face", "right_quadrant"}}.
struct RelationSpec {
  std::string family;
  std::vector<std::string> args;

  friend bool operator==(const RelationSpec&, const RelationSpec&) = default;
};

/// Expands the "position" shorthand into its three axis families and checks
/// every other spec against the built-in family table.
inline std::vector<RelationSpec> expand_relation_specs(const std::vector<RelationSpec>& specs) {
  std::vector<RelationSpec> out;
  for (const auto& s : specs) {
    if (s.family == "position") {
      for (auto fam : {families::position_vertical, families::position_horizontal, families::position_depth})
        out.push_back({std::string(fam), s.args});
      continue;
    }
    Fluent(s.family, s.args);  // validates name and arity
    out.push_back(s);
  }
  return out;
}

/// Which entity's location timeline to compute, against which region layer.
struct LocalizeSpec {
  std::string entity;
  std::string layer;
};

struct SceneConfig {
  AxisPolarity polarity;
  SpatialTolerances tolerances;
  /// Fixed static band for motion families; derived from the scene diagonal when unset.
  std::optional<double> eps_motion;
  double motion_rate = 0.01;
  std::optional<double> scene_diagonal;
  /// Motion compares each frame with the frame this many grid steps earlier.
  std::size_t motion_stride = 1;
  double max_gap = default_max_gap_seconds;
  /// Shortest run, in frames, that survives smoothing. 0 and 1 keep everything.
  std::size_t min_hold = 1;
  std::vector<RelationSpec> relations;
  std::vector<LocalizeSpec> localize;
  SchemaConfig schemas;
};

struct FrameFacts {
  TimePoint at;
  std::map<Fluent, std::string> facts;

  friend bool operator==(const FrameFacts&, const FrameFacts&) = default;
};

namespace detail {

inline std::optional<RCC8> topology_of(const Observation& a, const Observation& b) {
  if (a.box && b.box) return rcc8(*a.box, *b.box);
  if (a.point && b.box) return rcc8(*a.point, *b.box);
  if (a.box && b.point) return converse(rcc8(*b.point, *a.box));
  if (a.point && b.point) return a.point->x == b.point->x && a.point->y == b.point->y ? RCC8::eq : RCC8::dc;
  return std::nullopt;
}

inline std::optional<std::string> evaluate_static(const Scene& scene, const SceneConfig& config, const RelationSpec& spec,
                                                  TimePoint t) {
  std::vector<Observation> obs;
  std::vector<EntityKind> kinds;
  for (const auto& id : spec.args) {
    auto o = scene.observe(id, t);
    auto k = scene.kind(id);
    if (!o || !k) return std::nullopt;
    obs.push_back(*o);
    kinds.push_back(*k);
  }
  const std::string& fam = spec.family;
  if (fam == families::topology || fam == families::at_location) {
    const auto r = topology_of(obs[0], obs[1]);
    if (!r) return std::nullopt;
    if (fam == families::topology) return std::string(to_string(*r));
    const bool inside = *r == RCC8::tpp || *r == RCC8::ntpp || *r == RCC8::eq;
    return inside ? std::optional<std::string>(std::string(inside_symbol)) : std::nullopt;
  }
  if (fam == families::position_vertical || fam == families::position_horizontal || fam == families::position_depth) {
    if (!obs[0].box || !obs[1].box) return std::nullopt;
    const PositionTriple p = relative_position(obs[0], obs[1], config.polarity, config.tolerances);
    if (fam == families::position_vertical) return std::string(to_string(p.vertical));
    if (fam == families::position_horizontal) return std::string(to_string(p.horizontal));
    if (!p.depth) return std::nullopt;
    return std::string(to_string(*p.depth));
  }
  if (fam == families::relative_distance) {
    return std::string(to_string(relative_distance(representative_point(obs[0], kinds[0]),
                                                   representative_point(obs[1], kinds[1]),
                                                   representative_point(obs[2], kinds[2]), config.tolerances.dist)));
  }
  if (fam == families::relative_size) {
    if (!obs[0].box || !obs[1].box) return std::nullopt;
    return std::string(to_string(relative_size(*obs[0].box, *obs[1].box, config.tolerances.size)));
  }
  return std::nullopt;
}

inline bool is_motion_family(const std::string& fam) {
  return fam == families::move || fam == families::size_motion_horizontal || fam == families::size_motion_vertical ||
         fam == families::size_motion_depth;
}

/// Region stand-in for motion sampling: a one-observation track never
/// interpolates, so regions get a constant track covering the window.
inline std::optional<Track> motion_track(const Scene& scene, const std::string& id, const Window& w) {
  if (const Track* tr = scene.track(id)) return *tr;
  if (const Region* r = scene.region(id)) {
    const auto [lo, hi] = std::minmax(w.from, w.to);
    return Track(id, EntityKind::object,
                 {Observation{lo, r->box, std::nullopt, std::nullopt}, Observation{hi, r->box, std::nullopt, std::nullopt}});
  }
  return std::nullopt;
}

inline std::optional<std::string> evaluate_motion(const Scene& scene, const SceneConfig& config, const RelationSpec& spec,
                                                  const Window& w) {
  const double eps = config.eps_motion
                         ? *config.eps_motion
                         : default_motion_epsilon(config.scene_diagonal.value_or(scene.diagonal()), w, config.motion_rate);
  try {
    if (spec.family == families::move) {
      auto a = motion_track(scene, spec.args[0], w);
      auto b = motion_track(scene, spec.args[1], w);
      if (!a || !b) return std::nullopt;
      return std::string(to_string(movement(*a, *b, w, eps, config.max_gap)));
    }
    auto a = motion_track(scene, spec.args[0], w);
    if (!a) return std::nullopt;
    const Axis axis = spec.family == families::size_motion_horizontal ? Axis::horizontal
                      : spec.family == families::size_motion_vertical ? Axis::vertical
                                                                        : Axis::depth;
    return std::string(to_string(size_motion(*a, axis, w, eps, config.max_gap).change));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::sampling_gap || e.code() == ErrorCode::geometry_missing) return std::nullopt;
    throw;
  }
}

}  // namespace detail

/// Every configured fluent that can be evaluated at t, with its relation.
/// Static families need exact observations at t; motion families compare
/// t with the frame `motion_stride` grid steps earlier, interpolating short
/// gaps. Anything that cannot be evaluated is left out.
inline FrameFacts compute_frame_relations(const Scene& scene, const SceneConfig& config, TimePoint t,
                                          const std::vector<TimePoint>& grid) {
  FrameFacts out{t, {}};
  std::optional<TimePoint> previous;
  const auto pos = std::lower_bound(grid.begin(), grid.end(), t);
  const auto stride = static_cast<std::ptrdiff_t>(std::max<std::size_t>(config.motion_stride, 1));
  if (pos != grid.end() && *pos == t && pos - grid.begin() >= stride) previous = *(pos - stride);

  for (const RelationSpec& spec : expand_relation_specs(config.relations)) {
    std::optional<std::string> rel;
    if (detail::is_motion_family(spec.family)) {
      if (previous) rel = detail::evaluate_motion(scene, config, spec, Window{*previous, t});
    } else {
      rel = detail::evaluate_static(scene, config, spec, t);
    }
    if (rel) out.facts.insert_or_assign(Fluent(spec.family, spec.args), *rel);
  }
  return out;
}

inline FrameFacts compute_frame_relations(const Scene& scene, const SceneConfig& config, TimePoint t) {
  return compute_frame_relations(scene, config, t, scene.frame_times());
}

/// Maximal runs of consecutive frames carrying the same (fluent, relation).
/// Runs shorter than `min_hold` frames are dropped; a surviving single-frame
/// run becomes a point holding.
inline std::vector<Holding> maximal_intervals(const std::vector<FrameFacts>& frames, std::size_t min_hold) {
  const std::size_t need = std::max<std::size_t>(min_hold, 1);
  std::vector<Holding> out;
  struct Run {
    std::size_t first, last;
  };
  std::map<std::pair<Fluent, std::string>, Run> open;

  auto flush = [&](const std::pair<Fluent, std::string>& key, const Run& run) {
    if (run.last - run.first + 1 >= need)
      out.push_back({key.first, key.second, Span::from_bounds(frames[run.first].at, frames[run.last].at)});
  };

  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (auto it = open.begin(); it != open.end();) {
      auto f = frames[i].facts.find(it->first.first);
      if (f == frames[i].facts.end() || f->second != it->first.second) {
        flush(it->first, it->second);
        it = open.erase(it);
      } else {
        it->second.last = i;
        ++it;
      }
    }
    for (const auto& [fluent, rel] : frames[i].facts) open.try_emplace({fluent, rel}, Run{i, i});
  }
  for (const auto& [key, run] : open) flush(key, run);
  std::sort(out.begin(), out.end(), holding_order);
  return out;
}

/// Inverse of maximal_intervals over a known frame grid: one FrameFacts per
/// grid time, listing every holding whose span covers it.
inline std::vector<FrameFacts> expand_holdings(const std::vector<Holding>& holdings, const std::vector<TimePoint>& grid) {
  std::vector<FrameFacts> out;
  out.reserve(grid.size());
  for (TimePoint t : grid) out.push_back({t, {}});
  for (const Holding& h : holdings) {
    auto lo = std::lower_bound(grid.begin(), grid.end(), h.span.start());
    auto hi = std::upper_bound(grid.begin(), grid.end(), h.span.end());
    for (auto it = lo; it != hi; ++it) out[static_cast<std::size_t>(it - grid.begin())].facts.insert_or_assign(h.fluent, h.relation);
  }
  return out;
}

/// Evaluates every configured relation on the scene's frame grid, smooths
/// into maximal holdings and adds the configured location timelines.
/// Occurrences are left to detect_schemas.
inline NarrativeStore build_narrative(const Scene& scene, const SceneConfig& config) {
  const std::vector<TimePoint> grid = scene.frame_times();
  NarrativeStore store(grid);
  for (const auto& t : scene.tracks()) store.register_entity(t.entity_id(), t.kind());
  for (const auto& r : scene.regions()) store.register_entity(r.name, EntityKind::region);

  std::vector<FrameFacts> frames;
  frames.reserve(grid.size());
  for (TimePoint t : grid) frames.push_back(compute_frame_relations(scene, config, t, grid));
  for (const Holding& h : maximal_intervals(frames, config.min_hold)) store.insert(h);

  for (const LocalizeSpec& spec : config.localize) {
    const Track* track = scene.track(spec.entity);
    if (!track) throw Error(ErrorCode::invalid_input, "localize: unknown track '" + spec.entity + "'");
    const std::vector<Region> regions = scene.layer(spec.layer);
    if (regions.empty()) throw Error(ErrorCode::invalid_input, "localize: layer '" + spec.layer + "' has no regions");
    validate_layers(regions);
    for (const Holding& h : localize(*track, regions, config.min_hold, config.max_gap)) store.insert(h);
  }
  return store;
}

/// Full pipeline: narrative construction followed by schema detection.
inline NarrativeStore narrate_scene(const Scene& scene, const SceneConfig& config, const RouteGraph* route_graph = nullptr) {
  NarrativeStore store = build_narrative(scene, config);
  detect_schemas(store, scene, config.schemas, route_graph);
  return store;
}

}  // namespace vistalk
