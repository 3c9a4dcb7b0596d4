// Image-schema detection over a narrative store: CONTAINMENT,
// SOURCE_PATH_GOAL, PATH_GOAL and ATTRACTION, with the annotations the
// language generator needs for lexical choice.
#pragma once

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vistalk/core.hpp"
#include "vistalk/scene.hpp"
#include "vistalk/spatial.hpp"
#include "vistalk/store.hpp"

namespace vistalk {

/// Topological route graph over named locations.
class RouteGraph {
 public:
  struct Node {
    std::string name;
    std::string region;
  };

  RouteGraph() = default;

  RouteGraph(std::vector<Node> nodes, const std::vector<std::pair<std::string, std::string>>& edges)
      : nodes_(std::move(nodes)) {
    for (const auto& n : nodes_) {
      if (n.name.empty() || n.region.empty())
        throw Error(ErrorCode::invalid_input, "route graph node needs a name and a region");
      if (!by_region_.emplace(n.region, n.name).second)
        throw Error(ErrorCode::invalid_input, "region '" + n.region + "' bound to two route nodes");
      if (!names_.insert(n.name).second) throw Error(ErrorCode::invalid_input, "duplicate route node '" + n.name + "'");
    }
    for (const auto& [a, b] : edges) {
      if (!names_.count(a) || !names_.count(b))
        throw Error(ErrorCode::invalid_input, "edge " + a + "-" + b + " references an unknown node");
      edges_.insert(std::minmax(a, b));
    }
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }

  std::optional<std::string> node_for_region(const std::string& region) const {
    auto it = by_region_.find(region);
    if (it == by_region_.end()) return std::nullopt;
    return it->second;
  }

  bool adjacent(const std::string& a, const std::string& b) const { return edges_.count(std::minmax(a, b)) > 0; }

  /// True when every listed node is reachable from the first.
  bool connected(const std::vector<std::string>& subset) const {
    if (subset.empty()) return true;
    std::set<std::string> seen{subset.front()};
    std::vector<std::string> stack{subset.front()};
    while (!stack.empty()) {
      const std::string cur = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges_) {
        const std::string* other = a == cur ? &b : (b == cur ? &a : nullptr);
        if (other && seen.insert(*other).second) stack.push_back(*other);
      }
    }
    return std::all_of(subset.begin(), subset.end(), [&](const std::string& n) { return seen.count(n) > 0; });
  }

  /// Checks every node's region exists among `regions`.
  void validate_against(const std::vector<Region>& regions) const {
    for (const auto& n : nodes_) {
      const bool found =
          std::any_of(regions.begin(), regions.end(), [&](const Region& r) { return r.name == n.region; });
      if (!found) throw Error(ErrorCode::invalid_input, "route node '" + n.name + "' has unknown region '" + n.region + "'");
    }
  }

 private:
  std::vector<Node> nodes_;
  std::set<std::string> names_;
  std::map<std::string, std::string> by_region_;
  std::set<std::pair<std::string, std::string>> edges_;
};

// ---------------------------------------------------------------------------
// Localisation

inline constexpr std::string_view inside_symbol = "inside";

/// Location-membership timeline of a track over a set of regions: one
/// at_location(entity, region) holding per maximal run of observations whose
/// representative point lies in the region. Observations further apart than
/// `max_gap` seconds break runs; runs shorter than `min_hold` observations
/// are dropped.
inline std::vector<Holding> localize(const Track& track, const std::vector<Region>& regions,
                                     std::size_t min_hold = 1, double max_gap = 0.5) {
  std::vector<Holding> out;
  std::optional<std::string> current;
  std::size_t run_len = 0;
  TimePoint run_start, run_end;

  auto close_run = [&] {
    if (current && run_len >= std::max<std::size_t>(min_hold, 1))
      out.push_back({Fluent(std::string(families::at_location), {track.entity_id(), *current}),
                     std::string(inside_symbol), Span::from_bounds(run_start, run_end)});
    current.reset();
    run_len = 0;
  };

  for (const Observation& o : track.observations()) {
    const Point2 p = representative_point(o, track.kind());
    const Region* hit = nullptr;
    for (const auto& r : regions) {
      if (!r.box.contains_closed(p)) continue;
      if (hit)
        throw Error(ErrorCode::ambiguous_location, track.entity_id() + " at t=" + format_seconds(o.at) + " lies in both '" +
                                                       hit->name + "' and '" + r.name + "'");
      hit = &r;
    }
    const bool gap = run_len > 0 && (o.at.seconds() - run_end.seconds()) > max_gap;
    if (!hit || gap || (current && *current != hit->name)) close_run();
    if (!hit) continue;
    if (!current) {
      current = hit->name;
      run_start = o.at;
    }
    run_end = o.at;
    ++run_len;
  }
  close_run();
  std::sort(out.begin(), out.end(), holding_order);
  return out;
}

// ---------------------------------------------------------------------------
// CONTAINMENT

enum class ContainmentVariant { in, occupies };

inline std::string_view to_string(ContainmentVariant v) { return v == ContainmentVariant::in ? "in" : "occupies"; }

struct ContainmentOccurrence {
  std::string entity;
  std::string container;
  Span span;
  ContainmentVariant variant;
  double min_occupancy;

  Occurrence to_occurrence() const {
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.4f", min_occupancy);
    return {std::string(occurrence_kinds::containment),
            {{"entity", {entity}}, {"container", {container}}},
            {{"lexical_variant", std::string(to_string(variant))}, {"occupancy", ratio}},
            span};
  }
};

inline constexpr double default_occupancy_threshold = 0.6;

namespace detail {
/// Merges spans that are consecutive on the store's frame grid.
inline std::vector<Span> join_consecutive(const NarrativeStore& store, std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<Span> out;
  for (const Span& s : spans) {
    if (!out.empty()) {
      const Span& last = out.back();
      const auto next = store.next_frame(last.end());
      if (s.start() <= last.end() || (next && *next == s.start())) {
        out.back() = Span::from_bounds(last.start(), std::max(last.end(), s.end()));
        continue;
      }
    }
    out.push_back(s);
  }
  return out;
}
}  // namespace detail

/// One occurrence per maximal stretch of frames during which the entity is
/// a proper part of (or equal to) the container. The variant is `occupies`
/// when the entity's area covers at least `occupancy_threshold` of the
/// container's area at every observed frame of the stretch, `in` otherwise.
inline std::vector<ContainmentOccurrence> detect_containment(const NarrativeStore& store, const Scene& scene,
                                                             const std::string& entity, const std::string& container,
                                                             double occupancy_threshold = default_occupancy_threshold) {
  std::vector<Span> spans;
  const FluentPattern pattern{std::string(families::topology), {{entity, container}}};
  for (const Holding& h : store.query(pattern, std::nullopt, std::nullopt))
    if (h.relation == "tpp" || h.relation == "ntpp" || h.relation == "eq") spans.push_back(h.span);

  std::vector<ContainmentOccurrence> out;
  for (const Span& span : detail::join_consecutive(store, spans)) {
    double min_ratio = std::numeric_limits<double>::infinity();
    bool any = false;
    for (TimePoint t : store.frames()) {
      if (!span.contains(t)) continue;
      const auto e = scene.observe(entity, t);
      const auto c = scene.observe(container, t);
      if (!e || !c) continue;
      const double ratio = (e->box && c->box) ? e->box->area() / c->box->area() : 0.0;
      min_ratio = std::min(min_ratio, ratio);
      any = true;
    }
    if (!any) min_ratio = 0.0;
    const auto variant = min_ratio >= occupancy_threshold ? ContainmentVariant::occupies : ContainmentVariant::in;
    out.push_back({entity, container, span, variant, min_ratio});
  }
  return out;
}

// ---------------------------------------------------------------------------
// SOURCE_PATH_GOAL / PATH_GOAL

enum class TrajectorKind { person, gaze };

inline std::string_view to_string(TrajectorKind k) { return k == TrajectorKind::gaze ? "gaze" : "person"; }

struct SourcePathGoalOccurrence {
  std::string trajector;
  std::string source;
  std::vector<std::string> via;
  std::string goal;
  Span span;
  TrajectorKind trajector_kind;

  Occurrence to_occurrence() const {
    return {std::string(occurrence_kinds::source_path_goal),
            {{"trajector", {trajector}}, {"source", {source}}, {"via", via}, {"goal", {goal}}},
            {{"trajector_kind", std::string(to_string(trajector_kind))}},
            span};
  }
};

struct PathGoalOccurrence {
  std::string trajector;
  std::string goal;
  Span span;
  TrajectorKind trajector_kind;

  Occurrence to_occurrence() const {
    return {std::string(occurrence_kinds::path_goal),
            {{"trajector", {trajector}}, {"goal", {goal}}},
            {{"trajector_kind", std::string(to_string(trajector_kind))}},
            span};
  }
};

inline constexpr double default_max_transition_gap = 2.0;

/// Splits the trajector's location timeline into walks. A walk ends where
/// consecutive locations are more than `max_transition_gap` seconds apart
/// or, for person trajectors with a route graph, where the next location is
/// not adjacent to the previous one. Each walk over at least two locations
/// yields one occurrence: first location is the source, last the goal,
/// everything in between (minus source and goal) the path.
inline std::vector<SourcePathGoalOccurrence> detect_source_path_goal(const NarrativeStore& store,
                                                                     const std::string& trajector,
                                                                     const RouteGraph* route_graph = nullptr,
                                                                     double max_transition_gap = default_max_transition_gap) {
  const auto ekind = store.entity_kind(trajector);
  const TrajectorKind tkind = ekind == EntityKind::gaze ? TrajectorKind::gaze : TrajectorKind::person;

  struct Visit {
    std::string location;
    Span span;
  };
  std::vector<Visit> visits;
  const FluentPattern pattern{std::string(families::at_location), {{trajector, std::nullopt}}};
  for (const Holding& h : store.query(pattern, std::string(inside_symbol), std::nullopt)) {
    const std::string& loc = h.fluent.args()[1];
    if (!visits.empty() && visits.back().location == loc &&
        h.span.start().seconds() - visits.back().span.end().seconds() <= max_transition_gap) {
      visits.back().span = Span::from_bounds(visits.back().span.start(), h.span.end());
      continue;
    }
    visits.push_back({loc, h.span});
  }

  auto linked = [&](const Visit& a, const Visit& b) {
    if (b.span.start().seconds() - a.span.end().seconds() > max_transition_gap) return false;
    if (tkind == TrajectorKind::person && route_graph) {
      const auto na = route_graph->node_for_region(a.location);
      const auto nb = route_graph->node_for_region(b.location);
      return na && nb && route_graph->adjacent(*na, *nb);
    }
    return true;
  };

  std::vector<SourcePathGoalOccurrence> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= visits.size(); ++i) {
    if (i < visits.size() && linked(visits[i - 1], visits[i])) continue;
    if (i - begin >= 2) {
      SourcePathGoalOccurrence occ{trajector, visits[begin].location, {}, visits[i - 1].location,
                                   Span::from_bounds(visits[begin].span.start(), visits[i - 1].span.end()), tkind};
      for (std::size_t k = begin + 1; k + 1 < i; ++k)
        if (visits[k].location != occ.source && visits[k].location != occ.goal) occ.via.push_back(visits[k].location);
      out.push_back(std::move(occ));
    }
    begin = i;
  }
  return out;
}

/// PATH_GOAL: the same walks with source and path suppressed.
inline std::vector<PathGoalOccurrence> detect_path_goal(const NarrativeStore& store, const std::string& trajector,
                                                        const RouteGraph* route_graph = nullptr,
                                                        double max_transition_gap = default_max_transition_gap) {
  std::vector<PathGoalOccurrence> out;
  for (const auto& spg : detect_source_path_goal(store, trajector, route_graph, max_transition_gap))
    out.push_back({spg.trajector, spg.goal, spg.span, spg.trajector_kind});
  return out;
}

// ---------------------------------------------------------------------------
// ATTRACTION

struct AttractionOccurrence {
  std::string entity;
  std::string attractor;
  Span span;
  double dwell;

  Occurrence to_occurrence() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", dwell);
    return {std::string(occurrence_kinds::attraction),
            {{"entity", {entity}}, {"attractor", {attractor}}},
            {{"dwell", buf}},
            span};
  }
};

inline constexpr double default_attraction_threshold = 2.0;

/// One occurrence per gaze-in-region holding lasting at least the threshold.
inline std::vector<AttractionOccurrence> detect_attraction(const NarrativeStore& store, const std::string& gaze_entity,
                                                           const std::vector<std::string>& attractors,
                                                           double attraction_threshold = default_attraction_threshold) {
  std::vector<AttractionOccurrence> out;
  const FluentPattern pattern{std::string(families::at_location), {{gaze_entity, std::nullopt}}};
  for (const Holding& h : store.query(pattern, std::string(inside_symbol), std::nullopt)) {
    const std::string& region = h.fluent.args()[1];
    if (std::find(attractors.begin(), attractors.end(), region) == attractors.end()) continue;
    if (h.span.duration() >= attraction_threshold) out.push_back({gaze_entity, region, h.span, h.span.duration()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Detector configuration

struct ContainmentSpec {
  std::string entity;
  std::string container;
};

struct AttractionSpec {
  std::string entity;
  std::vector<std::string> attractors;
};

struct SchemaConfig {
  std::vector<ContainmentSpec> containment;
  double occupancy_threshold = default_occupancy_threshold;
  std::vector<std::string> source_path_goal;
  std::vector<std::string> path_goal;
  std::vector<AttractionSpec> attraction;
  double attraction_threshold = default_attraction_threshold;
  double max_transition_gap = default_max_transition_gap;
};

/// Runs every configured detector and adds the occurrences to the store.
inline void detect_schemas(NarrativeStore& store, const Scene& scene, const SchemaConfig& config,
                           const RouteGraph* route_graph = nullptr) {
  std::vector<Occurrence> found;
  for (const auto& spec : config.containment)
    for (const auto& c : detect_containment(store, scene, spec.entity, spec.container, config.occupancy_threshold))
      found.push_back(c.to_occurrence());
  for (const auto& t : config.source_path_goal)
    for (const auto& o : detect_source_path_goal(store, t, route_graph, config.max_transition_gap))
      found.push_back(o.to_occurrence());
  for (const auto& t : config.path_goal)
    for (const auto& o : detect_path_goal(store, t, route_graph, config.max_transition_gap))
      found.push_back(o.to_occurrence());
  for (const auto& spec : config.attraction)
    for (const auto& o : detect_attraction(store, spec.entity, spec.attractors, config.attraction_threshold))
      found.push_back(o.to_occurrence());
  for (auto& occ : found) store.add_occurrence(std::move(occ));
}

}  // namespace vistalk
