// Scene geometry: tracks plus named static regions, with per-entity lookup.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vistalk/core.hpp"
#include "vistalk/spatial.hpp"

namespace vistalk {

/// A named static region. Regions sharing a layer partition space for
/// localisation and must be interior-disjoint.
struct Region {
  std::string name;
  Box2 box;
  std::string layer = "default";

  friend bool operator==(const Region&, const Region&) = default;
};

/// Throws InvalidInput if two regions of the same layer overlap.
inline void validate_layers(const std::vector<Region>& regions) {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (regions[i].layer != regions[j].layer) continue;
      const RCC8 r = rcc8(regions[i].box, regions[j].box);
      if (r != RCC8::dc && r != RCC8::ec)
        throw Error(ErrorCode::invalid_input, "regions '" + regions[i].name + "' and '" + regions[j].name +
                                                  "' overlap in layer '" + regions[i].layer + "' (" +
                                                  std::string(to_string(r)) + ")");
    }
  }
}

class Scene {
 public:
  Scene() = default;

  Scene(std::vector<Track> tracks, std::vector<Region> regions)
      : tracks_(std::move(tracks)), regions_(std::move(regions)) {
    for (std::size_t i = 0; i < tracks_.size(); ++i) index(tracks_[i].entity_id(), {true, i});
    for (std::size_t i = 0; i < regions_.size(); ++i) index(regions_[i].name, {false, i});
  }

  const std::vector<Track>& tracks() const { return tracks_; }
  const std::vector<Region>& regions() const { return regions_; }

  const Track* track(const std::string& id) const {
    auto it = index_.find(id);
    return it != index_.end() && it->second.is_track ? &tracks_[it->second.pos] : nullptr;
  }

  const Region* region(const std::string& id) const {
    auto it = index_.find(id);
    return it != index_.end() && !it->second.is_track ? &regions_[it->second.pos] : nullptr;
  }

  std::optional<EntityKind> kind(const std::string& id) const {
    if (const Track* t = track(id)) return t->kind();
    if (region(id)) return EntityKind::region;
    return std::nullopt;
  }

  std::vector<Region> layer(const std::string& name) const {
    std::vector<Region> out;
    for (const auto& r : regions_)
      if (r.layer == name) out.push_back(r);
    return out;
  }

  /// Geometry of an entity at exactly t. Regions are observed at all times.
  std::optional<Observation> observe(const std::string& id, TimePoint t) const {
    if (const Track* tr = track(id)) {
      if (const Observation* o = tr->at(t)) return *o;
      return std::nullopt;
    }
    if (const Region* r = region(id)) return Observation{t, r->box, std::nullopt, std::nullopt};
    return std::nullopt;
  }

  /// Sorted union of all track timestamps.
  std::vector<TimePoint> frame_times() const {
    std::vector<TimePoint> out;
    for (const auto& t : tracks_)
      for (const auto& o : t.observations()) out.push_back(o.at);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Diagonal of the bounding box of all boxes and points in the scene.
  double diagonal() const {
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    auto add = [&](double x, double y) {
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    };
    for (const auto& r : regions_) add(r.box.xmin(), r.box.ymin()), add(r.box.xmax(), r.box.ymax());
    for (const auto& t : tracks_) {
      for (const auto& o : t.observations()) {
        if (o.box) add(o.box->xmin(), o.box->ymin()), add(o.box->xmax(), o.box->ymax());
        if (o.point) add(o.point->x, o.point->y);
      }
    }
    if (!(xmin <= xmax)) return 0.0;
    return std::hypot(xmax - xmin, ymax - ymin);
  }

 private:
  struct Slot {
    bool is_track;
    std::size_t pos;
  };

  void index(const std::string& id, Slot slot) {
    if (!index_.emplace(id, slot).second) throw Error(ErrorCode::invalid_input, "duplicate entity id '" + id + "'");
  }

  std::vector<Track> tracks_;
  std::vector<Region> regions_;
  std::map<std::string, Slot> index_;
};

}  // namespace vistalk
