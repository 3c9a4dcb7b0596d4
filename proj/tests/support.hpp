// Shared helpers for the test suites: fixture loading and a seeded RNG.
#pragma once

#include <random>
#include <optional>
#include <string>
#include <vector>

#include "vistalk/vistalk.hpp"

namespace vistalk::support {

inline std::string fixture(const std::string& rel) { return std::string(VISTALK_FIXTURE_DIR) + "/" + rel; }
inline std::string data_file(const std::string& rel) { return std::string(VISTALK_DATA_DIR) + "/" + rel; }

struct Pipeline {
  io::SceneBundle bundle;
  NarrativeStore store;
};

inline Pipeline run_fixture(const std::string& name) {
  io::SceneBundle b = io::load_bundle(fixture(name));
  NarrativeStore store = narrate_scene(b.scene, b.config, b.route_graph ? &*b.route_graph : nullptr);
  return {std::move(b), std::move(store)};
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline int uniform_int(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline double uniform_real(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// A random frame-fact sequence on a 0.5 s grid: a few fluents, each
/// absent or carrying one of a few relations per frame. Relations change
/// with probability `flip` from one frame to the next.
inline std::vector<FrameFacts> random_frame_facts(std::mt19937_64& g, int frames, double flip = 0.3) {
  static const std::vector<Fluent> fluents = {
      Fluent("topology", {"a", "r"}), Fluent("topology", {"b", "r"}), Fluent("move", {"a", "b"}),
      Fluent("size_motion_horizontal", {"a"})};
  static const std::vector<std::vector<std::string>> symbols = {
      {"dc", "po", "ntpp"}, {"dc", "po", "ntpp"}, {"approaching", "receding", "static"},
      {"elongating", "shortening", "static"}};
  std::vector<std::optional<std::size_t>> state(fluents.size());
  std::vector<FrameFacts> out;
  for (int i = 0; i < frames; ++i) {
    FrameFacts f{TimePoint::from_seconds(0.5 * i), {}};
    for (std::size_t k = 0; k < fluents.size(); ++k) {
      if (i == 0 || uniform_real(g, 0, 1) < flip) {
        const int pick = uniform_int(g, -1, static_cast<int>(symbols[k].size()) - 1);
        state[k] = pick < 0 ? std::nullopt : std::optional<std::size_t>(pick);
      }
      if (state[k]) f.facts.emplace(fluents[k], symbols[k][*state[k]]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline std::vector<TimePoint> times_of(const std::vector<FrameFacts>& frames) {
  std::vector<TimePoint> out;
  for (const auto& f : frames) out.push_back(f.at);
  return out;
}

}  // namespace vistalk::support
