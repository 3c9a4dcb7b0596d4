// Fluents, holdings, occurrences and the interval-indexed narrative store.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "vistalk/core.hpp"

namespace vistalk {

/// A relation family: its fluent name, arity and the symbols it can take.
struct FluentFamily {
  std::string_view name;
  std::size_t arity;
  std::vector<std::string_view> symbols;

  bool has_symbol(std::string_view s) const { return std::find(symbols.begin(), symbols.end(), s) != symbols.end(); }
};

namespace families {
inline constexpr std::string_view topology = "topology";
inline constexpr std::string_view position_vertical = "position_vertical";
inline constexpr std::string_view position_horizontal = "position_horizontal";
inline constexpr std::string_view position_depth = "position_depth";
inline constexpr std::string_view relative_distance = "relative_distance";
inline constexpr std::string_view relative_size = "relative_size";
inline constexpr std::string_view move = "move";
inline constexpr std::string_view size_motion_horizontal = "size_motion_horizontal";
inline constexpr std::string_view size_motion_vertical = "size_motion_vertical";
inline constexpr std::string_view size_motion_depth = "size_motion_depth";
inline constexpr std::string_view at_location = "at_location";
}  // namespace families

inline const std::vector<FluentFamily>& builtin_families() {
  static const std::vector<FluentFamily> table = {
      {families::topology, 2, {"dc", "ec", "po", "eq", "tpp", "ntpp", "tpp_i", "ntpp_i"}},
      {families::position_vertical,
       2,
       {"above", "overlaps_above", "along_above", "vertically_equal", "overlaps_below", "along_below", "below"}},
      {families::position_horizontal,
       2,
       {"left", "overlaps_left", "along_left", "horizontally_equal", "overlaps_right", "along_right", "right"}},
      {families::position_depth,
       2,
       {"closer", "overlaps_closer", "along_closer", "distance_equal", "overlaps_further", "along_further",
        "further"}},
      {families::relative_distance, 3, {"closer", "further", "same"}},
      {families::relative_size, 2, {"smaller", "bigger", "same"}},
      {families::move, 2, {"approaching", "receding", "static"}},
      {families::size_motion_horizontal, 1, {"elongating", "shortening", "static"}},
      {families::size_motion_vertical, 1, {"elongating", "shortening", "static"}},
      {families::size_motion_depth, 1, {"elongating", "shortening", "static"}},
      {families::at_location, 2, {"inside"}},
  };
  return table;
}

inline const FluentFamily* find_family(std::string_view name) {
  for (const auto& f : builtin_families())
    if (f.name == name) return &f;
  return nullptr;
}

/// A time-varying relation between entities, e.g. topology(irene_face, right_quadrant).
class Fluent {
 public:
  Fluent(std::string name, std::vector<std::string> args) : name_(std::move(name)), args_(std::move(args)) {
    const FluentFamily* fam = find_family(name_);
    if (!fam) throw Error(ErrorCode::family_mismatch, "unknown relation family '" + name_ + "'");
    if (fam->arity != args_.size())
      throw Error(ErrorCode::arity_mismatch, name_ + " takes " + std::to_string(fam->arity) + " argument(s), got " +
                                                 std::to_string(args_.size()));
    for (const auto& a : args_)
      if (a.empty()) throw Error(ErrorCode::invalid_input, name_ + ": empty argument");
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& args() const { return args_; }
  const FluentFamily& family() const { return *find_family(name_); }

  std::string to_string() const {
    std::string s = name_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) s += (i ? "," : "") + args_[i];
    return s + ")";
  }

  friend auto operator<=>(const Fluent&, const Fluent&) = default;

 private:
  std::string name_;
  std::vector<std::string> args_;
};

/// Holds(fluent, relation, span): the atom of a perceptual narrative.
struct Holding {
  Fluent fluent;
  std::string relation;
  Span span;

  std::string to_string() const { return fluent.to_string() + " " + relation + " " + span.to_string(); }

  friend bool operator==(const Holding&, const Holding&) = default;
};

/// Canonical listing order: span start, fluent name, args, relation, span end.
inline bool holding_order(const Holding& a, const Holding& b) {
  return std::forward_as_tuple(a.span.start(), a.fluent, a.relation, a.span.end()) <
         std::forward_as_tuple(b.span.start(), b.fluent, b.relation, b.span.end());
}

namespace occurrence_kinds {
inline constexpr std::string_view containment = "containment";
inline constexpr std::string_view source_path_goal = "source_path_goal";
inline constexpr std::string_view path_goal = "path_goal";
inline constexpr std::string_view attraction = "attraction";
}  // namespace occurrence_kinds

/// Roles that must be bound for each known event kind. `via` is a list role
/// and may be empty; all others bind exactly one entity.
inline std::vector<std::string_view> required_roles(std::string_view kind) {
  if (kind == occurrence_kinds::containment) return {"entity", "container"};
  if (kind == occurrence_kinds::source_path_goal) return {"trajector", "source", "goal"};
  if (kind == occurrence_kinds::path_goal) return {"trajector", "goal"};
  if (kind == occurrence_kinds::attraction) return {"entity", "attractor"};
  return {};
}

/// Occurs(event, span) with role bindings and detector annotations.
struct Occurrence {
  std::string kind;
  std::map<std::string, std::vector<std::string>> roles;
  std::map<std::string, std::string> attributes;
  Span span = Span(TimePoint{});

  const std::string& role(std::string_view name) const {
    auto it = roles.find(std::string(name));
    if (it == roles.end() || it->second.empty()) throw Error(ErrorCode::incomplete_roles, kind + ": no role " + std::string(name));
    return it->second.front();
  }

  std::vector<std::string> role_list(std::string_view name) const {
    auto it = roles.find(std::string(name));
    return it == roles.end() ? std::vector<std::string>{} : it->second;
  }

  std::string attribute(std::string_view name, std::string fallback = {}) const {
    auto it = attributes.find(std::string(name));
    return it == attributes.end() ? fallback : it->second;
  }

  void validate() const {
    if (kind.empty()) throw Error(ErrorCode::incomplete_roles, "occurrence without kind");
    for (auto r : required_roles(kind)) {
      auto it = roles.find(std::string(r));
      if (it == roles.end() || it->second.size() != 1 || it->second.front().empty())
        throw Error(ErrorCode::incomplete_roles, kind + ": role '" + std::string(r) + "' must bind one entity");
    }
  }

  /// Stable identifier derived from content, e.g.
  /// "containment(container=right_quadrant,entity=irene_face)@10.0".
  std::string id() const {
    std::string s = kind + "(";
    bool first = true;
    for (const auto& [name, values] : roles) {
      if (values.size() != 1) continue;
      s += (first ? "" : ",") + name + "=" + values.front();
      first = false;
    }
    return s + ")@" + format_seconds(span.start());
  }

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

inline bool occurrence_order(const Occurrence& a, const Occurrence& b) {
  return std::make_tuple(a.span.start(), a.id(), a.span.end()) < std::make_tuple(b.span.start(), b.id(), b.span.end());
}

/// A partially ground fluent used for queries. Missing name or args, or an
/// individual nullopt argument, match anything.
struct FluentPattern {
  std::optional<std::string> name;
  std::optional<std::vector<std::optional<std::string>>> args;

  static FluentPattern exact(const Fluent& f) {
    std::vector<std::optional<std::string>> a(f.args().begin(), f.args().end());
    return {f.name(), std::move(a)};
  }

  bool matches(const Fluent& f) const {
    if (name && *name != f.name()) return false;
    if (!args) return true;
    if (args->size() != f.args().size()) return false;
    for (std::size_t i = 0; i < args->size(); ++i)
      if ((*args)[i] && *(*args)[i] != f.args()[i]) return false;
    return true;
  }
};

/// Parses "name", "name(a,b)" or "name(a,_)"; `_` is a wildcard argument.
inline FluentPattern parse_fluent_pattern(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto valid_ident = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
  };
  text = trim(text);
  FluentPattern p;
  const auto open = text.find('(');
  const std::string_view head = trim(text.substr(0, open));
  if (!valid_ident(head)) throw Error(ErrorCode::invalid_input, "bad fluent pattern '" + std::string(text) + "'");
  if (head != "_") p.name = std::string(head);
  if (open == std::string_view::npos) return p;
  if (text.back() != ')') throw Error(ErrorCode::invalid_input, "unterminated fluent pattern '" + std::string(text) + "'");
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::optional<std::string>> args;
  while (true) {
    const auto comma = inner.find(',');
    const std::string_view arg = trim(inner.substr(0, comma));
    if (!valid_ident(arg)) throw Error(ErrorCode::invalid_input, "bad fluent argument in '" + std::string(text) + "'");
    args.push_back(arg == "_" ? std::nullopt : std::optional<std::string>(std::string(arg)));
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  if (p.name) {
    if (const FluentFamily* fam = find_family(*p.name); fam && fam->arity != args.size())
      throw Error(ErrorCode::arity_mismatch, *p.name + " takes " + std::to_string(fam->arity) + " argument(s)");
  }
  p.args = std::move(args);
  return p;
}

/// Queryable collection of holdings and occurrences for one scene.
///
/// Spans of the same (fluent, relation) are kept maximal: inserting a span
/// that touches or overlaps existing ones merges them, so the final state
/// does not depend on insertion order. The store also remembers the frame
/// grid it was sampled on, which defines "consecutive" for detectors.
class NarrativeStore {
 public:
  NarrativeStore() = default;

  explicit NarrativeStore(std::vector<TimePoint> frames) : frames_(std::move(frames)) {
    std::sort(frames_.begin(), frames_.end());
    frames_.erase(std::unique(frames_.begin(), frames_.end()), frames_.end());
    if (!frames_.empty()) timeline_ = Span::from_bounds(frames_.front(), frames_.back());
    fixed_timeline_ = !frames_.empty();
  }

  void register_entity(const std::string& id, EntityKind kind) { entities_[id] = kind; }

  std::optional<EntityKind> entity_kind(const std::string& id) const {
    auto it = entities_.find(id);
    if (it == entities_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, EntityKind>& entities() const { return entities_; }
  const std::vector<TimePoint>& frames() const { return frames_; }
  std::optional<Span> timeline() const { return timeline_; }

  /// The frame following t on the grid, if any.
  std::optional<TimePoint> next_frame(TimePoint t) const {
    auto it = std::upper_bound(frames_.begin(), frames_.end(), t);
    if (it == frames_.end()) return std::nullopt;
    return *it;
  }

  /// insert_holding: adds the holding and re-establishes maximality.
  void insert(const Holding& h) {
    if (!h.fluent.family().has_symbol(h.relation))
      throw Error(ErrorCode::family_mismatch,
                  "'" + h.relation + "' is not a " + h.fluent.name() + " relation");
    if (fixed_timeline_ && !timeline_->contains(h.span))
      throw Error(ErrorCode::out_of_timeline, h.to_string() + " lies outside " + timeline_->to_string());
    for (const auto& a : h.fluent.args())
      if (!entities_.count(a)) entities_[a] = EntityKind::object;

    auto& spans = spans_[{h.fluent, h.relation}];
    TimePoint lo = h.span.start(), hi = h.span.end();
    std::vector<Span> kept;
    kept.reserve(spans.size() + 1);
    for (const Span& s : spans) {
      if (s.intersects(Span::from_bounds(lo, hi))) {
        lo = std::min(lo, s.start());
        hi = std::max(hi, s.end());
      } else {
        kept.push_back(s);
      }
    }
    kept.push_back(Span::from_bounds(lo, hi));
    std::sort(kept.begin(), kept.end());
    spans = std::move(kept);

    if (!fixed_timeline_) {
      timeline_ = timeline_ ? Span::from_bounds(std::min(timeline_->start(), lo), std::max(timeline_->end(), hi))
                            : Span::from_bounds(lo, hi);
    }
  }

  void add_occurrence(Occurrence occ) {
    occ.validate();
    if (timeline_ && !timeline_->contains(occ.span))
      throw Error(ErrorCode::out_of_timeline, occ.id() + " lies outside " + timeline_->to_string());
    for (const auto& [role, values] : occ.roles)
      for (const auto& v : values)
        if (!entities_.count(v)) entities_[v] = EntityKind::object;
    auto pos = std::lower_bound(occurrences_.begin(), occurrences_.end(), occ, occurrence_order);
    if (pos != occurrences_.end() && *pos == occ) return;
    occurrences_.insert(pos, std::move(occ));
  }

  const std::vector<Occurrence>& occurrences() const { return occurrences_; }

  std::size_t holding_count() const {
    std::size_t n = 0;
    for (const auto& [key, spans] : spans_) n += spans.size();
    return n;
  }

  /// All holdings in canonical order.
  std::vector<Holding> holdings() const {
    return query({}, std::nullopt, std::nullopt);
  }

  /// query_holds: holdings unifying with the pattern whose span contains the
  /// time point (or intersects the interval) given by `at`.
  std::vector<Holding> query(const FluentPattern& pattern, const std::optional<std::string>& relation,
                             const std::optional<Span>& at) const {
    std::vector<Holding> out;
    for (const auto& [key, spans] : spans_) {
      const auto& [fluent, rel] = key;
      if (!pattern.matches(fluent)) continue;
      if (relation && *relation != rel) continue;
      for (const Span& s : spans) {
        if (at && !(at->is_point() ? s.contains(at->start()) : s.intersects(*at))) continue;
        out.push_back({fluent, rel, s});
      }
    }
    std::sort(out.begin(), out.end(), holding_order);
    return out;
  }

  friend bool operator==(const NarrativeStore& a, const NarrativeStore& b) {
    return a.frames_ == b.frames_ && a.timeline_ == b.timeline_ && a.entities_ == b.entities_ &&
           a.spans_ == b.spans_ && a.occurrences_ == b.occurrences_;
  }

 private:
  std::vector<TimePoint> frames_;
  std::optional<Span> timeline_;
  bool fixed_timeline_ = false;
  std::map<std::string, EntityKind> entities_;
  std::map<std::pair<Fluent, std::string>, std::vector<Span>> spans_;
  std::vector<Occurrence> occurrences_;
};

inline std::vector<Holding> query_holds(const NarrativeStore& store, const FluentPattern& pattern,
                                        const std::optional<std::string>& relation = std::nullopt,
                                        const std::optional<Span>& at = std::nullopt) {
  return store.query(pattern, relation, at);
}

inline void insert_holding(NarrativeStore& store, const Holding& h) { store.insert(h); }

}  // namespace vistalk
