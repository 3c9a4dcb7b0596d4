// Shared domain types: time, geometry, observations and tracks.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vistalk {

enum class ErrorCode {
  degenerate_interval,
  invalid_geometry,
  invalid_track,
  family_mismatch,
  arity_mismatch,
  out_of_timeline,
  incomplete_roles,
  geometry_missing,
  sampling_gap,
  ambiguous_location,
  vocabulary_gap,
  lexicon_gap,
  grammar_gap,
  unknown_token,
  parse_failure,
  invalid_input,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::degenerate_interval: return "DegenerateInterval";
    case ErrorCode::invalid_geometry: return "InvalidGeometry";
    case ErrorCode::invalid_track: return "InvalidTrack";
    case ErrorCode::family_mismatch: return "FamilyMismatch";
    case ErrorCode::arity_mismatch: return "ArityMismatch";
    case ErrorCode::out_of_timeline: return "OutOfTimeline";
    case ErrorCode::incomplete_roles: return "IncompleteRoles";
    case ErrorCode::geometry_missing: return "GeometryMissing";
    case ErrorCode::sampling_gap: return "SamplingGap";
    case ErrorCode::ambiguous_location: return "AmbiguousLocation";
    case ErrorCode::vocabulary_gap: return "VocabularyGap";
    case ErrorCode::lexicon_gap: return "LexiconGap";
    case ErrorCode::grammar_gap: return "GrammarGap";
    case ErrorCode::unknown_token: return "UnknownToken";
    case ErrorCode::parse_failure: return "ParseFailure";
    case ErrorCode::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code, so
/// callers can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A frame timestamp in fixed-point microseconds. Comparison is exact.
class TimePoint {
 public:
  static constexpr std::int64_t ticks_per_second = 1'000'000;

  constexpr TimePoint() = default;

  static TimePoint from_ticks(std::int64_t ticks) {
    if (ticks < 0) throw Error(ErrorCode::invalid_input, "negative time point");
    TimePoint t;
    t.ticks_ = ticks;
    return t;
  }

  static TimePoint from_seconds(double seconds) {
    if (!std::isfinite(seconds)) throw Error(ErrorCode::invalid_input, "non-finite time point");
    return from_ticks(std::llround(seconds * static_cast<double>(ticks_per_second)));
  }

  constexpr std::int64_t ticks() const { return ticks_; }
  constexpr double seconds() const { return static_cast<double>(ticks_) / ticks_per_second; }

  friend constexpr auto operator<=>(TimePoint, TimePoint) = default;

 private:
  std::int64_t ticks_ = 0;
};

inline TimePoint operator""_s(long double seconds) {
  return TimePoint::from_seconds(static_cast<double>(seconds));
}
inline TimePoint operator""_s(unsigned long long seconds) {
  return TimePoint::from_seconds(static_cast<double>(seconds));
}

/// Seconds rendered with up to six decimals and trailing zeros trimmed
/// (at least one decimal is kept: "12.0", "0.25").
inline std::string format_seconds(TimePoint t) {
  const std::int64_t whole = t.ticks() / TimePoint::ticks_per_second;
  std::int64_t frac = t.ticks() % TimePoint::ticks_per_second;
  std::string digits = std::to_string(frac + TimePoint::ticks_per_second).substr(1);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return std::to_string(whole) + "." + digits;
}

/// A closed time interval with start < end. A relation that holds at a
/// single frame is expressed as a TimePoint, never as an Interval.
class Interval {
 public:
  Interval(TimePoint start, TimePoint end) : start_(start), end_(end) {
    if (!(start < end)) {
      throw Error(ErrorCode::degenerate_interval,
                  "between(" + format_seconds(start) + ", " + format_seconds(end) + ")");
    }
  }

  TimePoint start() const { return start_; }
  TimePoint end() const { return end_; }
  double duration() const { return (end_.ticks() - start_.ticks()) / double(TimePoint::ticks_per_second); }

  friend auto operator<=>(const Interval&, const Interval&) = default;

 private:
  TimePoint start_;
  TimePoint end_;
};

inline Interval make_interval(TimePoint start, TimePoint end) { return Interval(start, end); }

/// The temporal extent of a holding or occurrence: either `at(t)` or
/// `between(t1, t2)`.
class Span {
 public:
  Span(TimePoint t) : start_(t), end_(t) {}  // NOLINT(google-explicit-constructor)
  Span(Interval i) : start_(i.start()), end_(i.end()) {}  // NOLINT(google-explicit-constructor)

  /// Point span when the endpoints coincide, interval otherwise.
  static Span from_bounds(TimePoint start, TimePoint end) {
    if (end < start) throw Error(ErrorCode::degenerate_interval, "span end before start");
    if (start == end) return Span(start);
    return Span(Interval(start, end));
  }

  TimePoint start() const { return start_; }
  TimePoint end() const { return end_; }
  bool is_point() const { return start_ == end_; }
  std::optional<Interval> interval() const {
    if (is_point()) return std::nullopt;
    return Interval(start_, end_);
  }
  double duration() const { return (end_.ticks() - start_.ticks()) / double(TimePoint::ticks_per_second); }

  bool contains(TimePoint t) const { return start_ <= t && t <= end_; }
  bool contains(const Span& other) const { return start_ <= other.start_ && other.end_ <= end_; }
  /// Closed-set intersection (touching endpoints count).
  bool intersects(const Span& other) const { return start_ <= other.end_ && other.start_ <= end_; }

  std::string to_string() const {
    if (is_point()) return "at(" + format_seconds(start_) + ")";
    return "between(" + format_seconds(start_) + "," + format_seconds(end_) + ")";
  }

  friend auto operator<=>(const Span&, const Span&) = default;

 private:
  TimePoint start_;
  TimePoint end_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned rectangle; every region in the toolkit is one of these.
class Box2 {
 public:
  Box2(double xmin, double ymin, double xmax, double ymax)
      : xmin_(xmin), ymin_(ymin), xmax_(xmax), ymax_(ymax) {
    if (!(std::isfinite(xmin) && std::isfinite(xmax) && std::isfinite(ymin) && std::isfinite(ymax)))
      throw Error(ErrorCode::invalid_geometry, "non-finite box coordinate");
    if (!(xmin < xmax) || !(ymin < ymax)) {
      std::ostringstream os;
      os << "zero-area box [" << xmin << "," << xmax << "]x[" << ymin << "," << ymax << "]";
      throw Error(ErrorCode::invalid_geometry, os.str());
    }
  }

  double xmin() const { return xmin_; }
  double ymin() const { return ymin_; }
  double xmax() const { return xmax_; }
  double ymax() const { return ymax_; }
  double width() const { return xmax_ - xmin_; }
  double height() const { return ymax_ - ymin_; }
  double area() const { return width() * height(); }
  Point2 centroid() const { return {(xmin_ + xmax_) / 2.0, (ymin_ + ymax_) / 2.0}; }

  bool contains_closed(Point2 p) const {
    return xmin_ <= p.x && p.x <= xmax_ && ymin_ <= p.y && p.y <= ymax_;
  }
  bool contains_open(Point2 p) const {
    return xmin_ < p.x && p.x < xmax_ && ymin_ < p.y && p.y < ymax_;
  }

  friend bool operator==(const Box2&, const Box2&) = default;

 private:
  double xmin_, ymin_, xmax_, ymax_;
};

/// One per-frame percept of an entity.
struct Observation {
  TimePoint at;
  std::optional<Box2> box;
  std::optional<Point2> point;
  std::optional<double> depth;

  void validate() const {
    if (!box && !point) throw Error(ErrorCode::invalid_geometry, "observation has neither box nor point");
    if (box && point && !box->contains_closed(*point))
      throw Error(ErrorCode::invalid_geometry, "observation point lies outside its box");
    if (depth && !std::isfinite(*depth)) throw Error(ErrorCode::invalid_geometry, "non-finite depth");
  }

  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class EntityKind { person, object, gaze, camera, region };

inline std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::person: return "person";
    case EntityKind::object: return "object";
    case EntityKind::gaze: return "gaze";
    case EntityKind::camera: return "camera";
    case EntityKind::region: return "region";
  }
  return "object";
}

inline std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  if (s == "person") return EntityKind::person;
  if (s == "object") return EntityKind::object;
  if (s == "gaze") return EntityKind::gaze;
  if (s == "camera") return EntityKind::camera;
  if (s == "region") return EntityKind::region;
  return std::nullopt;
}

/// Time-ordered observations of one entity.
class Track {
 public:
  Track(std::string entity_id, EntityKind kind, std::vector<Observation> observations)
      : entity_id_(std::move(entity_id)), kind_(kind), observations_(std::move(observations)) {
    if (entity_id_.empty()) throw Error(ErrorCode::invalid_track, "empty entity id");
    if (kind_ == EntityKind::region) throw Error(ErrorCode::invalid_track, "tracks cannot be regions");
    if (observations_.empty()) throw Error(ErrorCode::invalid_track, entity_id_ + ": no observations");
    for (std::size_t i = 0; i < observations_.size(); ++i) {
      observations_[i].validate();
      if (i > 0 && !(observations_[i - 1].at < observations_[i].at))
        throw Error(ErrorCode::invalid_track,
                    entity_id_ + ": observations not strictly increasing at t=" +
                        format_seconds(observations_[i].at));
    }
  }

  const std::string& entity_id() const { return entity_id_; }
  EntityKind kind() const { return kind_; }
  const std::vector<Observation>& observations() const { return observations_; }
  TimePoint first_time() const { return observations_.front().at; }
  TimePoint last_time() const { return observations_.back().at; }

  /// Exact-time lookup; nullptr when the entity was not observed at t.
  const Observation* at(TimePoint t) const {
    auto it = std::lower_bound(observations_.begin(), observations_.end(), t,
                               [](const Observation& o, TimePoint v) { return o.at < v; });
    if (it == observations_.end() || it->at != t) return nullptr;
    return &*it;
  }

 private:
  std::string entity_id_;
  EntityKind kind_;
  std::vector<Observation> observations_;
};

/// Point that stands for an entity in distance computations: the raw point
/// for gaze, otherwise the box centroid, falling back to the point.
inline Point2 representative_point(const Observation& o, EntityKind kind) {
  if (kind == EntityKind::gaze && o.point) return *o.point;
  if (o.box) return o.box->centroid();
  return *o.point;
}

}  // namespace vistalk
