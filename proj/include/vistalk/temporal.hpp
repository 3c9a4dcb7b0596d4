// Allen's interval algebra plus the point and point-interval relations.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vistalk/core.hpp"

namespace vistalk {

enum class Allen {
  before,
  after,
  during,
  contains,
  starts,
  started_by,
  finishes,
  finished_by,
  overlaps,
  overlapped_by,
  meets,
  met_by,
  equal,
};

inline constexpr std::size_t allen_count = 13;

inline constexpr std::array<Allen, allen_count> all_allen = {
    Allen::before,   Allen::after,       Allen::during,   Allen::contains,      Allen::starts,
    Allen::started_by, Allen::finishes,  Allen::finished_by, Allen::overlaps,   Allen::overlapped_by,
    Allen::meets,    Allen::met_by,      Allen::equal};

inline std::string_view to_string(Allen r) {
  constexpr std::array<std::string_view, allen_count> names = {
      "before",   "after",       "during",   "contains",      "starts", "started_by", "finishes",
      "finished_by", "overlaps", "overlapped_by", "meets", "met_by",  "equal"};
  return names[static_cast<std::size_t>(r)];
}

inline std::optional<Allen> parse_allen(std::string_view s) {
  for (Allen r : all_allen)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

inline Allen allen(const Interval& a, const Interval& b) {
  const TimePoint s1 = a.start(), e1 = a.end(), s2 = b.start(), e2 = b.end();
  if (e1 < s2) return Allen::before;
  if (e2 < s1) return Allen::after;
  if (e1 == s2) return Allen::meets;
  if (e2 == s1) return Allen::met_by;
  if (s1 == s2 && e1 == e2) return Allen::equal;
  if (s1 == s2) return e1 < e2 ? Allen::starts : Allen::started_by;
  if (e1 == e2) return s1 > s2 ? Allen::finishes : Allen::finished_by;
  if (s2 < s1 && e1 < e2) return Allen::during;
  if (s1 < s2 && e2 < e1) return Allen::contains;
  return s1 < s2 ? Allen::overlaps : Allen::overlapped_by;
}

inline Allen converse(Allen r) {
  switch (r) {
    case Allen::before: return Allen::after;
    case Allen::after: return Allen::before;
    case Allen::during: return Allen::contains;
    case Allen::contains: return Allen::during;
    case Allen::starts: return Allen::started_by;
    case Allen::started_by: return Allen::starts;
    case Allen::finishes: return Allen::finished_by;
    case Allen::finished_by: return Allen::finishes;
    case Allen::overlaps: return Allen::overlapped_by;
    case Allen::overlapped_by: return Allen::overlaps;
    case Allen::meets: return Allen::met_by;
    case Allen::met_by: return Allen::meets;
    case Allen::equal: return Allen::equal;
  }
  return r;
}

/// A set of Allen relations as a 13-bit mask.
class AllenSet {
 public:
  constexpr AllenSet() = default;
  constexpr explicit AllenSet(std::uint16_t bits) : bits_(bits & full_mask) {}
  constexpr AllenSet(std::initializer_list<Allen> rs) {
    for (Allen r : rs) insert(r);
  }

  static constexpr AllenSet all() { return AllenSet(full_mask); }

  constexpr void insert(Allen r) { bits_ |= bit(r); }
  constexpr bool contains(Allen r) const { return (bits_ & bit(r)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint16_t bits() const { return bits_; }

  std::vector<Allen> members() const {
    std::vector<Allen> out;
    for (Allen r : all_allen)
      if (contains(r)) out.push_back(r);
    return out;
  }

  AllenSet converse() const {
    AllenSet out;
    for (Allen r : all_allen)
      if (contains(r)) out.insert(vistalk::converse(r));
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (Allen r : members()) {
      if (s.size() > 1) s += ",";
      s += vistalk::to_string(r);
    }
    return s + "}";
  }

  friend constexpr bool operator==(AllenSet, AllenSet) = default;

 private:
  static constexpr std::uint16_t full_mask = (1u << allen_count) - 1;
  static constexpr std::uint16_t bit(Allen r) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(r)); }

  std::uint16_t bits_ = 0;
};

/// Relations under which two intervals share more than an endpoint; the
/// basis for "while" links between co-temporal events.
inline constexpr AllenSet cotemporal_relations{
    Allen::overlaps, Allen::overlapped_by, Allen::during,   Allen::contains, Allen::starts,
    Allen::started_by, Allen::finishes,    Allen::finished_by, Allen::equal};

namespace detail {
// Composition table, row r1, column r2, in enum order. Generated by
// enumerating all triples of integer intervals with endpoints in 0..8 and
// recording every relation observed between the outer pair; the test suite
// re-runs that enumeration and compares all 169 entries.
inline constexpr std::array<std::array<std::uint16_t, allen_count>, allen_count> allen_composition = {{
    {0x0001, 0x1fff, 0x0515, 0x0001, 0x0001, 0x0001, 0x0515, 0x0001, 0x0001, 0x0515, 0x0001, 0x0515, 0x0001},
    {0x1fff, 0x0002, 0x0a46, 0x0002, 0x0a46, 0x0002, 0x0002, 0x0002, 0x0a46, 0x0002, 0x0a46, 0x0002, 0x0002},
    {0x0001, 0x0002, 0x0004, 0x1fff, 0x0004, 0x0a46, 0x0004, 0x0515, 0x0515, 0x0a46, 0x0001, 0x0002, 0x0004},
    {0x0589, 0x0a2a, 0x13fc, 0x0008, 0x0188, 0x0008, 0x0228, 0x0008, 0x0188, 0x0228, 0x0188, 0x0228, 0x0008},
    {0x0001, 0x0002, 0x0004, 0x0589, 0x0010, 0x1030, 0x0004, 0x0501, 0x0501, 0x0244, 0x0001, 0x0800, 0x0010},
    {0x0589, 0x0002, 0x0244, 0x0008, 0x1030, 0x0020, 0x0200, 0x0008, 0x0188, 0x0200, 0x0188, 0x0800, 0x0020},
    {0x0001, 0x0002, 0x0004, 0x0a2a, 0x0004, 0x0a02, 0x0040, 0x10c0, 0x0114, 0x0a02, 0x0400, 0x0002, 0x0040},
    {0x0001, 0x0a2a, 0x0114, 0x0008, 0x0100, 0x0008, 0x10c0, 0x0080, 0x0100, 0x0228, 0x0400, 0x0228, 0x0080},
    {0x0001, 0x0a2a, 0x0114, 0x0589, 0x0100, 0x0188, 0x0114, 0x0501, 0x0501, 0x13fc, 0x0001, 0x0228, 0x0100},
    {0x0589, 0x0002, 0x0244, 0x0a2a, 0x0244, 0x0a02, 0x0200, 0x0228, 0x13fc, 0x0a02, 0x0188, 0x0002, 0x0200},
    {0x0001, 0x0a2a, 0x0114, 0x0001, 0x0400, 0x0400, 0x0114, 0x0001, 0x0001, 0x0114, 0x0001, 0x10c0, 0x0400},
    {0x0589, 0x0002, 0x0244, 0x0002, 0x0244, 0x0002, 0x0800, 0x0800, 0x0244, 0x0002, 0x1030, 0x0002, 0x0800},
    {0x0001, 0x0002, 0x0004, 0x0008, 0x0010, 0x0020, 0x0040, 0x0080, 0x0100, 0x0200, 0x0400, 0x0800, 0x1000},
}};
}  // namespace detail

/// All relations r(a, c) possible when r1(a, b) and r2(b, c).
inline AllenSet compose_allen(Allen r1, Allen r2) {
  return AllenSet(detail::allen_composition[static_cast<std::size_t>(r1)][static_cast<std::size_t>(r2)]);
}

inline AllenSet compose_allen(AllenSet s1, AllenSet s2) {
  AllenSet out;
  for (Allen a : s1.members())
    for (Allen b : s2.members()) out = AllenSet(static_cast<std::uint16_t>(out.bits() | compose_allen(a, b).bits()));
  return out;
}

// ---------------------------------------------------------------------------
// Point relations

enum class PointRelation { before, after, equals };

inline std::string_view to_string(PointRelation r) {
  switch (r) {
    case PointRelation::before: return "before";
    case PointRelation::after: return "after";
    case PointRelation::equals: return "equals";
  }
  return "equals";
}

inline PointRelation point_relation(TimePoint a, TimePoint b) {
  if (a < b) return PointRelation::before;
  if (b < a) return PointRelation::after;
  return PointRelation::equals;
}

/// Position of a time point relative to an interval.
enum class PointInterval { before, starts, during, finishes, after };

/// Position of an interval relative to a time point (the converse view).
enum class IntervalPoint { after, started_by, contains, finished_by, before };

inline std::string_view to_string(PointInterval r) {
  constexpr std::array<std::string_view, 5> names = {"before", "starts", "during", "finishes", "after"};
  return names[static_cast<std::size_t>(r)];
}

inline std::string_view to_string(IntervalPoint r) {
  constexpr std::array<std::string_view, 5> names = {"after", "started_by", "contains", "finished_by", "before"};
  return names[static_cast<std::size_t>(r)];
}

inline PointInterval point_interval(TimePoint t, const Interval& i) {
  if (t < i.start()) return PointInterval::before;
  if (t == i.start()) return PointInterval::starts;
  if (t < i.end()) return PointInterval::during;
  if (t == i.end()) return PointInterval::finishes;
  return PointInterval::after;
}

/// t before i  <=>  i after t, and so on; the enums share their ordering.
inline IntervalPoint converse(PointInterval r) { return static_cast<IntervalPoint>(static_cast<int>(r)); }
inline PointInterval converse(IntervalPoint r) { return static_cast<PointInterval>(static_cast<int>(r)); }

inline IntervalPoint interval_point(const Interval& i, TimePoint t) { return converse(point_interval(t, i)); }

/// True when the two spans share time beyond a single touching endpoint.
/// A point span is co-temporal with anything that contains it.
inline bool cotemporal(const Span& a, const Span& b) {
  auto ia = a.interval();
  auto ib = b.interval();
  if (ia && ib) return cotemporal_relations.contains(allen(*ia, *ib));
  return a.intersects(b);
}

}  // namespace vistalk
