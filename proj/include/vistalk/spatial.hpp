// Qualitative spatial relations between regions and points at one instant:
// RCC-8 topology, per-axis relative position, relative distance and size.
#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "vistalk/core.hpp"

namespace vistalk {

enum class RCC8 { dc, ec, po, eq, tpp, ntpp, tpp_i, ntpp_i };

inline constexpr std::array<RCC8, 8> all_rcc8 = {RCC8::dc,  RCC8::ec,   RCC8::po,    RCC8::eq,
                                                 RCC8::tpp, RCC8::ntpp, RCC8::tpp_i, RCC8::ntpp_i};

inline std::string_view to_string(RCC8 r) {
  constexpr std::array<std::string_view, 8> names = {"dc", "ec", "po", "eq", "tpp", "ntpp", "tpp_i", "ntpp_i"};
  return names[static_cast<std::size_t>(r)];
}

inline RCC8 converse(RCC8 r) {
  switch (r) {
    case RCC8::tpp: return RCC8::tpp_i;
    case RCC8::ntpp: return RCC8::ntpp_i;
    case RCC8::tpp_i: return RCC8::tpp;
    case RCC8::ntpp_i: return RCC8::ntpp;
    default: return r;
  }
}

/// RCC-8 relation of `a` with respect to `b` for closed rectangles. Each
/// axis contributes an interval comparison; the regions are disconnected if
/// any axis separates them, externally connected if any axis only touches.
inline RCC8 rcc8(const Box2& a, const Box2& b) {
  const std::array<std::array<double, 2>, 2> ea = {{{a.xmin(), a.xmax()}, {a.ymin(), a.ymax()}}};
  const std::array<std::array<double, 2>, 2> eb = {{{b.xmin(), b.xmax()}, {b.ymin(), b.ymax()}}};

  bool touch = false;
  for (int k = 0; k < 2; ++k) {
    if (ea[k][1] < eb[k][0] || eb[k][1] < ea[k][0]) return RCC8::dc;
    if (ea[k][1] == eb[k][0] || eb[k][1] == ea[k][0]) touch = true;
  }
  if (touch) return RCC8::ec;

  bool a_in_b = true, b_in_a = true, a_strict = true, b_strict = true, same = true;
  for (int k = 0; k < 2; ++k) {
    const double alo = ea[k][0], ahi = ea[k][1], blo = eb[k][0], bhi = eb[k][1];
    a_in_b = a_in_b && blo <= alo && ahi <= bhi;
    b_in_a = b_in_a && alo <= blo && bhi <= ahi;
    a_strict = a_strict && blo < alo && ahi < bhi;
    b_strict = b_strict && alo < blo && bhi < ahi;
    same = same && alo == blo && ahi == bhi;
  }
  if (same) return RCC8::eq;
  if (a_in_b) return a_strict ? RCC8::ntpp : RCC8::tpp;
  if (b_in_a) return b_strict ? RCC8::ntpp_i : RCC8::tpp_i;
  return RCC8::po;
}

/// Topology of a point with respect to a box: interior -> ntpp,
/// boundary -> tpp, outside -> dc.
inline RCC8 rcc8(Point2 p, const Box2& b) {
  if (b.contains_open(p)) return RCC8::ntpp;
  if (b.contains_closed(p)) return RCC8::tpp;
  return RCC8::dc;
}

// ---------------------------------------------------------------------------
// Relative position

enum class Axis { horizontal, vertical, depth };

inline std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::horizontal: return "horizontal";
    case Axis::vertical: return "vertical";
    case Axis::depth: return "depth";
  }
  return "horizontal";
}

/// The seven per-axis position symbols, axis-neutral. `first` is the
/// leading side of the axis: above, left, or closer.
enum class Pos1D { first, overlaps_first, along_first, equal, overlaps_second, along_second, second };

inline Pos1D converse(Pos1D r) {
  switch (r) {
    case Pos1D::first: return Pos1D::second;
    case Pos1D::overlaps_first: return Pos1D::overlaps_second;
    case Pos1D::along_first: return Pos1D::along_second;
    case Pos1D::equal: return Pos1D::equal;
    case Pos1D::overlaps_second: return Pos1D::overlaps_first;
    case Pos1D::along_second: return Pos1D::along_first;
    case Pos1D::second: return Pos1D::first;
  }
  return r;
}

struct PosRelation1D {
  Axis axis;
  Pos1D symbol;

  friend bool operator==(const PosRelation1D&, const PosRelation1D&) = default;
};

inline std::string_view to_string(PosRelation1D r) {
  static constexpr std::array<std::array<std::string_view, 7>, 3> names = {{
      {"left", "overlaps_left", "along_left", "horizontally_equal", "overlaps_right", "along_right", "right"},
      {"above", "overlaps_above", "along_above", "vertically_equal", "overlaps_below", "along_below", "below"},
      {"closer", "overlaps_closer", "along_closer", "distance_equal", "overlaps_further", "along_further",
       "further"},
  }};
  return names[static_cast<std::size_t>(r.axis)][static_cast<std::size_t>(r.symbol)];
}

/// Which direction of the coordinate axis counts as the leading side.
enum class Polarity { increasing, decreasing };

struct Extent {
  double lo;
  double hi;
};

/// Coarsens the Allen relation of two extents into the seven-symbol
/// position set. before/meets/overlaps map to first/along_first/
/// overlaps_first (and converses to the second side); equal maps to equal;
/// containment-like cases (starts, during, finishes and inverses) are
/// decided by midpoint order, with an exact midpoint tie giving equal.
inline Pos1D position_1d(Extent a, Extent b, Polarity polarity = Polarity::increasing) {
  if (!(a.lo < a.hi) || !(b.lo < b.hi)) throw Error(ErrorCode::invalid_geometry, "empty extent");
  if (polarity == Polarity::decreasing) {
    a = {-a.hi, -a.lo};
    b = {-b.hi, -b.lo};
  }
  if (a.hi < b.lo) return Pos1D::first;
  if (b.hi < a.lo) return Pos1D::second;
  if (a.hi == b.lo) return Pos1D::along_first;
  if (b.hi == a.lo) return Pos1D::along_second;
  if (a.lo == b.lo && a.hi == b.hi) return Pos1D::equal;
  if (a.lo < b.lo && a.hi < b.hi) return Pos1D::overlaps_first;
  if (b.lo < a.lo && b.hi < a.hi) return Pos1D::overlaps_second;
  // One extent contains the other, possibly sharing an endpoint.
  const double mid_a = a.lo + a.hi, mid_b = b.lo + b.hi;
  if (mid_a < mid_b) return Pos1D::overlaps_first;
  if (mid_b < mid_a) return Pos1D::overlaps_second;
  return Pos1D::equal;
}

struct AxisPolarity {
  /// Image coordinates: y grows downward, so smaller y is "above".
  Polarity vertical = Polarity::increasing;
  Polarity horizontal = Polarity::increasing;
  /// Smaller depth is closer to the observer.
  Polarity depth = Polarity::increasing;
};

struct SpatialTolerances {
  double dist = 0.0;   // absolute, scene units
  double size = 0.05;  // relative to the larger area
  double depth = 0.5;  // half-width of depth extents, scene units
};

struct PositionTriple {
  PosRelation1D vertical;
  PosRelation1D horizontal;
  std::optional<PosRelation1D> depth;

  friend bool operator==(const PositionTriple&, const PositionTriple&) = default;
};

inline PositionTriple relative_position(const Observation& a, const Observation& b, const AxisPolarity& polarity = {},
                                        const SpatialTolerances& tol = {}) {
  if (!a.box || !b.box) throw Error(ErrorCode::geometry_missing, "relative position needs boxes on both sides");
  const Box2& ba = *a.box;
  const Box2& bb = *b.box;
  PositionTriple out{
      {Axis::vertical, position_1d({ba.ymin(), ba.ymax()}, {bb.ymin(), bb.ymax()}, polarity.vertical)},
      {Axis::horizontal, position_1d({ba.xmin(), ba.xmax()}, {bb.xmin(), bb.xmax()}, polarity.horizontal)},
      std::nullopt};
  if (a.depth && b.depth) {
    if (!(tol.depth > 0.0)) throw Error(ErrorCode::invalid_input, "depth tolerance must be positive");
    out.depth = PosRelation1D{
        Axis::depth, position_1d({*a.depth - tol.depth, *a.depth + tol.depth},
                                 {*b.depth - tol.depth, *b.depth + tol.depth}, polarity.depth)};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relative distance and size

enum class DistRelation { closer, further, same };

inline std::string_view to_string(DistRelation r) {
  switch (r) {
    case DistRelation::closer: return "closer";
    case DistRelation::further: return "further";
    case DistRelation::same: return "same";
  }
  return "same";
}

/// Is p1 closer to p3 than p2 is?
inline DistRelation relative_distance(Point2 p1, Point2 p2, Point2 p3, double eps_dist = 0.0) {
  const double d1 = distance(p1, p3);
  const double d2 = distance(p2, p3);
  if (d1 < d2 - eps_dist) return DistRelation::closer;
  if (d1 > d2 + eps_dist) return DistRelation::further;
  return DistRelation::same;
}

enum class SizeRelation { smaller, bigger, same };

inline std::string_view to_string(SizeRelation r) {
  switch (r) {
    case SizeRelation::smaller: return "smaller";
    case SizeRelation::bigger: return "bigger";
    case SizeRelation::same: return "same";
  }
  return "same";
}

inline SizeRelation relative_size(const Box2& a, const Box2& b, double eps_size = 0.05) {
  const double aa = a.area(), ab = b.area();
  if (std::abs(aa - ab) <= eps_size * std::max(aa, ab)) return SizeRelation::same;
  return aa < ab ? SizeRelation::smaller : SizeRelation::bigger;
}

}  // namespace vistalk
