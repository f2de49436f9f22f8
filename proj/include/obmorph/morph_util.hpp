#pragma once

// Shared helpers for the constructive morph planners: exact clearance
// computations, rational direction compasses, and a morph builder with a
// verify-or-retry discipline.  Planners pick generous parameters, verify the
// candidate exactly, and shrink on failure; the emitted morph is always
// verifier-accepted.

#include "obmorph/numtheory.hpp"
#include "obmorph/verifier.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace obmorph {

// Squared distance from point p to the closed segment [a, b].
inline Rational dist2_point_segment(const Point2& p, const Point2& a, const Point2& b) {
  Point2 ab = b - a, ap = p - a;
  Rational len2 = dot(ab, ab);
  if (len2 == 0) return dist2(p, a);
  Rational t = dot(ap, ab) / len2;
  if (t <= 0) return dist2(p, a);
  if (t >= 1) return dist2(p, b);
  return dist2(p, lerp(a, b, t));
}

// Squared distance between two closed segments (0 when they intersect).
inline Rational dist2_segment_segment(const Point2& a, const Point2& b, const Point2& c,
                                      const Point2& d) {
  if (segments_intersect(a, b, c, d) != SegmentRelation::Disjoint) return Rational(0);
  Rational m = dist2_point_segment(a, c, d);
  m = std::min(m, dist2_point_segment(b, c, d));
  m = std::min(m, dist2_point_segment(c, a, b));
  m = std::min(m, dist2_point_segment(d, a, b));
  return m;
}

// Rational compass: primitive integer directions sorted counter-clockwise
// starting from the positive x-axis.  Dense enough (max coordinate 8 gives
// 5.7 degrees worst-case gap) for corridor sweeps and angular routing.
inline const std::vector<Point2>& compass_directions() {
  static const std::vector<Point2> dirs = [] {
    std::vector<Point2> v;
    auto gcd_ll = [](long long a, long long b) {
      a = a < 0 ? -a : a;
      b = b < 0 ? -b : b;
      while (b) { long long t = a % b; a = b; b = t; }
      return a;
    };
    for (long long x = -8; x <= 8; ++x)
      for (long long y = -8; y <= 8; ++y) {
        if (x == 0 && y == 0) continue;
        if (gcd_ll(x, y) != 1) continue;
        v.push_back({Rational(x), Rational(y)});
      }
    auto half = [](const Point2& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
    std::sort(v.begin(), v.end(), [&](const Point2& a, const Point2& b) {
      int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return sign(cross(a, b)) > 0;
    });
    return v;
  }();
  return dirs;
}

// Strict rational upper bound on sqrt(s) with a fixed dyadic denominator:
// ceil-style integer square root at 32 fractional bits.  A fixed denominator
// keeps coordinate sizes bounded when these bounds are chained (Newton
// refinement would double the digit count per use).
inline Rational rational_above_sqrt(const Rational& s) {
  if (s < 0) throw std::invalid_argument("rational_above_sqrt: negative input");
  if (s == 0) return Rational(0);
  const Integer t = Integer(1) << 32;
  Integer p = numerator(s) * t * t, q = denominator(s);
  Integer a = (p + q - 1) / q;  // ceil(s * t^2)
  return Rational(isqrt_floor(a) + 1, t);
}

// Strict counter-clockwise angular order on nonzero direction vectors,
// starting from the positive x-axis.
inline bool angle_less(const Point2& a, const Point2& b) {
  auto half = [](const Point2& d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return sign(cross(a, b)) > 0;
}

// Accumulates step boundaries; planners call finish() to obtain the morph
// and the caller (or the planner itself) verifies it.
struct MorphBuilder {
  std::vector<Drawing> drawings;

  explicit MorphBuilder(Drawing start) { drawings.push_back(std::move(start)); }

  const Drawing& current() const { return drawings.back(); }

  // Append a boundary; drops exact no-op steps.
  void push(Drawing next) {
    if (next != drawings.back()) drawings.push_back(std::move(next));
  }

  // Move a single vertex in the current drawing.
  void move_vertex(int v, Point2 to) {
    Drawing d = drawings.back();
    d[v] = std::move(to);
    push(std::move(d));
  }

  Morph finish() && { return Morph{std::move(drawings)}; }
};

// Append a whole morph (must start where the builder currently is).
inline void append_morph(MorphBuilder& mb, const Morph& m) {
  if (m.drawings.empty()) return;
  if (m.drawings.front() != mb.current())
    throw std::logic_error("append_morph: discontinuous concatenation");
  for (std::size_t i = 1; i < m.drawings.size(); ++i) mb.push(m.drawings[i]);
}

inline Morph reversed_morph(Morph m) {
  std::reverse(m.drawings.begin(), m.drawings.end());
  return m;
}

// Bounding box of everything a planner must stay clear of.
struct BBox {
  Rational xmin, xmax, ymin, ymax;
  bool empty = true;
  void add(const Point2& p) {
    if (empty) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      empty = false;
      return;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  void add(const Drawing& d) { for (auto& p : d) add(p); }
};

}  // namespace obmorph
