#pragma once

// Exact geometric predicates, static and kinetic.

#include "obmorph/algebraic.hpp"
#include "obmorph/rational.hpp"

namespace obmorph {

// Orientation of the ordered triple (a, b, c): +1 counter-clockwise,
// -1 clockwise, 0 collinear.
inline int orientation(const Point2& a, const Point2& b, const Point2& c) {
  return sign(cross(b - a, c - a));
}

// Is p on the closed segment [a, b]?  (Degenerate a == b allowed.)
inline bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orientation(a, b, p) != 0) return false;
  return dot(p - a, p - b) <= 0;
}

// Is p in the relative interior of segment [a, b]?
inline bool strictly_inside_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orientation(a, b, p) != 0) return false;
  return dot(p - a, p - b) < 0;
}

enum class SegmentRelation {
  Disjoint,        // closed segments share no point
  ProperCrossing,  // interiors cross at a single point
  Touching,        // share at least a point, but no proper interior crossing
};

// Exact classification of two closed segments.
inline SegmentRelation segments_intersect(const Point2& a, const Point2& b,
                                          const Point2& c, const Point2& d) {
  int o1 = orientation(a, b, c);
  int o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a);
  int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
    return SegmentRelation::ProperCrossing;
  bool touch = false;
  if (o1 == 0 && on_segment(c, a, b)) touch = true;
  if (o2 == 0 && on_segment(d, a, b)) touch = true;
  if (o3 == 0 && on_segment(a, c, d)) touch = true;
  if (o4 == 0 && on_segment(b, c, d)) touch = true;
  // Endpoint-on-endpoint/interior or collinear overlap are all "touching";
  // a crossing that involves an endpoint is not a *proper* crossing.
  if (touch) return SegmentRelation::Touching;
  if (o1 != o2 && o3 != o4) return SegmentRelation::ProperCrossing;
  return SegmentRelation::Disjoint;
}

// ---------------------------------------------------------------------------
// Kinetic predicates.  Every vertex moves linearly: pos(t) = s + t (e - s).

struct MovingPoint {
  Point2 s, e;  // positions at t = 0 and t = 1
  MovingPoint() = default;
  MovingPoint(Point2 start, Point2 end) : s(std::move(start)), e(std::move(end)) {}
  static MovingPoint fixed(Point2 p) { return MovingPoint(p, p); }
  bool stationary() const { return s == e; }
  Point2 at(const Rational& t) const { return lerp(s, e, t); }
  QPoint at(const AlgebraicTime& t) const {
    QExt tt = QExt::of_time(t);
    QPoint p;
    p.x = QExt(s.x) + tt * QExt(e.x - s.x);
    p.y = QExt(s.y) + tt * QExt(e.y - s.y);
    return p;
  }
};

// cross(b(t) - a(t), c(t) - a(t)) as a polynomial in t (degree <= 2).
inline QuadraticPoly moving_orientation(const MovingPoint& a, const MovingPoint& b,
                                        const MovingPoint& c) {
  // Components of (b - a) and (c - a) are linear polynomials u0 + u1 t.
  Rational ux0 = b.s.x - a.s.x, ux1 = (b.e.x - a.e.x) - ux0;
  Rational uy0 = b.s.y - a.s.y, uy1 = (b.e.y - a.e.y) - uy0;
  Rational vx0 = c.s.x - a.s.x, vx1 = (c.e.x - a.e.x) - vx0;
  Rational vy0 = c.s.y - a.s.y, vy1 = (c.e.y - a.e.y) - vy0;
  QuadraticPoly f;
  f.c0 = ux0 * vy0 - uy0 * vx0;
  f.c1 = ux0 * vy1 + ux1 * vy0 - uy0 * vx1 - uy1 * vx0;
  f.c2 = ux1 * vy1 - uy1 * vx1;
  return f;
}

// dot(p(t) - a(t), p(t) - b(t)) as a polynomial in t; <= 0 iff p lies within
// the slab of [a, b] along the segment direction (used with collinearity).
inline QuadraticPoly moving_span_dot(const MovingPoint& p, const MovingPoint& a,
                                     const MovingPoint& b) {
  Rational ux0 = p.s.x - a.s.x, ux1 = (p.e.x - a.e.x) - ux0;
  Rational uy0 = p.s.y - a.s.y, uy1 = (p.e.y - a.e.y) - uy0;
  Rational vx0 = p.s.x - b.s.x, vx1 = (p.e.x - b.e.x) - vx0;
  Rational vy0 = p.s.y - b.s.y, vy1 = (p.e.y - b.e.y) - vy0;
  QuadraticPoly f;
  f.c0 = ux0 * vx0 + uy0 * vy0;
  f.c1 = ux0 * vx1 + ux1 * vx0 + uy0 * vy1 + uy1 * vy0;
  f.c2 = ux1 * vx1 + uy1 * vy1;
  return f;
}

// Exact point-on-closed-segment test at an algebraic time.
inline bool on_segment_at(const MovingPoint& p, const MovingPoint& a, const MovingPoint& b,
                          const AlgebraicTime& t) {
  QPoint pp = p.at(t), aa = a.at(t), bb = b.at(t);
  QExt cr = (bb.x - aa.x) * (pp.y - aa.y) - (bb.y - aa.y) * (pp.x - aa.x);
  if (cr.sign_value() != 0) return false;
  QExt sp = (pp.x - aa.x) * (pp.x - bb.x) + (pp.y - aa.y) * (pp.y - bb.y);
  return sp.sign_value() <= 0;
}

// Exact coincidence test of two moving points at an algebraic time.
inline bool coincide_at(const MovingPoint& p, const MovingPoint& q, const AlgebraicTime& t) {
  QPoint pp = p.at(t), qq = q.at(t);
  return (pp.x - qq.x).sign_value() == 0 && (pp.y - qq.y).sign_value() == 0;
}

}  // namespace obmorph
