#pragma once

// Constructive morphs for triangle (C3) instances with at most four
// compatible obstacles.  The planner dispatches on the number of obstacles in
// the inner face:
//
//   0 — shrink both drawings about their barycenters, translate the tiny
//       triangle along a clearance-checked corridor, and reshape it inside an
//       empty disk;
//   1 — pull the vertices of both drawings onto a small circle around the
//       obstacle (directions from the obstacle are preserved, so it stays
//       interior), rotate one configuration onto the other with exact
//       rational rotations, and finish with a single linear morph;
//   2 — normalize so the two obstacles lie on a vertical line, ride the
//       boundary of a small rectangle around them through a canonical
//       configuration, and repeat a partial rotation to fix the labels;
//   3 — morph both drawings onto a common wedge-shaped triangle built from
//       rays out of the outer obstacle, then apply a 5-step rotation as often
//       as the label shift requires (collinear inner obstacles reduce to the
//       two-obstacle procedure);
//   4 — scale both drawings up about the obstacles' barycenter until the
//       cluster behaves like a single obstacle, then reduce to the
//       one-obstacle procedure.
//
// Every candidate plan is checked with the exact verifier before it is
// returned; configurations outside the planner's reach produce an explicit
// unsupported-configuration error, never an unverified morph.

#include "obmorph/drawing.hpp"
#include "obmorph/morph_util.hpp"
#include "obmorph/pin_frame.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace obmorph {

namespace tri_detail {

using obmorph::detail::cdiv;
using obmorph::detail::cmul;

inline Point2 conj(const Point2& p) { return {p.x, -p.y}; }

inline int tri_orientation(const Drawing& t) { return sign(cross(t[1] - t[0], t[2] - t[0])); }

inline bool strictly_inside(const Drawing& t, const Point2& p) {
  int s = tri_orientation(t);
  if (s == 0) return false;
  return sign(cross(t[1] - t[0], p - t[0])) == s && sign(cross(t[2] - t[1], p - t[1])) == s &&
         sign(cross(t[0] - t[2], p - t[2])) == s;
}

inline bool strictly_outside(const Drawing& t, const Point2& p) {
  int s = tri_orientation(t);
  if (s == 0) return false;
  return sign(cross(t[1] - t[0], p - t[0])) == -s || sign(cross(t[2] - t[1], p - t[1])) == -s ||
         sign(cross(t[0] - t[2], p - t[2])) == -s;
}

inline Rational min_edge_dist2(const Point2& p, const Drawing& t) {
  Rational m = dist2_point_segment(p, t[0], t[1]);
  m = std::min(m, dist2_point_segment(p, t[1], t[2]));
  return std::min(m, dist2_point_segment(p, t[2], t[0]));
}

inline Point2 barycenter(const std::vector<Point2>& pts) {
  Point2 s{Rational(0), Rational(0)};
  for (const Point2& p : pts) s = s + p;
  return Rational(1, static_cast<long long>(pts.size())) * s;
}

inline Drawing scaled(const Drawing& d, const Point2& c, const Rational& s) {
  Drawing out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = c + s * (d[i] - c);
  return out;
}

// Intersection of the lines p + t*d and q + s*e.
inline std::optional<Point2> line_inter(const Point2& p, const Point2& d, const Point2& q,
                                        const Point2& e) {
  Rational den = cross(d, e);
  if (den == 0) return std::nullopt;
  return p + (cross(q - p, e) / den) * d;
}

// z strictly inside the open segment (x, y), all three collinear.
inline bool strictly_between(const Point2& x, const Point2& y, const Point2& z) {
  Point2 d = y - x;
  if (cross(z - x, d) != 0) return false;
  Rational t = dot(z - x, d);
  return t > 0 && t < dot(d, d);
}

// Similarity frame: p -> cmul(q, p), optionally mirrored about the vertical
// line x = mx afterwards.  Exact and exactly invertible over the rationals;
// crossing-freeness of a morph is invariant under it.
struct Frame {
  Point2 q{Rational(1), Rational(0)};
  bool mirror = false;
  Rational mx = Rational(0);

  Point2 fwd(const Point2& p) const {
    Point2 r = cmul(q, p);
    if (mirror) r.x = 2 * mx - r.x;
    return r;
  }
  Point2 inv(const Point2& p) const {
    Point2 r = p;
    if (mirror) r.x = 2 * mx - r.x;
    return cdiv(r, q);
  }
  Drawing fwd(const Drawing& d) const {
    Drawing out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = fwd(d[i]);
    return out;
  }
  Drawing inv(const Drawing& d) const {
    Drawing out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = inv(d[i]);
    return out;
  }
};

// Rational points on the unit circle, coarse to fine (90 degrees, then the
// Pythagorean family (k^2-1, 2k, k^2+1) whose angle decreases toward zero).
inline const std::vector<Point2>& unit_rotations() {
  static const std::vector<Point2> qs = [] {
    std::vector<Point2> v;
    v.push_back({Rational(0), Rational(1)});
    for (long long k = 3; k <= 63; k += 2)
      v.push_back({Rational(k * k - 1, k * k + 1), Rational(2 * k, k * k + 1)});
    return v;
  }();
  return qs;
}

// Rigidly rotate the builder's current drawing about c, one rational-rotation
// chord per step, until vertex `anchor` points (to the table's finest grain)
// in the same direction from c as target[anchor].  s = +1 turns
// counter-clockwise, -1 clockwise.
inline bool rotate_align(MorphBuilder& mb, const Point2& c, const Drawing& target, int anchor,
                         int s, int max_steps) {
  int steps = 0;
  auto apply = [&](const Point2& qr) {
    Drawing d(mb.current().size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = c + cmul(qr, mb.current()[i] - c);
    mb.push(std::move(d));
    ++steps;
  };
  const Point2 d0 = target[anchor] - c;
  auto cur0 = [&] { return mb.current()[anchor] - c; };
  // Reduce the remaining turn below half a revolution.
  const Point2 q90{Rational(0), Rational(s)};
  while (sign(cross(cur0(), d0)) * s < 0 ||
         (sign(cross(cur0(), d0)) == 0 && sign(dot(cur0(), d0)) < 0)) {
    apply(q90);
    if (steps > max_steps) return false;
  }
  for (const Point2& q : unit_rotations()) {
    const Point2 qs_ = s > 0 ? q : conj(q);
    while (true) {
      Point2 n0 = cmul(qs_, cur0());
      int cs = sign(cross(n0, d0)) * s;
      if (cs < 0) break;  // would overturn
      apply(qs_);
      if (steps > max_steps) return false;
      if (cs == 0 && sign(dot(n0, d0)) > 0) return true;  // exact hit
    }
  }
  return true;
}

// Vertices pulled toward c to (just below) radius r along their rays; the
// directions from c are unchanged, so c-side containment is preserved.
inline Drawing pulled_config(const Drawing& t, const Point2& c, const Rational& r) {
  Drawing out(3);
  for (int i = 0; i < 3; ++i) {
    Rational ub = rational_above_sqrt(dist2(t[i], c));
    out[i] = c + (r / ub) * (t[i] - c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// One interior obstacle (also the core of the four-obstacle reduction).

inline std::optional<Morph> plan_case1_core(const PlaneGraph& g, const Drawing& A,
                                            const Drawing& B, const ObstacleSet& obs,
                                            const Point2& c) {
  if (!strictly_inside(A, c) || !strictly_inside(B, c)) return std::nullopt;
  Rational d2 = std::min(min_edge_dist2(c, A), min_edge_dist2(c, B));
  if (d2 == 0) return std::nullopt;
  Rational r = rational_below_sqrt(d2) / 2;
  for (int round = 0; round < 3; ++round, r = r / 2) {
    Drawing k1 = pulled_config(A, c, r);
    Drawing k2 = pulled_config(B, c, r);
    for (int anchor = 0; anchor < 3; ++anchor)
      for (int s : {+1, -1}) {
        MorphBuilder mb(A);
        mb.push(k1);
        if (!rotate_align(mb, c, k2, anchor, s, 160)) continue;
        mb.push(k2);
        mb.push(B);
        Morph m = std::move(mb).finish();
        if (m.drawings.size() >= 2 && verify_morph(g, m, obs).ok) return m;
      }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// No interior obstacle.

inline bool segment_clear(const Point2& a, const Point2& b, const ObstacleSet& obs,
                          const Rational& clear2) {
  for (const Point2& p : obs)
    if (dist2_point_segment(p, a, b) <= clear2) return false;
  return true;
}

inline std::optional<std::vector<Point2>> plan_polyline(const Point2& a, const Point2& b,
                                                        const ObstacleSet& obs,
                                                        const Rational& clear2,
                                                        const Rational& off) {
  if (segment_clear(a, b, obs, clear2)) return std::vector<Point2>{a, b};
  Point2 d = b - a;
  if (d == Point2{Rational(0), Rational(0)}) return std::nullopt;
  Point2 n{-d.y, d.x};
  Rational f = off / rational_above_sqrt(dot(d, d));
  Point2 m = Rational(1, 2) * (a + b);
  for (int k : {1, -1, 2, -2, 4, -4, 8, -8}) {
    Point2 w = m + (Rational(k) * f) * n;
    if (segment_clear(a, w, obs, clear2) && segment_clear(w, b, obs, clear2))
      return std::vector<Point2>{a, w, b};
  }
  return std::nullopt;
}

inline std::optional<Morph> plan_case0(const PlaneGraph& g, const Drawing& A, const Drawing& B,
                                       const ObstacleSet& obs) {
  const Point2 b1 = barycenter(A), b2 = barycenter(B);
  Rational d2min(-1);
  for (const Point2& p : obs)
    for (const Point2& c : {b1, b2}) {
      Rational d2 = dist2(p, c);
      if (d2min < 0 || d2 < d2min) d2min = d2;
    }
  const Rational eps1 = d2min < 0 ? Rational(1) : rational_below_sqrt(d2min) / 3;
  if (eps1 == 0) return std::nullopt;
  for (int round = 0; round < 10; ++round) {
    const Rational rho = eps1 / Rational(4 * (Integer(1) << round));
    Rational m1(0), m2(0);
    for (int i = 0; i < 3; ++i) {
      m1 = std::max(m1, dist2(A[i], b1));
      m2 = std::max(m2, dist2(B[i], b2));
    }
    if (m1 == 0 || m2 == 0) return std::nullopt;
    const Rational s1 = rho / rational_above_sqrt(m1);
    const Rational s2 = rho / rational_above_sqrt(m2);
    const Drawing tinyA = scaled(A, b1, s1);
    const Drawing tinyB = scaled(B, b2, s2);
    auto path = plan_polyline(b1, b2, obs, (2 * rho) * (2 * rho), eps1);
    if (!path) continue;
    Drawing T(3);
    for (int i = 0; i < 3; ++i) T[i] = tinyA[i] + (b2 - b1);

    // Candidate reshapes inside the empty disk around b2: a direct linear
    // morph, then "lift one vertex far away, reposition the other two" with
    // every apex label and both lift directions.
    std::vector<std::vector<Drawing>> scripts;
    scripts.push_back({T, tinyB});
    for (int lam = 0; lam < 3; ++lam)
      for (int sgn : {+1, -1})
        for (int mag : {8, 3}) {
          Point2 F = b2 + Point2{Rational(0), Rational(sgn * mag) * rho};
          std::vector<Drawing> sc{T};
          Drawing d = T;
          d[lam] = F;
          sc.push_back(d);
          d[(lam + 1) % 3] = tinyB[(lam + 1) % 3];
          sc.push_back(d);
          d[(lam + 2) % 3] = tinyB[(lam + 2) % 3];
          sc.push_back(d);
          d[lam] = tinyB[lam];
          sc.push_back(d);
          scripts.push_back(std::move(sc));
        }
    for (const auto& sc : scripts) {
      MorphBuilder mb(A);
      mb.push(tinyA);
      for (std::size_t j = 1; j < path->size(); ++j) {
        Point2 offj = (*path)[j] - b1;
        Drawing d(3);
        for (int i = 0; i < 3; ++i) d[i] = tinyA[i] + offj;
        mb.push(std::move(d));
      }
      for (std::size_t j = 1; j < sc.size(); ++j) mb.push(sc[j]);
      mb.push(B);
      Morph m = std::move(mb).finish();
      if (m.drawings.size() >= 2 && verify_morph(g, m, obs).ok) return m;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Two interior obstacles (vertical after normalization, top above bottom).

struct CanonicalPlan {
  Morph morph;
  std::array<int, 3> at;  // labels at the slots {bottom-left, bottom-right, top-middle}
};

// Exit of the ray p + t*dir (t > 0, dir pointing downward) through the left,
// right, or bottom side of [x1-eps, x1+eps] x [y2-eps, y1+eps]; p lies on the
// top side.
inline std::optional<Point2> box_exit_down(const Point2& p, const Point2& dir, const Rational& x1,
                                           const Rational& y1, const Rational& y2,
                                           const Rational& eps) {
  if (!(dir.y < 0)) return std::nullopt;
  Rational best = Rational((y2 - eps - p.y) / dir.y);  // bottom side
  if (dir.x < 0) best = std::min(best, Rational((x1 - eps - p.x) / dir.x));
  if (dir.x > 0) best = std::min(best, Rational((x1 + eps - p.x) / dir.x));
  if (!(best > 0)) return std::nullopt;
  return p + best * dir;
}

inline std::optional<CanonicalPlan> to_canonical_edge(const Drawing& T, int u, int v, int w,
                                                      const Rational& x1, const Rational& y1,
                                                      const Rational& y2, const Rational& eps,
                                                      const Rational& delta) {
  if (T[u].y == T[v].y) return std::nullopt;
  if (T[u].y > T[v].y) std::swap(u, v);  // u below, v above
  if (!(T[w].x > x1)) return std::nullopt;
  if (!(T[u].x < x1 - eps)) return std::nullopt;

  MorphBuilder mb(T);
  Drawing d = T;
  // Step 1: u toward w until the left boundary line, v toward w until the
  // obstacle line.
  {
    Rational tu = (x1 - eps - T[u].x) / (T[w].x - T[u].x);
    if (!(tu > 0 && tu < 1)) return std::nullopt;
    d[u] = lerp(T[u], T[w], tu);
    Rational tv = (x1 - T[v].x) / (T[w].x - T[v].x);
    if (!(tv >= 0 && tv < 1)) return std::nullopt;
    d[v] = lerp(T[v], T[w], tv);
    mb.push(d);
  }
  // Step 2: v up the obstacle line onto the top boundary, u nudged to just
  // left of the line.
  const Point2 v2{x1, y1 + eps};
  d[v] = v2;
  d[u] = Point2{x1 - delta, d[u].y};
  mb.push(d);
  // Step 3: u rides the line through v and u, w the line through v and w,
  // down to the boundary of R.
  {
    auto hu = box_exit_down(v2, d[u] - v2, x1, y1, y2, eps);
    auto hw = box_exit_down(v2, d[w] - v2, x1, y1, y2, eps);
    if (!hu || !hw) return std::nullopt;
    if (!(d[w].x > x1)) return std::nullopt;
    d[u] = *hu;
    d[w] = *hw;
    mb.push(d);
  }
  // Into the canonical configuration: w to the bottom-right corner, then u to
  // the bottom-left corner.
  d[w] = Point2{x1 + eps, y2 - eps};
  mb.push(d);
  d[u] = Point2{x1 - eps, y2 - eps};
  mb.push(d);
  return CanonicalPlan{std::move(mb).finish(), {u, w, v}};
}

inline std::optional<CanonicalPlan> to_canonical(const Drawing& T, const Rational& x1,
                                                 const Rational& y1, const Rational& y2,
                                                 const Rational& eps, const Rational& delta) {
  // Any edge fully in the closed left halfplane of the obstacle line may serve
  // (C3: every label pair is an edge); a vertex on the line gives two choices.
  for (int i = 0; i < 3; ++i) {
    int a = (i + 1) % 3, b = (i + 2) % 3;
    if (T[a].x <= x1 && T[b].x <= x1)
      if (auto p = to_canonical_edge(T, a, b, i, x1, y1, y2, eps, delta)) return p;
  }
  return std::nullopt;
}

inline Drawing mirror_x(const Drawing& d, const Rational& x1) {
  Drawing out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = Point2{2 * x1 - d[i].x, d[i].y};
  return out;
}

inline std::optional<CanonicalPlan> to_canonical_either(const Drawing& T, const Rational& x1,
                                                        const Rational& y1, const Rational& y2,
                                                        const Rational& eps,
                                                        const Rational& delta) {
  if (auto p = to_canonical(T, x1, y1, y2, eps, delta)) return p;
  // Mirror about the obstacle line (which it fixes), plan there, mirror back.
  auto p = to_canonical(mirror_x(T, x1), x1, y1, y2, eps, delta);
  if (!p) return std::nullopt;
  for (Drawing& d : p->morph.drawings) d = mirror_x(d, x1);
  std::swap(p->at[0], p->at[1]);  // mirrored bottom-left/bottom-right swap
  return p;
}

// One full label rotation on the canonical configuration: a half turn, then
// its 180-degree image about the center of R.  Advances every label one slot.
inline void push_canonical_rotation(MorphBuilder& mb, std::array<int, 3>& at, const Rational& x1,
                                    const Rational& y1, const Rational& y2, const Rational& eps,
                                    const Rational& delta) {
  const int a = at[0], b = at[1], c = at[2];
  const Point2 BL{x1 - eps, y2 - eps}, BR{x1 + eps, y2 - eps}, TL{x1 - eps, y1 + eps},
      TR{x1 + eps, y1 + eps}, TM{x1, y1 + eps}, BM{x1, y2 - eps};
  mb.move_vertex(c, {x1 + delta, y1 + eps});
  mb.move_vertex(b, BM);
  mb.move_vertex(a, TL);
  mb.move_vertex(c, TR);
  mb.move_vertex(b, {x1 - delta, y2 - eps});
  mb.move_vertex(a, TM);
  mb.move_vertex(c, BR);
  mb.move_vertex(b, BL);
  at = {b, c, a};
}

inline std::optional<Morph> plan_case2_frame(const PlaneGraph& g, const Drawing& A,
                                             const Drawing& B, const ObstacleSet& obs,
                                             const Point2& pa, const Point2& pb) {
  if (pa == pb) return plan_case1_core(g, A, B, obs, pa);
  Frame fr;
  Point2 dq = pa - pb;
  fr.q = Point2{dq.y, dq.x};  // maps pa - pb straight up
  const Drawing At = fr.fwd(A), Bt = fr.fwd(B);
  const Point2 P1 = fr.fwd(pa), P2 = fr.fwd(pb);
  const Rational x1 = P1.x, y1 = P1.y, y2 = P2.y;
  Rational e2 = std::min(std::min(min_edge_dist2(P1, At), min_edge_dist2(P1, Bt)),
                         std::min(min_edge_dist2(P2, At), min_edge_dist2(P2, Bt)));
  const Rational eps0 = rational_below_sqrt(e2) / 2;
  if (eps0 == 0) return std::nullopt;
  for (int round = 0; round < 12; ++round) {
    const Rational eps = eps0 / Rational(Integer(1) << round);
    const Rational delta = eps * eps / (4 * (y1 - y2 + 2 * eps));
    auto c1 = to_canonical_either(At, x1, y1, y2, eps, delta);
    auto c2 = to_canonical_either(Bt, x1, y1, y2, eps, delta);
    if (!c1 || !c2) continue;
    int k = -1;
    std::array<int, 3> at = c1->at;
    for (int j = 0; j < 3; ++j) {
      if (at == c2->at) {
        k = j;
        break;
      }
      at = {at[1], at[2], at[0]};  // effect of one canonical rotation
    }
    if (k < 0) return std::nullopt;  // opposite cyclic orientation: not reachable
    MorphBuilder mb(At);
    append_morph(mb, c1->morph);
    at = c1->at;
    for (int j = 0; j < k; ++j) push_canonical_rotation(mb, at, x1, y1, y2, eps, delta);
    append_morph(mb, reversed_morph(c2->morph));
    Morph m = std::move(mb).finish();
    for (Drawing& d : m.drawings) d = fr.inv(d);
    if (m.drawings.size() >= 2 && verify_morph(g, m, obs).ok) return m;
  }
  return std::nullopt;
}

// Either obstacle may play the top role; a vertex lying on the obstacle line
// can rule out one of the two resulting frames, so try both.
inline std::optional<Morph> plan_case2(const PlaneGraph& g, const Drawing& A, const Drawing& B,
                                       const ObstacleSet& obs, const Point2& pa,
                                       const Point2& pb) {
  if (auto m = plan_case2_frame(g, A, B, obs, pa, pb)) return m;
  if (pa == pb) return std::nullopt;
  return plan_case2_frame(g, A, B, obs, pb, pa);
}

// ---------------------------------------------------------------------------
// Three interior obstacles, at most one outside.

struct AlignPlan {
  Morph morph;
  std::array<int, 3> at;  // labels ending at the positions {a, b, c}
};

inline std::optional<AlignPlan> align_case3(const Drawing& T, const Point2& a, const Point2& b,
                                            const Point2& c, const Rational& X) {
  int w = -1;
  for (int i = 0; i < 3; ++i)
    if (T[i].x > X) {
      if (w >= 0) return std::nullopt;  // more than one vertex right of the bc-line
      w = i;
    }
  if (w < 0) return std::nullopt;
  int u = (w + 1) % 3, v = (w + 2) % 3;
  if (T[u].x == T[v].x) return std::nullopt;  // vertical uv: rejected as non-generic
  const Rational t = (X - T[u].x) / (T[v].x - T[u].x);
  const Point2 I = lerp(T[u], T[v], t);
  if (dist2(T[v], I) < dist2(T[u], I)) std::swap(u, v);

  MorphBuilder mb(T);
  // Step 1: u out along the uv-line onto x = X, then w back onto it.
  mb.move_vertex(u, I);
  {
    Rational tw_den = T[w].x - T[v].x;
    if (tw_den == 0) return std::nullopt;
    Rational tw = (X - T[v].x) / tw_den;
    if (!(tw > 0 && tw < 1)) return std::nullopt;
    mb.move_vertex(w, lerp(T[v], T[w], tw));
  }
  const Point2 uP = mb.current()[u], wP = mb.current()[w], vP = mb.current()[v];
  // Step 2: v slides along the uv-line to the ab-line; then w up to b.
  auto v2 = line_inter(vP, uP - vP, a, b - a);
  if (!v2) return std::nullopt;
  if (strictly_between(vP, *v2, uP)) return std::nullopt;
  mb.move_vertex(v, *v2);
  if (strictly_between(wP, b, uP)) return std::nullopt;
  mb.move_vertex(w, b);
  // Step 3: v along the ab-line to a; u down the bc-line to c.
  if (strictly_between(*v2, a, b)) return std::nullopt;
  mb.move_vertex(v, a);
  if (strictly_between(uP, c, b)) return std::nullopt;
  mb.move_vertex(u, c);
  return AlignPlan{std::move(mb).finish(), {v, w, u}};
}

// 5-step clockwise shift on the wedge triangle: the label at a moves to b,
// b to c, c to a.  thetaB in (0,1) flattens the line through b; thetaC in
// (0,1) flattens the line through c relative to the ab-line.
inline bool push_case3_rotation(MorphBuilder& mb, std::array<int, 3>& at, const Point2& A,
                                const Point2& Bp, const Point2& Cp, const Rational& thetaB,
                                const Rational& thetaC) {
  const int la = at[0], lb = at[1], lc = at[2];
  if (Cp.x == A.x || Bp.x == A.x) return false;
  const Rational sac = (Cp.y - A.y) / (Cp.x - A.x);
  const Rational sab = (Bp.y - A.y) / (Bp.x - A.x);
  if (!(sac < 0) || !(sab > 0)) return false;
  const Rational sb = sac * thetaB;  // shallow negative, through b
  const Rational sc = sab * thetaC;  // positive but flatter than the ab-line, through c
  const Point2 db{Rational(1), sb}, dc{Rational(1), sc}, dac{Rational(1), sac},
      dab = Bp - A;
  auto ap = line_inter(A, dac, Bp, db);
  auto bp = line_inter(Bp, db, Cp, dc);
  auto cp = line_inter(A, dab, Cp, dc);
  if (!ap || !bp || !cp) return false;
  if (!(ap->x > A.x && ap->x < Cp.x)) return false;  // a' strictly between a and c
  if (!(bp->x > Bp.x)) return false;                 // b' right of the bc-line
  if (!(cp->x < A.x)) return false;                  // c' beyond a on the ab-line
  mb.move_vertex(la, *ap);
  mb.move_vertex(lb, *bp);
  Drawing d = mb.current();
  d[la] = Bp;
  d[lc] = *cp;
  mb.push(d);
  if (strictly_between(*bp, Cp, *cp)) return false;
  mb.move_vertex(lb, Cp);
  if (strictly_between(*cp, A, Bp)) return false;
  mb.move_vertex(lc, A);
  at = {lc, la, lb};
  return true;
}

inline std::optional<Morph> plan_case3(const PlaneGraph& g, const Drawing& A, const Drawing& B,
                                       const ObstacleSet& obs, const std::vector<Point2>& inner,
                                       const std::vector<Point2>& p0_candidates);

inline std::optional<Morph> plan_case3_with_p0(const PlaneGraph& g, const Drawing& A,
                                               const Drawing& B, const ObstacleSet& obs,
                                               const std::vector<Point2>& inner,
                                               const Point2& p0) {
  // Directions from the outer obstacle; the middle ray's obstacle is p3.
  std::array<Point2, 3> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = inner[i] - p0;
    if (d[i] == Point2{Rational(0), Rational(0)}) return std::nullopt;
  }
  int mid = -1;
  for (int m = 0; m < 3; ++m) {
    int i = (m + 1) % 3, j = (m + 2) % 3;
    int s = sign(cross(d[i], d[j]));
    if (s == 0) return std::nullopt;  // two rays coincide: non-generic
    if (sign(cross(d[i], d[m])) == s && sign(cross(d[m], d[j])) == s) {
      mid = m;
      break;
    }
  }
  if (mid < 0) return std::nullopt;
  const Point2 pa = inner[(mid + 1) % 3], pb = inner[(mid + 2) % 3], p3 = inner[mid];

  Frame fr;
  Point2 dq = pa - pb;
  fr.q = Point2{dq.y, dq.x};
  Rational x1 = fr.fwd(pa).x;
  if (fr.fwd(p0).x == x1) return std::nullopt;
  if (fr.fwd(p0).x > x1) {
    fr.mirror = true;
    fr.mx = x1;
  }
  const Drawing At = fr.fwd(A), Bt = fr.fwd(B);
  const Point2 P0 = fr.fwd(p0), P3 = fr.fwd(p3);
  const Point2 PA = fr.fwd(pa), PB = fr.fwd(pb);
  const Rational x0 = P0.x;
  if (!(P3.x > x0)) return std::nullopt;

  // The bc-line: right of every obstacle, with exactly one vertex of each
  // drawing beyond it.
  auto two_max = [](const Drawing& t) {
    std::array<Rational, 3> xs{t[0].x, t[1].x, t[2].x};
    std::sort(xs.begin(), xs.end());
    return std::pair<Rational, Rational>(xs[1], xs[2]);  // {second largest, largest}
  };
  auto [secA, maxA] = two_max(At);
  auto [secB, maxB] = two_max(Bt);
  const Rational lo = std::max(std::max(x1, P3.x), std::max(secA, secB));
  const Rational hi = std::min(maxA, maxB);
  if (!(lo < hi)) return std::nullopt;
  const Rational X = (lo + hi) / 2;

  // Heights of the three rays where they cross the bc-line.
  Rational yhi, ylo;
  for (int i = 0; i < 3; ++i) {
    const Point2 Pi = fr.fwd(inner[i]);
    Rational yr = P0.y + (X - x0) * (Pi.y - P0.y) / (Pi.x - x0);
    if (i == 0) {
      yhi = ylo = yr;
    } else {
      yhi = std::max(yhi, yr);
      ylo = std::min(ylo, yr);
    }
  }

  const Rational marg_base = yhi - ylo + 1;
  for (const Rational& marg : {marg_base, Rational(marg_base / 4), Rational(4 * marg_base)}) {
    const Point2 b{X, yhi + marg}, c{X, ylo - marg};
    for (const Rational& lam : {Rational(1, 8), Rational(1, 32), Rational(1, 2)}) {
      const Point2 a = P0 + lam * (Rational(1, 2) * (PA + PB) - P0);
      const Drawing Gam{a, b, c};
      bool contains = strictly_outside(Gam, P0);
      for (int i = 0; i < 3 && contains; ++i) contains = strictly_inside(Gam, fr.fwd(inner[i]));
      if (!contains) continue;
      auto al1 = align_case3(At, a, b, c, X);
      auto al2 = align_case3(Bt, a, b, c, X);
      if (!al1 || !al2) continue;
      int k = -1;
      std::array<int, 3> at = al1->at;
      for (int j = 0; j < 3; ++j) {
        if (at == al2->at) {
          k = j;
          break;
        }
        at = {at[2], at[0], at[1]};  // effect of one clockwise shift
      }
      if (k < 0) continue;
      for (const Rational& thetaB : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
        for (const Rational& thetaC : {Rational(1, 2), Rational(3, 4), Rational(7, 8)}) {
          MorphBuilder mb(At);
          append_morph(mb, al1->morph);
          at = al1->at;
          bool ok = true;
          for (int j = 0; j < k && ok; ++j)
            ok = push_case3_rotation(mb, at, a, b, c, thetaB, thetaC);
          if (!ok) continue;
          append_morph(mb, reversed_morph(al2->morph));
          Morph m = std::move(mb).finish();
          for (Drawing& dd : m.drawings) dd = fr.inv(dd);
          if (m.drawings.size() >= 2 && verify_morph(g, m, obs).ok) return m;
          if (k == 0) break;  // no rotation: the slopes are unused
        }
        if (k == 0) break;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Morph> plan_case3(const PlaneGraph& g, const Drawing& A, const Drawing& B,
                                       const ObstacleSet& obs, const std::vector<Point2>& inner,
                                       const std::vector<Point2>& p0_candidates) {
  // Collinear inner obstacles: same procedure as two stacked obstacles, with
  // the extreme pair spanning the line.
  if (cross(inner[1] - inner[0], inner[2] - inner[0]) == 0) {
    int bi = 0, bj = 1;
    Rational best = dist2(inner[0], inner[1]);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (dist2(inner[i], inner[j]) > best) {
          best = dist2(inner[i], inner[j]);
          bi = i;
          bj = j;
        }
    return plan_case2(g, A, B, obs, inner[bi], inner[bj]);
  }
  for (const Point2& p0 : p0_candidates)
    if (auto m = plan_case3_with_p0(g, A, B, obs, inner, p0)) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Four interior obstacles.

inline std::optional<Morph> plan_case4(const PlaneGraph& g, const Drawing& A, const Drawing& B,
                                       const ObstacleSet& obs, const std::vector<Point2>& inner) {
  const Point2 c = barycenter(inner);
  Rational spread2(0);
  for (const Point2& p : inner) spread2 = std::max(spread2, dist2(p, c));
  const Rational spread_ub = rational_above_sqrt(spread2);
  for (int k = 1; k <= 22; ++k) {
    const Rational S(Integer(1) << k);
    const Drawing A2 = scaled(A, c, S);
    const Drawing B2 = scaled(B, c, S);
    // Cheap precheck: the circle around the cluster must clear its spread.
    const Rational d2 = std::min(min_edge_dist2(c, A2), min_edge_dist2(c, B2));
    if (!(rational_below_sqrt(d2) / 2 > 4 * spread_ub)) continue;
    auto core = plan_case1_core(g, A2, B2, obs, c);
    if (!core) continue;
    MorphBuilder mb(A);
    mb.push(A2);
    append_morph(mb, *core);
    mb.push(B);
    Morph m = std::move(mb).finish();
    if (m.drawings.size() >= 2 && verify_morph(g, m, obs).ok) return m;
  }
  return std::nullopt;
}

}  // namespace tri_detail

// Morph between two compatible triangle drawings with at most four obstacles.
// Throws std::invalid_argument for malformed input (not a triangle, more than
// four obstacles, incompatible face assignment) and std::runtime_error with
// an unsupported-configuration message when no verified plan is found.  The
// returned morph always passes verify_morph with the instance's obstacles.
inline Morph triangle_compatible_morph(const Instance& inst) {
  const PlaneGraph& g = inst.graph;
  if (g.n != 3 || g.edges.size() != 3)
    throw std::invalid_argument("triangle_compatible_morph: graph is not a triangle");
  if (inst.obstacles.size() > 4)
    throw std::invalid_argument("triangle_compatible_morph: more than four obstacles");
  CompatibilityReport comp = check_necessary_compatibility(inst);
  if (!comp.ok)
    throw std::invalid_argument("triangle_compatible_morph: incompatible instance: " +
                                comp.reason);
  const Drawing& A = inst.start;
  const Drawing& B = inst.end;
  if (A == B) return Morph{{A, B}};
  {
    Morph direct{{A, B}};
    if (verify_morph(g, direct, inst.obstacles).ok) return direct;
  }
  std::vector<Point2> inner, outer;
  for (const Point2& p : inst.obstacles)
    (locate_point(g, A, p) == kOuterFace ? outer : inner).push_back(p);
  // Coincident obstacles constrain the morph once; plan with the distinct set.
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());

  std::optional<Morph> m;
  switch (inner.size()) {
    case 0:
      m = tri_detail::plan_case0(g, A, B, inst.obstacles);
      break;
    case 1:
      m = tri_detail::plan_case1_core(g, A, B, inst.obstacles, inner[0]);
      break;
    case 2:
      m = tri_detail::plan_case2(g, A, B, inst.obstacles, inner[0], inner[1]);
      break;
    case 3: {
      std::vector<Point2> p0s = outer;
      if (p0s.empty()) {
        // No outer obstacle: pick far-away virtual viewpoints; a morph that
        // additionally avoids them is still a valid answer.
        BBox bb;
        bb.add(A);
        bb.add(B);
        for (const Point2& p : inst.obstacles) bb.add(p);
        Rational w = bb.xmax - bb.xmin + 1;
        p0s.push_back({bb.xmin - w, (bb.ymin + bb.ymax) / 2});
        p0s.push_back({bb.xmin - w, bb.ymin - w});
        p0s.push_back({(bb.xmin + bb.xmax) / 2, bb.ymax + w});
      }
      m = tri_detail::plan_case3(g, A, B, inst.obstacles, inner, p0s);
      break;
    }
    default:
      m = tri_detail::plan_case4(g, A, B, inst.obstacles, inner);
      break;
  }
  if (!m)
    throw std::runtime_error(
        "triangle_compatible_morph: unsupported-configuration (no verified plan found)");
  return *m;
}

}  // namespace obmorph
