#pragma once

// Canonical blocked / counterexample instances: a C4 pair separated by three
// obstacles, a wrapped even cycle against its shifted version, a C3 shift
// blocked by five obstacles, and a densely filled C8 pair.  Every generator
// re-validates its output and checks the defining face conditions, so a
// returned Instance is always well-formed.

#include "obmorph/drawing.hpp"
#include "obmorph/morph_util.hpp"

#include <stdexcept>
#include <string>

namespace obmorph {

namespace fix_detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw std::logic_error(std::string("fixture generation failed: ") + what);
}

inline PlaneGraph make_cycle(const Drawing& pos) {
  PlaneGraph g;
  g.n = static_cast<int>(pos.size());
  for (int i = 0; i < g.n; ++i) g.edges.push_back({i, (i + 1) % g.n});
  g.rotation = derive_rotation(g.n, g.edges, pos);
  g.outer_face = outer_walk_index(g, pos);
  return g;
}

// The drawing with every label advanced `off` positions along the cycle.
inline Drawing shifted_cycle(const Drawing& pos, int off) {
  const int n = static_cast<int>(pos.size());
  Drawing out(pos.size());
  for (int i = 0; i < n; ++i) out[i] = pos[((i + off) % n + n) % n];
  return out;
}

inline void check_instance(const Instance& inst) {
  require(validate_drawing(inst.graph, inst.start).empty(), "start drawing invalid");
  require(validate_drawing(inst.graph, inst.end).empty(), "end drawing invalid");
  require(check_necessary_compatibility(inst).ok, "obstacle faces inconsistent");
}

inline bool interior_in(const PlaneGraph& g, const Drawing& d, const Point2& p) {
  int f = locate_point(g, d, p);
  return f != kOuterFace && f != kOnDrawing;
}

inline Rational min_edge_dist2(const PlaneGraph& g, const Drawing& d, const Point2& p) {
  Rational best(-1);
  for (auto& [u, v] : g.edges) {
    Rational q = dist2_point_segment(p, d[u], d[v]);
    if (best < 0 || q < best) best = q;
  }
  return best;
}

}  // namespace fix_detail

// A 4-cycle corridor over two interior obstacles, dipping below an exterior
// obstacle at the origin in the start drawing and arching above it in the
// end drawing.  The pair satisfies every necessary compatibility condition
// yet no morph between them avoids the three obstacles.
inline Instance gen_blocked_c4_three() {
  using namespace fix_detail;
  Drawing a{{Rational(-4), Rational(2)},
            {Rational(0), Rational(-4)},
            {Rational(4), Rational(2)},
            {Rational(0), Rational(-1)}};
  Drawing b{{Rational(-4), Rational(-2)},
            {Rational(0), Rational(1)},
            {Rational(4), Rational(-2)},
            {Rational(0), Rational(4)}};
  Instance inst;
  inst.graph = make_cycle(a);
  inst.start = a;
  inst.end = b;
  inst.obstacles = {{Rational(-2), Rational(0)}, {Rational(2), Rational(0)},
                    {Rational(0), Rational(0)}};
  check_instance(inst);
  require(interior_in(inst.graph, a, inst.obstacles[0]) &&
              interior_in(inst.graph, b, inst.obstacles[0]),
          "left interior obstacle misplaced");
  require(interior_in(inst.graph, a, inst.obstacles[1]) &&
              interior_in(inst.graph, b, inst.obstacles[1]),
          "right interior obstacle misplaced");
  require(locate_point(inst.graph, a, inst.obstacles[2]) == kOuterFace &&
              locate_point(inst.graph, b, inst.obstacles[2]) == kOuterFace,
          "outer obstacle misplaced");
  return inst;
}

// An even cycle wound around a triangle as a thin doubled band: an inner
// strand spirals outward from v1, turns around at v_{n/2+1}, and an outer
// strand retraces it back.  The band is pinned by two interior obstacles at
// the caps, two exterior obstacles just inside the first strand, and one
// exterior obstacle beyond the outermost strand of each triangle side; a
// fence of obstacles beyond the outermost strand and a coarse fill of the
// central pocket keep the free space a thin annulus around the band.
// The end drawing is the same curve with labels advanced by `offset`.
inline Instance gen_blocked_even_cycle(int n, int offset = 1) {
  using namespace fix_detail;
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("gen_blocked_even_cycle: need even n >= 6");
  const Point2 corner[3] = {{Rational(2), Rational(-1)},
                            {Rational(-2), Rational(-1)},
                            {Rational(0), Rational(2)}};
  const int B = 12;  // radial quantum of the innermost waypoint
  auto at = [&](int k, int dq) {  // waypoint k, radial offset dq quanta
    return Rational(B + 3 * k + dq) * corner[k % 3];
  };
  const int half = n / 2;
  Drawing a(n);
  a[0] = at(0, 0);
  a[half] = at(half, 0);
  for (int k = 1; k < half; ++k) {
    a[k] = at(k, -1);          // inner strand, outward bound
    a[n - k] = at(k, +1);      // outer strand, return
  }
  Instance inst;
  inst.graph = make_cycle(a);
  inst.start = a;
  inst.end = shifted_cycle(a, offset);

  // Interior obstacles inside the two band caps, an eighth of the way from
  // the cap vertex toward the centre of the neighbouring waypoint.
  Point2 o1 = a[0] + Rational(1, 8) * (at(1, 0) - a[0]);
  Point2 o2 = a[half] + Rational(1, 8) * (at(half - 1, 0) - a[half]);
  // Exterior obstacles one quantum inside v2 and v3 (toward the barycenter).
  Point2 o3 = at(1, -2);
  Point2 o4 = at(2, -2);
  inst.obstacles = {o1, o2, o3, o4};
  // One exterior obstacle slightly beyond the midpoint of the outermost edge
  // of each triangle side.
  for (int s = 0; s < 3; ++s) {
    int bu = -1, bv = -1;
    Rational best;
    for (auto& [u, v] : inst.graph.edges) {
      Point2 m = Rational(1, 2) * (a[u] + a[v]);
      int cu = -1, cv = -1;
      for (int c = 0; c < 3; ++c) {
        if (corner[c].x * a[u].y == corner[c].y * a[u].x) cu = c;
        if (corner[c].x * a[v].y == corner[c].y * a[v].x) cv = c;
      }
      if (!((cu == s && cv == (s + 1) % 3) || (cv == s && cu == (s + 1) % 3))) continue;
      Rational r2 = m.x * m.x + m.y * m.y;
      if (bu < 0 || r2 > best) {
        best = r2;
        bu = u;
        bv = v;
      }
    }
    require(bu >= 0, "side without a spanning edge");
    Point2 m = Rational(1, 2) * (a[bu] + a[bv]);
    inst.obstacles.push_back(Rational(B + 3 * half + 2, B + 3 * half) * m);
  }
  // Exterior fence: the triangle through the corner directions at two quanta
  // beyond the outermost waypoint, sampled densely along each side.
  {
    const int fr = B + 3 * half + 3;
    const int samples = 2 * fr;
    for (int s = 0; s < 3; ++s) {
      Point2 u = Rational(fr) * corner[s], v = Rational(fr) * corner[(s + 1) % 3];
      for (int t = 0; t < samples; ++t)
        inst.obstacles.push_back(u + Rational(t, samples) * (v - u));
    }
  }
  // Central pocket fill, well inside the innermost strand.
  inst.obstacles.push_back({Rational(0), Rational(0)});
  for (int r = 3; r <= B - 3; r += 3)
    for (int s = 0; s < 3; ++s) inst.obstacles.push_back(Rational(r) * corner[s]);

  check_instance(inst);
  require(free_vertices(inst.graph, a).empty(), "wrapped drawing has a free vertex");
  for (int i = 0; i < 2; ++i)
    require(interior_in(inst.graph, a, inst.obstacles[i]), "cap obstacle not interior");
  for (int i = 2; i < 7; ++i)
    require(locate_point(inst.graph, a, inst.obstacles[i]) == kOuterFace,
            "outer obstacle not exterior");
  return inst;
}

// A triangle and its shifted version, blocked by three interior obstacles
// just inside the corners and two exterior obstacles near the midpoints of
// the two top edges.  The slope conditions that make the blocking argument
// work are asserted at generation time.
inline Instance gen_blocked_c3_five() {
  using namespace fix_detail;
  Drawing a{{Rational(0), Rational(8)},    // apex
            {Rational(6), Rational(-4)},   // lower right
            {Rational(-6), Rational(-4)}};  // lower left
  Instance inst;
  inst.graph = make_cycle(a);
  inst.start = a;
  inst.end = shifted_cycle(a, 1);
  const Rational s(63, 64);
  Point2 ia = s * a[0], ib = s * a[1], ic = s * a[2];
  // Exterior obstacles just off the midpoints of the apex edges.
  Point2 mab = Rational(1, 2) * (a[0] + a[1]);
  Point2 mac = Rational(1, 2) * (a[0] + a[2]);
  Point2 ob = mab + Rational(1, 128) * Point2{a[0].y - a[1].y, a[1].x - a[0].x};
  Point2 oc = mac + Rational(1, 128) * Point2{a[2].y - a[0].y, a[0].x - a[2].x};
  inst.obstacles = {ia, ib, ic, ob, oc};
  check_instance(inst);
  for (int i = 0; i < 3; ++i)
    require(interior_in(inst.graph, a, inst.obstacles[i]), "corner obstacle not interior");
  for (int i = 3; i < 5; ++i)
    require(locate_point(inst.graph, a, inst.obstacles[i]) == kOuterFace,
            "edge obstacle not exterior");
  // Blocking slope conditions: through the lower-right interior obstacle and
  // the right edge obstacle negative, and mirrored positive on the left.
  require((ob.y - ib.y) * (ob.x - ib.x) < 0, "right tangent slope not negative");
  require((oc.y - ic.y) * (oc.x - ic.x) > 0, "left tangent slope not positive");
  return inst;
}

// Two C8 corridors over the same pair of pockets, one dipping under and one
// arching over the origin, with both the shared interior pockets and the
// shared exterior densely filled by obstacles on the given lattice pitch.
// The end drawing has exactly two free vertices.
inline Instance gen_fox_c8(const Rational& pitch) {
  using namespace fix_detail;
  if (!(pitch > 0)) throw std::invalid_argument("gen_fox_c8: pitch must be positive");
  auto pt = [](long xn, long xd, long yn, long yd) {
    return Point2{Rational(xn, xd), Rational(yn, yd)};
  };
  Drawing a{pt(-4, 1, 2, 1),  pt(-2, 1, -2, 1), pt(0, 1, -4, 1), pt(2, 1, -2, 1),
            pt(4, 1, 2, 1),   pt(2, 1, 1, 2),   pt(0, 1, -1, 2), pt(-2, 1, 1, 2)};
  Drawing b{pt(-4, 1, -2, 1), pt(-2, 1, -3, 4), pt(0, 1, 1, 2),  pt(2, 1, -3, 4),
            pt(4, 1, -2, 1),  pt(2, 1, 2, 1),   pt(0, 1, 4, 1),  pt(-2, 1, 2, 1)};
  Instance inst;
  inst.graph = make_cycle(a);
  inst.start = a;
  inst.end = b;
  // Fill the lattice over the bounding box, keeping points that lie in the
  // same face of both drawings with clearance 1/4 from every edge.
  const Rational lo(-5), hi(5), clr2(1, 16);
  bool any_inner = false, any_outer = false;
  for (Rational x = lo; x <= hi; x += pitch) {
    for (Rational y = lo; y <= hi; y += pitch) {
      Point2 p{x, y};
      if (min_edge_dist2(inst.graph, a, p) <= clr2) continue;
      if (min_edge_dist2(inst.graph, b, p) <= clr2) continue;
      bool in_a = interior_in(inst.graph, a, p), in_b = interior_in(inst.graph, b, p);
      if (in_a != in_b) continue;
      inst.obstacles.push_back(p);
      (in_a ? any_inner : any_outer) = true;
    }
  }
  check_instance(inst);
  require(any_inner && any_outer, "lattice fill left a region empty");
  require(free_vertices(inst.graph, a).empty(), "start drawing has a free vertex");
  require(free_vertices(inst.graph, b) == std::vector<int>({1, 3}),
          "end drawing free vertices not as designed");
  return inst;
}

}  // namespace obmorph
