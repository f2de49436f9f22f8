#pragma once

// Exact verification of piecewise-linear morphs.
//
// A linear step interpolates every vertex along a straight line.  Between
// two valid endpoint drawings, the first violation of crossing-freeness or
// obstacle-avoidance is always witnessed by one of:
//   - two vertices coinciding,
//   - a vertex hitting a non-incident edge (covers adjacent-edge overlap),
//   - an obstacle hit by a vertex or a moving edge,
//   - a permanently collinear triple sliding into overlap.
// All of these reduce to roots of linear/quadratic polynomials in t, checked
// exactly over quadratic algebraic numbers.

#include "obmorph/drawing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace obmorph {

enum class ViolationKind : int {
  VertexVertex = 0,
  VertexOnEdge = 1,
  ObstacleOnVertex = 2,
  ObstacleOnEdge = 3,
  CollinearOverlap = 4,
  InvalidEndpointDrawing = 5,
};

inline const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::VertexVertex: return "vertex-vertex";
    case ViolationKind::VertexOnEdge: return "vertex-on-edge";
    case ViolationKind::ObstacleOnVertex: return "obstacle-on-vertex";
    case ViolationKind::ObstacleOnEdge: return "obstacle-on-edge";
    case ViolationKind::CollinearOverlap: return "permanent-collinearity-overlap";
    case ViolationKind::InvalidEndpointDrawing: return "invalid-endpoint-drawing";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  AlgebraicTime time;            // first contact time within (0, 1); 0 for endpoint issues
  int a = -1, b = -1, c = -1;    // entity ids: vertices / edge endpoints / obstacle index
  std::string detail;
};

struct StepReport {
  bool ok = false;
  std::optional<Violation> violation;
};

namespace detail {

struct Interval {
  Rational lo, hi;
};

inline Interval span(const MovingPoint& p, bool x_axis) {
  const Rational& a = x_axis ? p.s.x : p.s.y;
  const Rational& b = x_axis ? p.e.x : p.e.y;
  return a <= b ? Interval{a, b} : Interval{b, a};
}

inline bool overlaps(const Interval& a, const Interval& b) {
  return !(a.hi < b.lo || b.hi < a.lo);
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

// Candidate collection with deterministic earliest-event selection.
struct EventCollector {
  std::optional<Violation> best;

  void offer(ViolationKind kind, const AlgebraicTime& t, int a, int b, int c) {
    if (best) {
      int cmp = t.compare(best->time);
      if (cmp > 0) return;
      if (cmp == 0) {
        auto key = [](const Violation& v) {
          return std::tuple<int, int, int, int>(static_cast<int>(v.kind), v.a, v.b, v.c);
        };
        Violation cand{kind, t, a, b, c, {}};
        if (key(cand) >= key(*best)) return;
      }
    }
    best = Violation{kind, t, a, b, c, {}};
  }
};

// Coincidence times (in (0,1)) of two moving points; the motion difference
// is linear, so there is at most one isolated solution.  A permanent
// coincidence returns nullopt (endpoint validation already rejects it).
inline std::optional<Rational> coincidence_time(const MovingPoint& p, const MovingPoint& q) {
  Rational dx0 = p.s.x - q.s.x, dx1 = (p.e.x - q.e.x) - dx0;
  Rational dy0 = p.s.y - q.s.y, dy1 = (p.e.y - q.e.y) - dy0;
  if (dx1 == 0 && dy1 == 0) return std::nullopt;  // constant difference
  Rational t;
  if (dx1 != 0) {
    t = -dx0 / dx1;
    if (dy0 + t * dy1 != 0) return std::nullopt;
  } else {
    if (dx0 != 0) return std::nullopt;
    t = -dy0 / dy1;
  }
  if (t > 0 && t < 1) return t;
  return std::nullopt;
}

}  // namespace detail

struct StepOptions {
  // When true the caller vouches for both endpoint drawings (including
  // obstacle clearance); verify_morph uses this to validate each boundary
  // drawing exactly once.
  bool skip_endpoint_validation = false;
};

inline bool obstacle_clear_of_drawing(const PlaneGraph& g, const Drawing& pos,
                                      const ObstacleSet& obstacles, Violation* out = nullptr) {
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    for (int v = 0; v < g.n; ++v)
      if (pos[v] == obstacles[i]) {
        if (out) *out = {ViolationKind::InvalidEndpointDrawing, {}, v, -1, static_cast<int>(i),
                         "obstacle-on-vertex-at-endpoint"};
        return false;
      }
    for (auto& [u, v] : g.edges) {
      // Cheap interval reject before the exact test.
      const Point2& p = obstacles[i];
      if ((p.x < pos[u].x && p.x < pos[v].x) || (p.x > pos[u].x && p.x > pos[v].x)) continue;
      if ((p.y < pos[u].y && p.y < pos[v].y) || (p.y > pos[u].y && p.y > pos[v].y)) continue;
      if (on_segment(p, pos[u], pos[v])) {
        if (out) *out = {ViolationKind::InvalidEndpointDrawing, {}, u, v, static_cast<int>(i),
                         "obstacle-on-edge-at-endpoint"};
        return false;
      }
    }
  }
  return true;
}

// Verify one linear step from drawing `A` to drawing `B`.
inline StepReport verify_linear_step(const PlaneGraph& g, const Drawing& A, const Drawing& B,
                                     const ObstacleSet& obstacles,
                                     const StepOptions& opt = {}) {
  StepReport rep;
  if (!opt.skip_endpoint_validation) {
    if (!drawing_valid(g, A)) {
      rep.violation = Violation{ViolationKind::InvalidEndpointDrawing, {}, -1, -1, -1,
                                "start-drawing-invalid"};
      return rep;
    }
    if (!drawing_valid(g, B)) {
      rep.violation = Violation{ViolationKind::InvalidEndpointDrawing, {}, -1, -1, -1,
                                "end-drawing-invalid"};
      return rep;
    }
    Violation ov;
    if (!obstacle_clear_of_drawing(g, A, obstacles, &ov) ||
        !obstacle_clear_of_drawing(g, B, obstacles, &ov)) {
      rep.violation = ov;
      return rep;
    }
  }

  const int n = g.n;
  std::vector<MovingPoint> mp(n);
  std::vector<bool> moving(n);
  for (int v = 0; v < n; ++v) {
    mp[v] = MovingPoint(A[v], B[v]);
    moving[v] = !mp[v].stationary();
  }

  detail::EventCollector ev;

  // (1) Vertex-vertex coincidences.
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!moving[u] && !moving[v]) continue;
      if (!detail::overlaps(detail::span(mp[u], true), detail::span(mp[v], true))) continue;
      if (!detail::overlaps(detail::span(mp[u], false), detail::span(mp[v], false))) continue;
      if (auto t = detail::coincidence_time(mp[u], mp[v]))
        ev.offer(ViolationKind::VertexVertex, AlgebraicTime::from_rational(*t), u, v, -1);
    }

  auto check_point_on_edge = [&](const MovingPoint& w, int wid, bool w_is_obstacle,
                                 int u, int v) {
    // Interval reject: the point's sweep box against the edge's sweep box.
    detail::Interval ex = detail::hull(detail::span(mp[u], true), detail::span(mp[v], true));
    detail::Interval ey = detail::hull(detail::span(mp[u], false), detail::span(mp[v], false));
    if (!detail::overlaps(detail::span(w, true), ex)) return;
    if (!detail::overlaps(detail::span(w, false), ey)) return;

    QuadraticPoly f = moving_orientation(mp[u], mp[v], w);
    ViolationKind kind = w_is_obstacle ? ViolationKind::ObstacleOnEdge
                                       : ViolationKind::VertexOnEdge;
    if (f.is_zero()) {
      // Permanently collinear: overlap iff the span dot product reaches <= 0.
      QuadraticPoly gsp = moving_span_dot(w, mp[u], mp[v]);
      // Valid endpoints imply gsp(0) > 0 and gsp(1) > 0; any root in (0,1)
      // opens (or touches) an overlap window.
      UnitRoots rr = roots_in_unit_interval(gsp);
      if (rr.status == RootStatus::IdenticallyZero) {
        // The point permanently coincides with both endpoints — caught by
        // endpoint validation.
        return;
      }
      for (auto& t : rr.roots)
        if (t.compare(Rational(0)) > 0 && t.compare(Rational(1)) < 0) {
          ev.offer(w_is_obstacle ? kind : ViolationKind::CollinearOverlap, t,
                   w_is_obstacle ? u : wid, w_is_obstacle ? v : u,
                   w_is_obstacle ? wid : v);
          break;
        }
      return;
    }
    UnitRoots rr = roots_in_unit_interval(f);
    for (auto& t : rr.roots) {
      if (!(t.compare(Rational(0)) > 0 && t.compare(Rational(1)) < 0)) continue;
      if (on_segment_at(w, mp[u], mp[v], t)) {
        if (w_is_obstacle)
          ev.offer(kind, t, u, v, wid);
        else
          ev.offer(kind, t, wid, u, v);
      }
    }
  };

  // (2) Vertices against non-incident edges (includes adjacent-edge overlap
  // via the far endpoints).
  for (auto& [u, v] : g.edges)
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (!moving[w] && !moving[u] && !moving[v]) continue;
      check_point_on_edge(mp[w], w, false, u, v);
    }

  // (3) Obstacles against moving edges.
  for (auto& [u, v] : g.edges) {
    if (!moving[u] && !moving[v]) continue;
    for (std::size_t i = 0; i < obstacles.size(); ++i)
      check_point_on_edge(MovingPoint::fixed(obstacles[i]), static_cast<int>(i), true, u, v);
  }

  // (4) Obstacles against moving vertices.
  for (int v = 0; v < n; ++v) {
    if (!moving[v]) continue;
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      MovingPoint fp = MovingPoint::fixed(obstacles[i]);
      if (!detail::overlaps(detail::span(mp[v], true), detail::span(fp, true))) continue;
      if (!detail::overlaps(detail::span(mp[v], false), detail::span(fp, false))) continue;
      if (auto t = detail::coincidence_time(mp[v], fp))
        ev.offer(ViolationKind::ObstacleOnVertex, AlgebraicTime::from_rational(*t), v,
                 static_cast<int>(i), -1);
    }
  }

  if (ev.best) {
    rep.violation = std::move(ev.best);
    return rep;
  }
  rep.ok = true;
  return rep;
}

// ---------------------------------------------------------------------------

struct Morph {
  // k+1 drawings encode k linear steps.
  std::vector<Drawing> drawings;
  int steps() const { return static_cast<int>(drawings.size()) - 1; }
};

struct MorphReport {
  bool ok = false;
  int failing_step = -1;  // step index whose verification failed
  std::optional<Violation> violation;
};

inline MorphReport verify_morph(const PlaneGraph& g, const Morph& m, const ObstacleSet& obstacles) {
  MorphReport rep;
  if (m.drawings.size() < 2) {
    rep.failing_step = 0;
    rep.violation = Violation{ViolationKind::InvalidEndpointDrawing, {}, -1, -1, -1,
                              "morph-needs-at-least-two-drawings"};
    return rep;
  }
  // Validate every boundary drawing exactly once.
  for (std::size_t i = 0; i < m.drawings.size(); ++i) {
    Violation ov;
    if (!drawing_valid(g, m.drawings[i])) {
      rep.failing_step = static_cast<int>(i == 0 ? 0 : i - 1);
      rep.violation = Violation{ViolationKind::InvalidEndpointDrawing, {}, static_cast<int>(i),
                                -1, -1, "boundary-drawing-invalid"};
      return rep;
    }
    if (!obstacle_clear_of_drawing(g, m.drawings[i], obstacles, &ov)) {
      rep.failing_step = static_cast<int>(i == 0 ? 0 : i - 1);
      rep.violation = ov;
      return rep;
    }
  }
  StepOptions opt;
  opt.skip_endpoint_validation = true;
  for (int s = 0; s < m.steps(); ++s) {
    StepReport sr = verify_linear_step(g, m.drawings[s], m.drawings[s + 1], obstacles, opt);
    if (!sr.ok) {
      rep.failing_step = s;
      rep.violation = sr.violation;
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Sampling oracle: validates the interpolated drawing at interior sample
// times j/N directly (contact violations only), entirely independent of the
// root-finding machinery above.  Intended as a test oracle: it can produce
// false negatives (events between samples) but never false positives.

struct SampleViolation {
  long sample = -1;  // numerator: time = sample / samples
  std::string what;
};

inline std::optional<SampleViolation> sample_check(const PlaneGraph& g, const Drawing& A,
                                                   const Drawing& B, const ObstacleSet& obstacles,
                                                   long samples) {
  using I = Integer;
  struct IPt { I x, y; };
  const int n = g.n;
  // Clear all denominators once: scaled coordinates stay integral at every
  // sample time j/N after the second scaling by N.
  I L = 1;
  auto fold = [&L](const Rational& q) { L = boost::multiprecision::lcm(L, den(q)); };
  for (auto& p : A) { fold(p.x); fold(p.y); }
  for (auto& p : B) { fold(p.x); fold(p.y); }
  for (auto& p : obstacles) { fold(p.x); fold(p.y); }
  auto scaled = [&L](const Point2& p) {
    return IPt{num(p.x) * (L / den(p.x)), num(p.y) * (L / den(p.y))};
  };
  std::vector<IPt> a(n), b(n);
  for (int v = 0; v < n; ++v) { a[v] = scaled(A[v]); b[v] = scaled(B[v]); }
  std::vector<IPt> obs;
  obs.reserve(obstacles.size());
  for (auto& p : obstacles) obs.push_back(scaled(p));

  const I N(samples);
  std::vector<IPt> cur(n), o(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) o[i] = IPt{obs[i].x * N, obs[i].y * N};
  auto cross3 = [](const IPt& p, const IPt& q, const IPt& r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  };
  auto dot_span = [](const IPt& p, const IPt& q, const IPt& r) {
    // (p-q).(p-r)
    return (p.x - q.x) * (p.x - r.x) + (p.y - q.y) * (p.y - r.y);
  };
  auto on_seg = [&](const IPt& p, const IPt& q, const IPt& r) {
    return cross3(q, r, p) == 0 && dot_span(p, q, r) <= 0;
  };

  for (long j = 1; j < samples; ++j) {
    const I tj(j), sj = N - tj;
    for (int v = 0; v < n; ++v) {
      cur[v].x = a[v].x * sj + b[v].x * tj;
      cur[v].y = a[v].y * sj + b[v].y * tj;
    }
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (cur[u].x == cur[v].x && cur[u].y == cur[v].y)
          return SampleViolation{j, "vertex-vertex"};
    for (auto& [u, v] : g.edges) {
      for (int w = 0; w < n; ++w)
        if (w != u && w != v && on_seg(cur[w], cur[u], cur[v]))
          return SampleViolation{j, "vertex-on-edge"};
      for (auto& p : o)
        if (on_seg(p, cur[u], cur[v])) return SampleViolation{j, "obstacle-on-edge"};
    }
    for (int v = 0; v < n; ++v)
      for (auto& p : o)
        if (cur[v].x == p.x && cur[v].y == p.y) return SampleViolation{j, "obstacle-on-vertex"};
    int m = static_cast<int>(g.edges.size());
    for (int e = 0; e < m; ++e)
      for (int f = e + 1; f < m; ++f) {
        auto [p, q] = g.edges[e];
        auto [r, s] = g.edges[f];
        if (p == r || p == s || q == r || q == s) continue;  // endpoint hits caught above
        I o1 = cross3(cur[p], cur[q], cur[r]);
        I o2 = cross3(cur[p], cur[q], cur[s]);
        if ((o1 > 0 && o2 > 0) || (o1 < 0 && o2 < 0)) continue;
        I o3 = cross3(cur[r], cur[s], cur[p]);
        I o4 = cross3(cur[r], cur[s], cur[q]);
        if ((o3 > 0 && o4 > 0) || (o3 < 0 && o4 < 0)) continue;
        // Collinear configurations reduce to on-segment contacts (already
        // checked); a sign split on both edges is a crossing.
        if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
          return SampleViolation{j, "edge-crossing"};
      }
  }
  return std::nullopt;
}

}  // namespace obmorph
