#pragma once

// Straight-line drawings of plane graphs, obstacle sets, instances, and the
// static validity / compatibility checks.

#include "obmorph/plane_graph.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace obmorph {

using Drawing = std::vector<Point2>;        // position per vertex id
using ObstacleSet = std::vector<Point2>;

struct Instance {
  PlaneGraph graph;
  Drawing start, end;
  ObstacleSet obstacles;
};

struct DrawingIssue {
  std::string kind;  // e.g. "coincident-vertices", "edge-crossing", ...
  int a = -1, b = -1, c = -1, d = -1;
  std::string describe() const {
    std::ostringstream os;
    os << kind << " [" << a << "," << b << "," << c << "," << d << "]";
    return os.str();
  }
};

// Full validity check of a single drawing.  Violations are returned as data;
// an empty result means "valid".
inline std::vector<DrawingIssue> validate_drawing(const PlaneGraph& g, const Drawing& pos) {
  std::vector<DrawingIssue> issues;
  if (static_cast<int>(pos.size()) != g.n) {
    issues.push_back({"size-mismatch", static_cast<int>(pos.size()), g.n});
    return issues;
  }
  // Structural: rotation lists must be permutations of the neighbor sets.
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v) {
    auto a = adj[v];
    auto r = g.rotation.size() == static_cast<std::size_t>(g.n) ? g.rotation[v]
                                                                : std::vector<int>{};
    auto as = a, rs = r;
    std::sort(as.begin(), as.end());
    std::sort(rs.begin(), rs.end());
    if (as != rs) issues.push_back({"rotation-not-neighbor-permutation", v});
  }
  if (!issues.empty()) return issues;

  for (auto& [u, v] : g.edges)
    if (u == v || u < 0 || v < 0 || u >= g.n || v >= g.n)
      issues.push_back({"bad-edge", u, v});
  if (!issues.empty()) return issues;

  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (pos[u] == pos[v]) issues.push_back({"coincident-vertices", u, v});

  int m = static_cast<int>(g.edges.size());
  for (int w = 0; w < g.n; ++w)
    for (int e = 0; e < m; ++e) {
      auto [u, v] = g.edges[e];
      if (w == u || w == v) continue;
      if (on_segment(pos[w], pos[u], pos[v]))
        issues.push_back({"vertex-on-edge", w, u, v});
    }

  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f) {
      auto [a, b] = g.edges[e];
      auto [c, d] = g.edges[f];
      bool adjacent = (a == c || a == d || b == c || b == d);
      SegmentRelation rel = segments_intersect(pos[a], pos[b], pos[c], pos[d]);
      if (adjacent) {
        // Sharing the common endpoint is fine; anything more was already
        // reported as vertex-on-edge (collinear overlap) above, but a proper
        // crossing cannot be expressed that way, so keep the check.
        if (rel == SegmentRelation::ProperCrossing)
          issues.push_back({"edge-crossing", a, b, c, d});
      } else if (rel != SegmentRelation::Disjoint) {
        issues.push_back({"edge-crossing", a, b, c, d});
      }
    }

  // Angular order around every vertex must match the rotation system
  // (cyclically).  Only meaningful when the incident edges are pairwise
  // non-overlapping, which the checks above guarantee for valid inputs.
  auto derived = derive_rotation(g.n, g.edges, pos);
  for (int v = 0; v < g.n; ++v) {
    const auto& want = g.rotation[v];
    const auto& got = derived[v];
    if (want.size() != got.size() || want.size() < 3) continue;  // deg<3: unique cyclic order
    int k = static_cast<int>(want.size());
    bool match = false;
    for (int s = 0; s < k && !match; ++s) {
      bool ok = true;
      for (int i = 0; i < k; ++i)
        if (got[(s + i) % k] != want[i]) { ok = false; break; }
      match = ok;
    }
    if (!match) issues.push_back({"rotation-order-mismatch", v});
  }

  if (!euler_consistent(g)) issues.push_back({"euler-violation"});

  // Outer face: the designated walk must not bound a positive-area region,
  // and no component may sit strictly outside it in a way that contradicts
  // unboundedness.  Positive walks are bounded faces.
  FaceSet fs = compute_faces(g);
  if (g.outer_face < 0 || g.outer_face >= static_cast<int>(fs.walks.size())) {
    issues.push_back({"outer-face-out-of-range", g.outer_face});
    return issues;
  }
  if (walk_doubled_area(fs.walks[g.outer_face], pos) > 0)
    issues.push_back({"outer-face-not-unbounded", g.outer_face});
  // The outer walk's component must not be nested inside a bounded face of a
  // different component.
  {
    int oc = fs.component_of_walk[g.outer_face];
    Point2 probe = pos[fs.walks[g.outer_face].front()];
    for (std::size_t i = 0; i < fs.walks.size(); ++i) {
      if (fs.component_of_walk[i] == oc) continue;
      if (walk_doubled_area(fs.walks[i], pos) <= 0) continue;
      bool on = false;
      for (int v : fs.walks[i])
        if (pos[v] == probe) on = true;
      if (!on && walk_winding(fs.walks[i], pos, probe) != 0)
        issues.push_back({"outer-face-nested", g.outer_face, static_cast<int>(i)});
    }
  }
  return issues;
}

inline bool drawing_valid(const PlaneGraph& g, const Drawing& pos) {
  return validate_drawing(g, pos).empty();
}

// Index of the unbounded face walk under this drawing: the one with the most
// negative doubled area (generators use this to fill PlaneGraph::outer_face).
inline int outer_walk_index(const PlaneGraph& g, const Drawing& pos) {
  FaceSet fs = compute_faces(g);
  int best = -1;
  Rational best_area;
  for (std::size_t i = 0; i < fs.walks.size(); ++i) {
    Rational a = walk_doubled_area(fs.walks[i], pos);
    if (best == -1 || a < best_area) {
      best = static_cast<int>(i);
      best_area = a;
    }
  }
  return best;
}

// Face identifiers for point location: a walk index, kOuterFace for the
// unbounded region, kOnDrawing when the query point touches the drawing.
constexpr int kOuterFace = -1;
constexpr int kOnDrawing = -2;

// Locate p in the subdivision induced by the drawing: the innermost
// bounded (positive-area) face walk containing p, or the outer face.
inline int locate_point(const PlaneGraph& g, const Drawing& pos, const Point2& p) {
  for (int v = 0; v < g.n; ++v)
    if (pos[v] == p) return kOnDrawing;
  for (auto& [u, v] : g.edges)
    if (on_segment(p, pos[u], pos[v])) return kOnDrawing;
  FaceSet fs = compute_faces(g);
  int best = kOuterFace;
  Rational best_area;
  for (std::size_t i = 0; i < fs.walks.size(); ++i) {
    Rational area = walk_doubled_area(fs.walks[i], pos);
    if (area <= 0) continue;
    if (walk_winding(fs.walks[i], pos, p) == 0) continue;
    if (best == kOuterFace || area < best_area) {
      best = static_cast<int>(i);
      best_area = area;
    }
  }
  return best;
}

struct CompatibilityReport {
  bool ok = false;
  std::string reason;                  // empty when ok
  std::vector<int> face_in_start, face_in_end;  // per obstacle
};

// Necessary conditions for a morph between start and end to exist: both
// drawings valid for the same plane graph and every obstacle in the same
// face of both.
inline CompatibilityReport check_necessary_compatibility(const Instance& inst) {
  CompatibilityReport rep;
  if (!drawing_valid(inst.graph, inst.start)) { rep.reason = "invalid-start-drawing"; return rep; }
  if (!drawing_valid(inst.graph, inst.end)) { rep.reason = "invalid-end-drawing"; return rep; }
  for (std::size_t i = 0; i < inst.obstacles.size(); ++i) {
    int fs = locate_point(inst.graph, inst.start, inst.obstacles[i]);
    int fe = locate_point(inst.graph, inst.end, inst.obstacles[i]);
    rep.face_in_start.push_back(fs);
    rep.face_in_end.push_back(fe);
    if (fs == kOnDrawing || fe == kOnDrawing) {
      rep.reason = "obstacle-on-drawing";
      return rep;
    }
    if (fs != fe) {
      rep.reason = "obstacle-face-mismatch";
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

// Free vertices: degree two with collinear incident edges.
inline std::vector<int> free_vertices(const PlaneGraph& g, const Drawing& pos) {
  std::vector<int> out;
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v) {
    if (adj[v].size() != 2) continue;
    if (orientation(pos[adj[v][0]], pos[v], pos[adj[v][1]]) == 0) out.push_back(v);
  }
  return out;
}

// If the graph is a single cycle and pos2 equals pos1 with labels advanced
// by a non-zero cyclic offset, return the smallest such offset (in the
// direction of the traversal order); identical drawings report nullopt.
inline std::optional<int> is_shifted_version(const PlaneGraph& g, const Drawing& pos1,
                                             const Drawing& pos2) {
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v)
    if (adj[v].size() != 2) return std::nullopt;
  // Trace the cycle from vertex 0.
  std::vector<int> order{0};
  int prev = 0, cur = adj[0][0];
  while (cur != 0) {
    order.push_back(cur);
    int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = nxt;
  }
  if (static_cast<int>(order.size()) != g.n) return std::nullopt;  // disconnected
  int n = g.n;
  for (int off = 1; off < n; ++off) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (pos2[order[i]] != pos1[order[(i + off) % n]]) ok = false;
    if (ok) return off;
  }
  return std::nullopt;
}

}  // namespace obmorph
