#pragma once

// Combinatorial plane graphs: rotation systems, face walks, Euler checks.

#include "obmorph/predicates.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace obmorph {

struct PlaneGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // undirected
  // rotation[v]: neighbors of v in counter-clockwise angular order.
  std::vector<std::vector<int>> rotation;
  int outer_face = -1;  // index into compute_faces(...).walks

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }
};

struct FaceSet {
  // Each walk is a closed sequence of vertices (first vertex not repeated at
  // the end).  Walks cover every directed edge exactly once.  An isolated
  // vertex v contributes the degenerate walk {v}.
  std::vector<std::vector<int>> walks;
  std::map<std::pair<int, int>, int> face_of_directed_edge;
  std::vector<int> component_of_walk;  // connected component id per walk
};

// Face traversal from the rotation system.  After traversing u -> v we
// continue to the neighbor that precedes u in rotation[v] (clockwise
// successor of the reversed edge); with CCW rotation lists this traces each
// bounded face as a counter-clockwise walk.
inline FaceSet compute_faces(const PlaneGraph& g) {
  FaceSet fs;
  std::map<std::pair<int, int>, int> idx_in_rot;
  for (int v = 0; v < g.n; ++v)
    for (int i = 0; i < static_cast<int>(g.rotation[v].size()); ++i)
      idx_in_rot[{v, g.rotation[v][i]}] = i;

  // Component labels (isolated vertices get their own component).
  std::vector<int> comp(g.n, -1);
  auto adj = g.adjacency();
  int ncomp = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] == -1) { comp[w] = ncomp; stack.push_back(w); }
    }
    ++ncomp;
  }

  std::set<std::pair<int, int>> seen;
  for (int v = 0; v < g.n; ++v) {
    if (g.rotation[v].empty()) {
      fs.walks.push_back({v});
      fs.component_of_walk.push_back(comp[v]);
      continue;
    }
    for (int w0 : g.rotation[v]) {
      if (seen.count({v, w0})) continue;
      std::vector<int> walk;
      int a = v, b = w0;
      int face_id = static_cast<int>(fs.walks.size());
      while (!seen.count({a, b})) {
        seen.insert({a, b});
        fs.face_of_directed_edge[{a, b}] = face_id;
        walk.push_back(a);
        const auto& rot = g.rotation[b];
        int i = idx_in_rot.at({b, a});
        int next = rot[(i + static_cast<int>(rot.size()) - 1) % rot.size()];
        a = b;
        b = next;
      }
      fs.walks.push_back(std::move(walk));
      fs.component_of_walk.push_back(comp[v]);
    }
  }
  return fs;
}

// Doubled signed area of a closed walk under a drawing.
inline Rational walk_doubled_area(const std::vector<int>& walk, const std::vector<Point2>& pos) {
  Rational a(0);
  int k = static_cast<int>(walk.size());
  for (int i = 0; i < k; ++i) a += cross(pos[walk[i]], pos[walk[(i + 1) % k]]);
  return a;
}

// Winding number of a closed walk around p (p must not lie on the walk).
inline int walk_winding(const std::vector<int>& walk, const std::vector<Point2>& pos,
                        const Point2& p) {
  int w = 0;
  int k = static_cast<int>(walk.size());
  for (int i = 0; i < k; ++i) {
    const Point2& a = pos[walk[i]];
    const Point2& b = pos[walk[(i + 1) % k]];
    if (a.y <= p.y && p.y < b.y && orientation(a, b, p) > 0) ++w;
    else if (b.y <= p.y && p.y < a.y && orientation(a, b, p) < 0) --w;
  }
  return w;
}

// Rotation system derived from coordinates: neighbors sorted CCW by angle.
// Ties (equal directions) keep input order; such drawings are invalid anyway.
inline std::vector<std::vector<int>> derive_rotation(int n,
                                                     const std::vector<std::pair<int, int>>& edges,
                                                     const std::vector<Point2>& pos) {
  std::vector<std::vector<int>> rot(n);
  for (auto& [u, v] : edges) {
    rot[u].push_back(v);
    rot[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    auto half = [&](const Point2& d) {
      // 0: angle in [0, pi) starting at positive x-axis; 1: [pi, 2pi).
      if (d.y > 0 || (d.y == 0 && d.x > 0)) return 0;
      return 1;
    };
    std::stable_sort(rot[v].begin(), rot[v].end(), [&](int a, int b) {
      Point2 da = pos[a] - pos[v], db = pos[b] - pos[v];
      int ha = half(da), hb = half(db);
      if (ha != hb) return ha < hb;
      return sign(cross(da, db)) > 0;
    });
  }
  return rot;
}

// Euler's relation per connected component, counting face walks.
inline bool euler_consistent(const PlaneGraph& g) {
  FaceSet fs = compute_faces(g);
  std::vector<int> comp(g.n, -1);
  auto adj = g.adjacency();
  int ncomp = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] == -1) { comp[w] = ncomp; stack.push_back(w); }
    }
    ++ncomp;
  }
  std::vector<long long> V(ncomp, 0), E(ncomp, 0), F(ncomp, 0);
  for (int v = 0; v < g.n; ++v) ++V[comp[v]];
  for (auto& [u, v] : g.edges) ++E[comp[u]];
  for (std::size_t i = 0; i < fs.walks.size(); ++i) ++F[fs.component_of_walk[i]];
  for (int c = 0; c < ncomp; ++c)
    if (V[c] - E[c] + F[c] != 2) return false;
  return true;
}

}  // namespace obmorph
