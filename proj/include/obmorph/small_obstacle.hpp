#pragma once

// Morphs in the presence of at most two point obstacles.
//
// The obstacles are adjoined to the graph as isolated vertices whose start
// and end positions coincide with the obstacle points.  A provider produces
// an obstacle-free morph of the augmented graph; pin_frame_transform then
// cancels the motion of the adjoined vertices exactly (translation for one,
// rational similarity for two), after which dropping them yields a morph of
// the original graph.  Because the adjoined vertices are exactly stationary
// in the corrected morph and the augmented verification kept everything
// clear of them, the restriction avoids the obstacles; a final verification
// against the real obstacle set is still enforced.

#include "obmorph/cycle_shift.hpp"
#include "obmorph/forest_morph.hpp"
#include "obmorph/pin_frame.hpp"

namespace obmorph {

namespace small_detail {

inline bool is_forest(const PlaneGraph& g) {
  std::vector<int> dsu(g.n);
  for (int i = 0; i < g.n; ++i) dsu[i] = i;
  auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  for (auto& [a, b] : g.edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    dsu[ra] = rb;
  }
  return true;
}

inline bool is_single_cycle(const PlaneGraph& g) {
  if (g.n < 3 || static_cast<int>(g.edges.size()) != g.n) return false;
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v)
    if (adj[v].size() != 2) return false;
  // Connectivity: trace from 0.
  int seen = 1, prev = 0, cur = adj[0][0];
  while (cur != 0) {
    ++seen;
    int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = nxt;
  }
  return seen == g.n;
}

}  // namespace small_detail

inline Morph small_obstacle_morph(const Instance& inst) {
  if (inst.obstacles.size() > 2)
    throw std::invalid_argument("small_obstacle_morph: more than two obstacles");
  CompatibilityReport comp = check_necessary_compatibility(inst);
  if (!comp.ok)
    throw std::invalid_argument("small_obstacle_morph: incompatible instance: " + comp.reason);

  const PlaneGraph& g = inst.graph;
  const int k = static_cast<int>(inst.obstacles.size());

  // Cycle provider: a free-vertex cycle shift traces arbitrarily close to
  // the fixed curve and handles the obstacle set directly, no pinning
  // needed.
  if (small_detail::is_single_cycle(g)) {
    if (inst.start == inst.end) {
      Morph m{{inst.start, inst.end}};
      if (!verify_morph(g, m, inst.obstacles).ok)
        throw std::runtime_error("small_obstacle_morph: identity morph rejected");
      return m;
    }
    auto off = is_shifted_version(g, inst.start, inst.end);
    if (!off)
      throw std::runtime_error(
          "small_obstacle_morph: unsupported-class (cycle drawings are not shifted versions)");
    if (free_vertices(g, inst.start).empty())
      throw std::runtime_error("small_obstacle_morph: unsupported-class (no free vertex)");
    return cycle_shift_morph(g, inst.start, *off, inst.obstacles);
  }

  if (!small_detail::is_forest(g))
    throw std::runtime_error(
        "small_obstacle_morph: unsupported-class (provider handles forests and free-vertex "
        "cycles only)");

  if (k == 0) return forest_morph(g, inst.start, inst.end, {});

  // Augment with one isolated vertex per obstacle.
  PlaneGraph ag = g;
  ag.n = g.n + k;
  ag.rotation.resize(ag.n);
  Drawing as = inst.start, ae = inst.end;
  std::vector<int> pinned;
  for (int i = 0; i < k; ++i) {
    as.push_back(inst.obstacles[i]);
    ae.push_back(inst.obstacles[i]);
    pinned.push_back(g.n + i);
  }
  ag.outer_face = outer_walk_index(ag, as);

  Morph base = forest_morph(ag, as, ae, {});
  Morph fixed = pin_frame_transform(ag, base, pinned);

  // Drop the adjoined vertices.
  Morph out;
  out.drawings.reserve(fixed.drawings.size());
  for (auto& d : fixed.drawings)
    out.drawings.emplace_back(d.begin(), d.begin() + g.n);

  MorphReport rep = verify_morph(g, out, inst.obstacles);
  if (!rep.ok)
    throw std::runtime_error("small_obstacle_morph: corrected morph failed verification");
  return out;
}

}  // namespace obmorph
