#pragma once

// Morphing between two drawings of a plane forest while avoiding point
// obstacles.
//
// Pipeline (each phase emits exactly-verified linear steps):
//   1. Contract every tree of the start drawing into a tiny disk around its
//      root, absorbing subtrees bottom-up along their own edges.  Corridor
//      and disk radii come from exact clearance computations against the
//      current scene, so the contraction avoids all obstacles by
//      construction.
//   2. Fly each contracted tree (a rigid tiny disk) to a private parking
//      slot below the scene, travelling along a rectangular ring far outside
//      the bounding box of everything.
//   3. At its slot, realign the tree's internal micro-layout from the
//      start-contraction form to the end-contraction form: children cluster
//      offsets are rotated around their parent through rational compass
//      directions at exponentially separated band radii, preserving the
//      rotation order, then snapped to their exact target offsets.
//   4. Fly each tree to the position its root occupies in the contracted
//      end scene.
//   5. Expand by replaying the end drawing's contraction in reverse.
//
// Every parameter derives from one shrink knob; the planner verifies the
// complete morph and retries with a smaller knob if anything fails.

#include "obmorph/morph_util.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace obmorph {

namespace forest_detail {

struct ForestInfo {
  std::vector<int> parent;  // -1 for roots
  std::vector<int> depth;
  std::vector<int> tree_of;
  std::vector<std::vector<int>> children;
  std::vector<int> roots;                    // one per tree
  std::vector<std::vector<int>> tree_verts;  // per tree
};

inline ForestInfo analyze_forest(const PlaneGraph& g) {
  ForestInfo f;
  f.parent.assign(g.n, -2);
  f.depth.assign(g.n, 0);
  f.tree_of.assign(g.n, -1);
  f.children.assign(g.n, {});
  auto adj = g.adjacency();
  for (int s = 0; s < g.n; ++s) {
    if (f.tree_of[s] != -1) continue;
    int tid = static_cast<int>(f.roots.size());
    f.roots.push_back(s);
    f.tree_verts.push_back({});
    std::vector<int> stack{s};
    f.parent[s] = -1;
    f.tree_of[s] = tid;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      f.tree_verts[tid].push_back(v);
      for (int w : adj[v]) {
        if (w == f.parent[v]) continue;
        if (f.tree_of[w] != -1)
          throw std::invalid_argument("forest_morph: graph contains a cycle");
        f.tree_of[w] = tid;
        f.parent[w] = v;
        f.depth[w] = f.depth[v] + 1;
        f.children[v].push_back(w);
        stack.push_back(w);
      }
    }
  }
  return f;
}

inline std::vector<int> subtree_vertices(const ForestInfo& f, int v) {
  std::vector<int> out, stack{v};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (int c : f.children[x]) stack.push_back(c);
  }
  return out;
}

// --------------------------------------------------------------------------
// Phase 1/5: scene contraction.

struct ContractionResult {
  Morph morph;                      // start drawing -> fully contracted scene
  std::vector<Rational> tree_rho;   // per-tree cluster radius upper bound
};

inline ContractionResult contract_scene(const PlaneGraph& g, const ForestInfo& f,
                                        const Drawing& start, const ObstacleSet& P,
                                        const Rational& sigma) {
  MorphBuilder mb(start);
  std::vector<Rational> rho(g.n, Rational(0));  // cluster radius around each vertex
  const Rational delta = sigma / 8;             // landing fraction along an edge

  // Non-root vertices, deepest first (so a vertex's subtree is absorbed
  // before the vertex itself is moved onto its parent).
  std::vector<int> order;
  for (int v = 0; v < g.n; ++v)
    if (f.parent[v] >= 0) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (f.depth[a] != f.depth[b]) return f.depth[a] > f.depth[b];
    return a < b;
  });

  for (int v : order) {
    const int u = f.parent[v];
    const Drawing cur = mb.current();
    std::vector<char> in_sub(g.n, 0);
    for (int w : subtree_vertices(f, v)) in_sub[w] = 1;

    const Point2 landing = lerp(cur[u], cur[v], delta);
    // Exact clearance of the corridor segment [v, landing] against every
    // static element of the scene.
    Rational c2(-1);
    auto fold = [&c2](const Rational& d2) {
      if (c2 < 0 || d2 < c2) c2 = d2;
    };
    for (auto& p : P) fold(dist2_point_segment(p, cur[v], landing));
    for (int w = 0; w < g.n; ++w)
      if (!in_sub[w] && w != u) fold(dist2_point_segment(cur[w], cur[v], landing));
    for (auto& [a, b] : g.edges) {
      if (in_sub[a] || in_sub[b]) continue;  // cluster-internal or the (v,u) edge
      fold(dist2_segment_segment(cur[a], cur[b], cur[v], landing));
    }
    if (c2 == 0) throw std::runtime_error("forest_morph: degenerate corridor clearance");
    Rational r_target = c2 < 0 ? Rational(1) : rational_below_sqrt(c2) / 2;
    r_target = std::min(r_target, rational_below_sqrt(dist2(cur[v], cur[u])) / 4);
    r_target = r_target * sigma;  // global shrink knob

    if (rho[v] > r_target && rho[v] > 0) {
      // Shrink v's cluster about v before travelling.
      Rational s = r_target / rho[v];
      Drawing d = cur;
      for (int w = 0; w < g.n; ++w)
        if (in_sub[w] && w != v) d[w] = cur[v] + s * (cur[w] - cur[v]);
      mb.push(std::move(d));
      rho[v] = r_target;
    }
    // Translate the cluster so v lands just short of u on their edge.
    {
      Drawing d = mb.current();
      Point2 shift = landing - d[v];
      for (int w = 0; w < g.n; ++w)
        if (in_sub[w]) d[w] = d[w] + shift;
      mb.push(std::move(d));
    }
    rho[u] = std::max(rho[u], rational_above_sqrt(dist2(landing, cur[u])) + rho[v]);
  }

  ContractionResult res;
  res.tree_rho.reserve(f.roots.size());
  for (int r : f.roots) res.tree_rho.push_back(std::max(rho[r], Rational(1, 1024)));
  res.morph = std::move(mb).finish();
  return res;
}

// --------------------------------------------------------------------------
// Phases 2/4: rigid flights along an outer ring.

struct SceneFrame {
  Rational xmin, xmax, ymin, ymax;  // bounding box of both drawings + obstacles
  Rational M;                       // margin unit
  // Inner offset ymin - M carries the parking row; the travel ring is the
  // boundary of the box inflated by 2M.
  Rational rxmin() const { return xmin - 2 * M; }
  Rational rxmax() const { return xmax + 2 * M; }
  Rational rymin() const { return ymin - 2 * M; }
  Rational rymax() const { return ymax + 2 * M; }
  Point2 slot(int i) const { return {xmin + Rational(i) * M, ymin - M}; }
};

struct DiskBlocker {
  Point2 c;
  Rational r;
};

inline bool leg_clear(const Point2& a, const Point2& b, const Rational& rho,
                      const std::vector<DiskBlocker>& blockers) {
  for (auto& bl : blockers) {
    Rational need = rho + bl.r;
    if (dist2_point_segment(bl.c, a, b) <= need * need) return false;
  }
  return true;
}

// Exit point of the ray c + t*d on the ring rectangle (t > 0 minimal).
inline std::optional<Point2> ray_ring_exit(const SceneFrame& sf, const Point2& c,
                                           const Point2& d) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& t) {
    if (t <= 0) return;
    if (!best || t < *best) best = t;
  };
  if (d.x != 0) {
    consider((sf.rxmin() - c.x) / d.x);
    consider((sf.rxmax() - c.x) / d.x);
  }
  if (d.y != 0) {
    consider((sf.rymin() - c.y) / d.y);
    consider((sf.rymax() - c.y) / d.y);
  }
  if (!best) return std::nullopt;
  // Clamp onto the rectangle (numeric exactness: recompute both coords).
  Point2 p{c.x + *best * d.x, c.y + *best * d.y};
  if (p.x < sf.rxmin()) p.x = sf.rxmin();
  if (p.x > sf.rxmax()) p.x = sf.rxmax();
  if (p.y < sf.rymin()) p.y = sf.rymin();
  if (p.y > sf.rymax()) p.y = sf.rymax();
  return p;
}

// Ring coordinate: walk position along the rectangle boundary, CCW from the
// bottom-left corner.
inline int ring_side(const SceneFrame& sf, const Point2& p) {
  if (p.y == sf.rymin()) return 0;  // bottom
  if (p.x == sf.rxmax()) return 1;  // right
  if (p.y == sf.rymax()) return 2;  // top
  return 3;                          // left
}

inline std::vector<Point2> ring_walk(const SceneFrame& sf, const Point2& from,
                                     const Point2& to) {
  const Point2 corner[4] = {{sf.rxmax(), sf.rymin()},   // end of bottom (CCW)
                            {sf.rxmax(), sf.rymax()},
                            {sf.rxmin(), sf.rymax()},
                            {sf.rxmin(), sf.rymin()}};
  std::vector<Point2> out;
  int s = ring_side(sf, from), t = ring_side(sf, to);
  if (s == t) {
    out.push_back(to);
    return out;  // a single leg along one side (may be "backwards"; fine)
  }
  for (int i = 0; i < 4 && s != t; ++i) {
    out.push_back(corner[s]);
    s = (s + 1) % 4;
  }
  out.push_back(to);
  return out;
}

// Plan a flight path (list of waypoints, excluding the start) for a disk of
// radius rho from `from` to `to`, both either inside the box or on the
// parking row.  Returns nullopt when no escape direction clears.
inline std::optional<std::vector<Point2>> plan_flight(const SceneFrame& sf, const Point2& from,
                                                      const Point2& to, const Rational& rho,
                                                      const std::vector<DiskBlocker>& blockers) {
  auto escape = [&](const Point2& c) -> std::optional<Point2> {
    for (const Point2& d : compass_directions()) {
      auto e = ray_ring_exit(sf, c, d);
      if (!e) continue;
      if (leg_clear(c, *e, rho, blockers)) return e;
    }
    return std::nullopt;
  };
  auto e1 = escape(from);
  auto e2 = escape(to);
  if (!e1 || !e2) return std::nullopt;
  std::vector<Point2> path;
  path.push_back(*e1);
  for (auto& w : ring_walk(sf, *e1, *e2)) path.push_back(w);
  path.push_back(to);
  // The ring legs are far from everything by construction; check the two
  // delicate legs (escape and approach) were already checked, and verify the
  // ring legs cheaply too.
  Point2 prev = from;
  for (auto& w : path) {
    if (!leg_clear(prev, w, rho, blockers)) return std::nullopt;
    prev = w;
  }
  return path;
}

// --------------------------------------------------------------------------
// Phase 3: micro-layout realignment at a parking slot.

// Is direction t inside the closed CCW sector from a to b?
inline bool ccw_between(const Point2& a, const Point2& t, const Point2& b) {
  Rational ab = cross(a, b);
  if (ab > 0) return sign(cross(a, t)) >= 0 && sign(cross(t, b)) >= 0;
  if (ab < 0 || (ab == 0 && dot(a, b) < 0))
    return sign(cross(a, t)) >= 0 || sign(cross(t, b)) >= 0;
  // a and b parallel, same direction: the sector is a single ray.
  return cross(a, t) == 0 && dot(a, t) > 0;
}

// Next compass direction strictly after d, counter-clockwise (ccw=true) or
// clockwise.
inline Point2 next_compass(const Point2& d, bool ccw) {
  const auto& dirs = compass_directions();
  if (ccw) {
    for (const auto& c : dirs)
      if (angle_less(d, c)) return c;
    return dirs.front();
  }
  for (auto it = dirs.rbegin(); it != dirs.rend(); ++it)
    if (angle_less(*it, d)) return *it;
  return dirs.back();
}

struct AlignChild {
  int vertex = -1;
  Point2 dir_cur, dir_tgt;   // offsets from the parent (current / target)
  Point2 target_abs;         // exact final position of the child vertex
  Rational band;             // rotation band radius
  int winding = 0;           // remaining crossings of the cut ray (signed)
  int nudges = 0;            // subcluster perturbations spent on this child
  bool ccw = true;
  bool done = false;
};

class Realigner {
 public:
  Realigner(const PlaneGraph& g, const ForestInfo& f, const ObstacleSet& P, MorphBuilder& mb)
      : g_(g), f_(f), P_(P), mb_(mb) {}

  // Realign the tree rooted at `root` (root already at its exact target) so
  // that every vertex reaches target[] exactly.
  void run(int root, const std::vector<Point2>& target, const Rational& avail) {
    align_children(root, target, avail);
  }

 private:
  const PlaneGraph& g_;
  const ForestInfo& f_;
  const ObstacleSet& P_;
  MorphBuilder& mb_;

  bool try_step(const Drawing& next) {
    StepReport rep = verify_linear_step(g_, mb_.current(), next, P_);
    if (!rep.ok) return false;
    mb_.push(next);
    return true;
  }

  Drawing translated_cluster(int c, const Point2& to) const {
    Drawing d = mb_.current();
    Point2 shift = to - d[c];
    for (int w : subtree_vertices(f_, c)) d[w] = d[w] + shift;
    return d;
  }

  void shrink_cluster(int c, const Rational& max_rho) {
    // Shrink c's subtree about c until it fits in max_rho; exact bookkeeping
    // is not needed, a generous fixed factor per round works.
    for (int round = 0; round < 60; ++round) {
      const Drawing& cur = mb_.current();
      Rational worst(0);
      for (int w : subtree_vertices(f_, c))
        if (w != c) worst = std::max(worst, dist2(cur[w], cur[c]));
      if (worst <= max_rho * max_rho) return;
      Drawing d = cur;
      for (int w : subtree_vertices(f_, c))
        if (w != c) d[w] = cur[c] + Rational(1, 2) * (d[w] - cur[c]);
      if (!try_step(d)) throw std::runtime_error("forest_morph: cluster shrink rejected");
    }
    throw std::runtime_error("forest_morph: cluster shrink did not converge");
  }

  void align_children(int u, const std::vector<Point2>& target, const Rational& avail) {
    const auto& kids = f_.children[u];
    if (!kids.empty()) {
      const Point2 pu = mb_.current()[u];  // == target[u] by invariant

      std::vector<AlignChild> st(kids.size());
      for (std::size_t i = 0; i < kids.size(); ++i) {
        st[i].vertex = kids[i];
        st[i].dir_cur = mb_.current()[kids[i]] - pu;
        st[i].target_abs = target[kids[i]];
        st[i].dir_tgt = st[i].target_abs - pu;
        st[i].band = avail / (Integer(1) << (i + 1));
      }
      plan_windings(u, st);

      // Phase A: shrink and pull every child cluster to its band radius
      // along its current direction.
      for (auto& c : st) {
        shrink_cluster(c.vertex, c.band / 8);
        Rational n_up = rational_above_sqrt(dot(c.dir_cur, c.dir_cur));
        Point2 p = pu + (c.band / n_up) * c.dir_cur;
        if (!try_step(translated_cluster(c.vertex, p)))
          throw std::runtime_error("forest_morph: band pull rejected");
      }

      // Phase B: round-robin compass rotation to the target rays, then snap
      // to the exact target offsets.  A full turn is at most ~200 compass
      // sectors; the cap below is far beyond any legitimate route.
      int idle_rounds = 0;
      for (int round = 0;; ++round) {
        if (round > 2000)
          throw std::runtime_error("forest_morph: angular realignment did not converge");
        bool all_done = true, progress = false;
        for (auto& c : st) {
          if (c.done) continue;
          all_done = false;
          if (advance_child(u, c, pu)) progress = true;
        }
        if (all_done) break;
        if (!progress && ++idle_rounds > 2)
          throw std::runtime_error("forest_morph: angular realignment deadlocked");
        if (progress) idle_rounds = 0;
      }
    }
    for (int c : kids) align_children(c, target, avail / 4);
  }

  // Rotate one immediate subcluster of c by a single compass chord at its
  // current radius: a local perturbation used to break exact collinearity
  // that blocks c's own move.  Any valid position will do; the recursion
  // places the subcluster exactly later on.
  bool nudge_subclusters(int cv) {
    const Point2 pc = mb_.current()[cv];
    for (int gc : f_.children[cv]) {
      Point2 off = mb_.current()[gc] - pc;
      Rational radius = rational_above_sqrt(dot(off, off));
      for (bool ccw : {true, false}) {
        Point2 d = next_compass(off, ccw);
        Point2 p = pc + (radius / rational_above_sqrt(dot(d, d))) * d;
        if (try_step(translated_cluster(gc, p))) return true;
      }
    }
    return false;
  }

  // One attempted move for a child; true if a step was emitted.
  bool advance_child(int u, AlignChild& c, const Point2& pu) {
    const Point2 cur_off = mb_.current()[c.vertex] - pu;
    auto on_ray = [&](const Point2& ray) {
      return cross(cur_off, ray) == 0 && dot(cur_off, ray) > 0;
    };
    // On the target ray with no windings left: snap to the exact target.
    if (c.winding == 0 && on_ray(c.dir_tgt)) {
      if (try_step(translated_cluster(c.vertex, c.target_abs))) {
        c.done = true;
        return true;
      }
      return ++c.nudges <= 200 && nudge_subclusters(c.vertex);
    }
    auto strictly_ahead = [&](const Point2& ray, const Point2& upto) {
      if (on_ray(ray)) return false;
      return c.ccw ? ccw_between(cur_off, ray, upto) : ccw_between(upto, ray, cur_off);
    };
    auto land = [&](const Point2& dir) {
      Rational n_up = rational_above_sqrt(dot(dir, dir));
      return try_step(translated_cluster(c.vertex, pu + (c.band / n_up) * dir));
    };
    // Candidate landing directions, nearest first.  Landing exactly on a
    // compass direction can create exact collinearity with a contracted
    // subcluster offset (those are small-integer directions too), so the
    // candidate list interleaves sums of adjacent compass vectors, which
    // skip strictly past such hazards.
    Point2 c1 = next_compass(cur_off, c.ccw);
    Point2 c2 = next_compass(c1, c.ccw);
    Point2 c3 = next_compass(c2, c.ccw);
    const Point2 cands[5] = {c1, c1 + c2, c2, c2 + c3, c3};
    for (const Point2& cand : cands) {
      if (c.winding == 0 && strictly_ahead(c.dir_tgt, cand)) {
        // The target ray is the only admissible landing in this sector;
        // overshooting it would break the order-preserving lift.
        if (land(c.dir_tgt)) return true;
        return ++c.nudges <= 200 && nudge_subclusters(c.vertex);
      }
      bool crosses = c.winding != 0 && strictly_ahead(cut_, cand);
      if (land(cand)) {
        if (crosses) c.winding += c.ccw ? -1 : 1;
        return true;
      }
    }
    return ++c.nudges <= 200 && nudge_subclusters(c.vertex);
  }

  Point2 cut_{Rational(1), Rational(0)};

  // Choose, per child, the rotation sense and number of cut-ray crossings so
  // the motion is rotation-order preserving.
  void plan_windings(int u, std::vector<AlignChild>& st) {
    // Cut ray: the parent direction when u has one (it is already exact and
    // static); otherwise a compass direction that no current or target
    // offset is parallel to.
    if (f_.parent[u] >= 0) {
      cut_ = mb_.current()[f_.parent[u]] - mb_.current()[u];
    } else {
      for (const Point2& d : compass_directions()) {
        bool clash = false;
        for (auto& c : st)
          if (cross(d, c.dir_cur) == 0 || cross(d, c.dir_tgt) == 0) clash = true;
        if (!clash) { cut_ = d; break; }
      }
    }
    // Rank children by current and target angle measured CCW from the cut.
    auto rank_order = [&](bool use_target) {
      std::vector<int> idx(st.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Point2& da = use_target ? st[a].dir_tgt : st[a].dir_cur;
        const Point2& db = use_target ? st[b].dir_tgt : st[b].dir_cur;
        // a before b iff db does NOT lie in the CCW sector (cut, da).
        if (cross(da, db) == 0 && dot(da, db) > 0) return a < b;
        return ccw_between(cut_, da, db);
      });
      return idx;
    };
    std::vector<int> cur_o = rank_order(false), tgt_o = rank_order(true);
    const int k = static_cast<int>(st.size());
    // Find the cyclic shift s with tgt_o[(i + s) % k] == cur_o[i].
    int shift = 0;
    for (int s = 0; s < k; ++s) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) ok = (tgt_o[(i + s) % k] == cur_o[i]);
      if (ok) { shift = s; break; }
      if (s == k - 1)
        throw std::runtime_error("forest_morph: rotation orders are inconsistent");
    }
    // A child's cluster may not cross the edge towards u's parent, so the
    // cut equals the parent direction there and the shift must vanish.
    if (f_.parent[u] >= 0 && shift != 0)
      throw std::runtime_error("forest_morph: rotation orders are inconsistent");
    // Child at current rank i moves to target rank (i + shift) mod k; its
    // required net CCW crossing count of the cut is floor((i + shift) / k).
    for (int i = 0; i < k; ++i) {
      AlignChild& c = st[cur_o[i]];
      const int w = (i + shift) / k;  // 0 or 1
      // Does the sub-2pi CCW route from dir_cur to dir_tgt cross the cut?
      bool ccw_crosses = ccw_between(c.dir_cur, cut_, c.dir_tgt) &&
                         !(cross(c.dir_cur, cut_) == 0 && dot(c.dir_cur, cut_) > 0);
      if (w == 1) {
        c.ccw = true;   // must pass the cut counter-clockwise exactly once
        c.winding = 1;
      } else if (!ccw_crosses) {
        c.ccw = true;   // plain CCW route stays clear of the cut
        c.winding = 0;
      } else {
        c.ccw = false;  // go clockwise instead, avoiding the cut
        c.winding = 0;
      }
    }
  }
};

}  // namespace forest_detail

// --------------------------------------------------------------------------

inline Morph forest_morph(const PlaneGraph& g, const Drawing& start, const Drawing& end,
                          const ObstacleSet& P);

namespace forest_detail {

inline Morph forest_morph_attempt(const PlaneGraph& g, const ForestInfo& F, const Drawing& start,
                                  const Drawing& end, const ObstacleSet& P,
                                  const Rational& sigma) {
  ContractionResult C1 = contract_scene(g, F, start, P, sigma);
  ContractionResult C2 = contract_scene(g, F, end, P, sigma);
  const Drawing& mid1 = C1.morph.drawings.back();
  const Drawing& mid2 = C2.morph.drawings.back();
  const int T = static_cast<int>(F.roots.size());

  // Scene frame over everything.
  BBox box;
  box.add(start);
  box.add(end);
  for (auto& p : P) box.add(p);
  Rational maxrho(1, 1024);
  for (auto& r : C1.tree_rho) maxrho = std::max(maxrho, r);
  for (auto& r : C2.tree_rho) maxrho = std::max(maxrho, r);
  SceneFrame sf;
  sf.xmin = box.xmin;
  sf.xmax = box.xmax;
  sf.ymin = box.ymin;
  sf.ymax = box.ymax;
  sf.M = Rational(1) + (box.xmax - box.xmin + box.ymax - box.ymin) / 8 + 16 * maxrho;

  MorphBuilder mb(start);
  append_morph(mb, C1.morph);

  // During every flight each stationary tree is contracted (start form, end
  // form, or parked), so its extent is bounded by the larger contraction
  // radius; these shrink with sigma on retries.
  std::vector<Rational> extent(T);
  for (int t = 0; t < T; ++t) extent[t] = std::max(C1.tree_rho[t], C2.tree_rho[t]);

  auto blockers_except = [&](int tree) {
    std::vector<DiskBlocker> bl;
    for (auto& p : P) bl.push_back({p, Rational(0)});
    const Drawing& cur = mb.current();
    for (int t = 0; t < T; ++t)
      if (t != tree) bl.push_back({cur[F.roots[t]], extent[t]});
    return bl;
  };
  auto fly = [&](int tree, const Point2& to) {
    if (mb.current()[F.roots[tree]] == to) return;
    auto path = plan_flight(sf, mb.current()[F.roots[tree]], to, extent[tree],
                            blockers_except(tree));
    if (!path) throw std::runtime_error("forest_morph: no flight path");
    for (auto& w : *path) {
      Drawing d = mb.current();
      Point2 shift = w - d[F.roots[tree]];
      for (int v : F.tree_verts[tree]) d[v] = d[v] + shift;
      mb.push(std::move(d));
    }
  };

  // Phase 2: park every tree.
  for (int t = 0; t < T; ++t) fly(t, sf.slot(t));

  // Phase 3: realign each tree's micro layout to the end-contraction form.
  for (int t = 0; t < T; ++t) {
    std::vector<Point2> target(g.n);
    Point2 off = sf.slot(t) - mid2[F.roots[t]];
    for (int v : F.tree_verts[t]) target[v] = mid2[v] + off;
    Realigner ra(g, F, P, mb);
    ra.run(F.roots[t], target, sf.M / 8);
  }

  // Phase 4: deliver to the end-contraction root positions.
  for (int t = 0; t < T; ++t) fly(t, mid2[F.roots[t]]);

  // Phase 5: expand by replaying the end contraction backwards.
  if (mb.current() != mid2)
    throw std::logic_error("forest_morph: delivery did not reach the contracted end scene");
  append_morph(mb, reversed_morph(C2.morph));

  Morph m = std::move(mb).finish();
  if (m.drawings.size() < 2) m.drawings.push_back(m.drawings.front());
  return m;
}

}  // namespace forest_detail

inline Morph forest_morph(const PlaneGraph& g, const Drawing& start, const Drawing& end,
                          const ObstacleSet& P) {
  if (static_cast<int>(g.edges.size()) >= g.n &&
      g.n > 0)  // quick reject; analyze_forest throws precisely
    throw std::invalid_argument("forest_morph: not a forest");
  if (!drawing_valid(g, start) || !drawing_valid(g, end))
    throw std::invalid_argument("forest_morph: invalid endpoint drawing");
  Violation ov;
  if (!obstacle_clear_of_drawing(g, start, P, &ov) || !obstacle_clear_of_drawing(g, end, P, &ov))
    throw std::invalid_argument("forest_morph: obstacle on a drawing");
  if (start == end) return Morph{{start, end}};

  forest_detail::ForestInfo F = forest_detail::analyze_forest(g);
  for (int halvings = 0; halvings < 10; ++halvings) {
    Rational sigma = Rational(1, 2) / (Integer(1) << halvings);
    try {
      Morph m = forest_detail::forest_morph_attempt(g, F, start, end, P, sigma);
      if (verify_morph(g, m, P).ok) return m;
    } catch (const std::runtime_error&) {
      // retry with a smaller knob
    }
  }
  throw std::runtime_error("forest_morph: planning failed at every shrink level");
}

}  // namespace obmorph
