#pragma once

// Brute-force breadth-first search over grid-discretized configurations of a
// small movable vertex subset.  Transitions are single-vertex moves whose
// linear step is crossing-free and obstacle-avoiding; the acceptance test is
// a closed-form exact predicate equivalent to verify_linear_step for
// single-vertex moves between valid drawings (cross-checked in the test
// suite), and every found morph is re-verified with the general verifier.
//
// A not-found outcome is an exhaustion certificate at the given resolution
// only; it never proves that no continuous morph exists.

#include "obmorph/verifier.hpp"

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace obmorph {

struct GridConfig {
  Point2 origin;                // lower-left lattice point
  Rational pitch;               // lattice spacing, > 0
  int width = 0, height = 0;    // lattice points per axis
  std::vector<int> movable;     // vertices allowed to move (others pinned)
  bool any_point = false;       // false: 8-neighborhood moves; true: any cell
};

struct SearchResult {
  bool found = false;
  std::optional<Morph> morph;   // present iff found; passes verify_morph
  unsigned long long states_explored = 0;  // distinct valid states discovered
  std::size_t frontier_peak = 0;
  Rational pitch;               // echo of the probed resolution
};

struct StateKey {
  std::uint64_t hi = 0, lo = 0;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ULL;
    h ^= (k.hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    return static_cast<std::size_t>(h);
  }
};

// Injective encoding of a movable-vertex cell tuple, radix-packed into 128
// bits; the caller guarantees (width*height)^cells fits.
inline StateKey canonical_state_key(const std::vector<std::pair<int, int>>& cells, int width,
                                    int height) {
  const unsigned __int128 base =
      static_cast<unsigned __int128>(width) * static_cast<unsigned __int128>(height);
  unsigned __int128 acc = 0;
  for (auto it = cells.rbegin(); it != cells.rend(); ++it)
    acc = acc * base + (static_cast<unsigned __int128>(it->first) * height + it->second);
  return StateKey{static_cast<std::uint64_t>(acc >> 64), static_cast<std::uint64_t>(acc)};
}

namespace search_detail {

inline bool in_closed_triangle(const Point2& p, const Point2& a, const Point2& b,
                               const Point2& c) {
  if (orientation(a, b, c) == 0)  // degenerate sweep: the hull is a segment
    return on_segment(p, a, b) || on_segment(p, a, c) || on_segment(p, b, c);
  int s1 = orientation(a, b, p), s2 = orientation(b, c, p), s3 = orientation(c, a, p);
  return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

// Does a segment touch the sweep triangle anywhere except the pivot point u?
// (Used for static edges sharing the pivot vertex of a moving edge.)
inline bool seg_hits_sweep_beyond_pivot(const Point2& x, const Point2& y, const Point2& u,
                                        const Point2& a, const Point2& b) {
  const Point2& far = (x == u) ? y : x;
  if (far != u && in_closed_triangle(far, u, a, b)) return true;
  return segments_intersect(x, y, a, b) != SegmentRelation::Disjoint;
}

// Exact acceptance test for moving vertex v of the valid drawing d to `to`,
// assuming the end drawing (d with d[v] = to) is also valid and clear of
// obstacles.  Checks every interior-time contact a linear single-vertex step
// can produce: path-over-point, sweep-over-point, sweep-vs-static-edge, and
// the collinear overlap of the two moving edges.
inline bool interior_step_clear(const PlaneGraph& g, const Drawing& d, int v, const Point2& to,
                                const ObstacleSet& obstacles) {
  const Point2 a = d[v], b = to;
  // The moving vertex's path over static vertices and obstacles.
  for (int w = 0; w < g.n; ++w)
    if (w != v && on_segment(d[w], a, b)) return false;
  for (const Point2& p : obstacles)
    if (on_segment(p, a, b)) return false;

  std::vector<int> nbrs;
  for (auto& [x, y] : g.edges) {
    if (x == v) nbrs.push_back(y);
    else if (y == v) nbrs.push_back(x);
  }

  // The path over static edges.
  for (auto& [x, y] : g.edges) {
    if (x == v || y == v) continue;
    if (segments_intersect(d[x], d[y], a, b) != SegmentRelation::Disjoint) return false;
  }

  // Each moving edge sweeps the triangle (u, a, b).
  for (int u : nbrs) {
    const Point2& pu = d[u];
    for (int w = 0; w < g.n; ++w)
      if (w != v && w != u && in_closed_triangle(d[w], pu, a, b)) return false;
    for (const Point2& p : obstacles)
      if (in_closed_triangle(p, pu, a, b)) return false;
    for (auto& [x, y] : g.edges) {
      if (x == v || y == v) continue;
      if (x == u || y == u) {
        if (seg_hits_sweep_beyond_pivot(d[x], d[y], pu, a, b)) return false;
      } else {
        if (d[x] != pu && d[y] != pu &&
            (in_closed_triangle(d[x], pu, a, b) || in_closed_triangle(d[y], pu, a, b)))
          return false;
        if (segments_intersect(d[x], d[y], pu, a) != SegmentRelation::Disjoint) return false;
        if (segments_intersect(d[x], d[y], pu, b) != SegmentRelation::Disjoint) return false;
        if (segments_intersect(d[x], d[y], a, b) != SegmentRelation::Disjoint) return false;
      }
    }
  }

  // The two moving edges may only overlap if the moving vertex crosses the
  // line of its neighbors outside the segment between them.
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      const Point2 &u1 = d[nbrs[i]], &u2 = d[nbrs[j]];
      if (u1 == u2) continue;  // coincident neighbors: start drawing invalid
      Rational den = cross(u2 - u1, b - a);
      if (den == 0) continue;  // path parallel to the neighbor line
      Rational s = cross(u2 - u1, u1 - a) / den;
      if (s < 0 || s > 1) continue;
      // The path crosses the neighbor line at a unique point; that point lies
      // on the closed segment [u1, u2] exactly when the segments intersect.
      if (segments_intersect(a, b, u1, u2) == SegmentRelation::Disjoint) return false;
    }
  return true;
}

// Incremental validity of the drawing obtained by moving v to `to`: the
// static part of a valid drawing stays valid, so only features involving v
// need re-checking.  Rotation orders and faces cannot change because the
// caller only applies moves whose interior is contact-free.
inline bool moved_drawing_valid(const PlaneGraph& g, const Drawing& d, int v, const Point2& to,
                                const ObstacleSet& obstacles) {
  for (int w = 0; w < g.n; ++w)
    if (w != v && d[w] == to) return false;
  for (const Point2& p : obstacles)
    if (p == to) return false;
  for (auto& [x, y] : g.edges)
    if (x != v && y != v && on_segment(to, d[x], d[y])) return false;
  for (auto& [x, y] : g.edges) {
    if (x != v && y != v) continue;
    const int u = (x == v) ? y : x;
    for (int w = 0; w < g.n; ++w)
      if (w != v && w != u && on_segment(d[w], to, d[u])) return false;
    for (const Point2& p : obstacles)
      if (on_segment(p, to, d[u])) return false;
    for (auto& [c, e] : g.edges) {
      if (c == v || e == v) continue;
      SegmentRelation rel = segments_intersect(to, d[u], d[c], d[e]);
      if (c == u || e == u) {
        if (rel == SegmentRelation::ProperCrossing) return false;
      } else if (rel != SegmentRelation::Disjoint) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Integer fast path.  When every coordinate in play scales to a bounded
// integer lattice the same predicates run on int64 coordinates with __int128
// intermediates; the semantics mirror the rational kernel sign for sign
// (cross-validated in the test suite).

struct IPoint {
  long long x = 0, y = 0;
  friend bool operator==(const IPoint&, const IPoint&) = default;
};

inline int isign(__int128 v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

inline __int128 icross(const IPoint& o, const IPoint& a, const IPoint& b) {
  return static_cast<__int128>(a.x - o.x) * (b.y - o.y) -
         static_cast<__int128>(a.y - o.y) * (b.x - o.x);
}

inline bool ion_segment(const IPoint& p, const IPoint& a, const IPoint& b) {
  if (icross(a, b, p) != 0) return false;
  __int128 d = static_cast<__int128>(p.x - a.x) * (p.x - b.x) +
               static_cast<__int128>(p.y - a.y) * (p.y - b.y);
  return d <= 0;
}

inline SegmentRelation isegments_intersect(const IPoint& a, const IPoint& b, const IPoint& c,
                                           const IPoint& d) {
  int o1 = isign(icross(a, b, c)), o2 = isign(icross(a, b, d));
  int o3 = isign(icross(c, d, a)), o4 = isign(icross(c, d, b));
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
    return SegmentRelation::ProperCrossing;
  bool touch = false;
  if (o1 == 0 && ion_segment(c, a, b)) touch = true;
  if (o2 == 0 && ion_segment(d, a, b)) touch = true;
  if (o3 == 0 && ion_segment(a, c, d)) touch = true;
  if (o4 == 0 && ion_segment(b, c, d)) touch = true;
  if (touch) return SegmentRelation::Touching;
  if (o1 != o2 && o3 != o4) return SegmentRelation::ProperCrossing;
  return SegmentRelation::Disjoint;
}

inline bool iin_closed_triangle(const IPoint& p, const IPoint& a, const IPoint& b,
                                const IPoint& c) {
  if (icross(a, b, c) == 0)
    return ion_segment(p, a, b) || ion_segment(p, a, c) || ion_segment(p, b, c);
  int s1 = isign(icross(a, b, p)), s2 = isign(icross(b, c, p)), s3 = isign(icross(c, a, p));
  return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

inline bool iseg_hits_sweep_beyond_pivot(const IPoint& x, const IPoint& y, const IPoint& u,
                                         const IPoint& a, const IPoint& b) {
  const IPoint& far = (x == u) ? y : x;
  if (!(far == u) && iin_closed_triangle(far, u, a, b)) return true;
  return isegments_intersect(x, y, a, b) != SegmentRelation::Disjoint;
}

// Integer mirror of grid_step_ok: d holds the current positions, v the
// moving vertex, `to` its destination.
inline bool grid_step_ok_i64(const PlaneGraph& g, const std::vector<IPoint>& d, int v,
                             const IPoint& to, const std::vector<IPoint>& obstacles) {
  const IPoint a = d[v], b = to;
  if (a == b) return false;

  // End-drawing validity (incremental).
  for (int w = 0; w < g.n; ++w)
    if (w != v && d[w] == b) return false;
  for (const IPoint& p : obstacles)
    if (p == b) return false;
  for (auto& [x, y] : g.edges)
    if (x != v && y != v && ion_segment(b, d[x], d[y])) return false;
  std::vector<int> nbrs;
  for (auto& [x, y] : g.edges) {
    if (x == v) nbrs.push_back(y);
    else if (y == v) nbrs.push_back(x);
  }
  for (int u : nbrs) {
    for (int w = 0; w < g.n; ++w)
      if (w != v && w != u && ion_segment(d[w], b, d[u])) return false;
    for (const IPoint& p : obstacles)
      if (ion_segment(p, b, d[u])) return false;
    for (auto& [c, e] : g.edges) {
      if (c == v || e == v) continue;
      SegmentRelation rel = isegments_intersect(b, d[u], d[c], d[e]);
      if (c == u || e == u) {
        if (rel == SegmentRelation::ProperCrossing) return false;
      } else if (rel != SegmentRelation::Disjoint) {
        return false;
      }
    }
  }

  // Interior-time contacts.
  for (int w = 0; w < g.n; ++w)
    if (w != v && ion_segment(d[w], a, b)) return false;
  for (const IPoint& p : obstacles)
    if (ion_segment(p, a, b)) return false;
  for (auto& [x, y] : g.edges) {
    if (x == v || y == v) continue;
    if (isegments_intersect(d[x], d[y], a, b) != SegmentRelation::Disjoint) return false;
  }
  for (int u : nbrs) {
    const IPoint& pu = d[u];
    for (int w = 0; w < g.n; ++w)
      if (w != v && w != u && iin_closed_triangle(d[w], pu, a, b)) return false;
    for (const IPoint& p : obstacles)
      if (iin_closed_triangle(p, pu, a, b)) return false;
    for (auto& [x, y] : g.edges) {
      if (x == v || y == v) continue;
      if (x == u || y == u) {
        if (iseg_hits_sweep_beyond_pivot(d[x], d[y], pu, a, b)) return false;
      } else {
        if (iin_closed_triangle(d[x], pu, a, b) || iin_closed_triangle(d[y], pu, a, b))
          return false;
        if (isegments_intersect(d[x], d[y], pu, a) != SegmentRelation::Disjoint) return false;
        if (isegments_intersect(d[x], d[y], pu, b) != SegmentRelation::Disjoint) return false;
        if (isegments_intersect(d[x], d[y], a, b) != SegmentRelation::Disjoint) return false;
      }
    }
  }
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      const IPoint &u1 = d[nbrs[i]], &u2 = d[nbrs[j]];
      if (u1 == u2) continue;
      IPoint du{u2.x - u1.x, u2.y - u1.y}, dp{b.x - a.x, b.y - a.y};
      __int128 den = static_cast<__int128>(du.x) * dp.y - static_cast<__int128>(du.y) * dp.x;
      if (den == 0) continue;
      // Crossing parameter s = num/den must land in [0, 1] on the path and
      // outside the closed segment [u1, u2] on the neighbor line.
      __int128 num = static_cast<__int128>(du.x) * (u1.y - a.y) -
                     static_cast<__int128>(du.y) * (u1.x - a.x);
      if (den < 0) { den = -den; num = -num; }
      if (num < 0 || num > den) continue;
      // The path crosses the neighbor line at a unique point; that point lies
      // on the closed segment [u1, u2] exactly when the segments intersect.
      if (isegments_intersect(a, b, u1, u2) == SegmentRelation::Disjoint) return false;
    }
  return true;
}

}  // namespace search_detail

// Single-vertex grid transition acceptance; equivalent to
// verify_linear_step(g, d, d[v := to], obstacles).ok when d is valid and
// clear of the obstacles (property-tested against the verifier).
inline bool grid_step_ok(const PlaneGraph& g, const Drawing& d, int v, const Point2& to,
                         const ObstacleSet& obstacles) {
  if (d[v] == to) return false;
  return search_detail::moved_drawing_valid(g, d, v, to, obstacles) &&
         search_detail::interior_step_clear(g, d, v, to, obstacles);
}

inline SearchResult grid_search_morph(const Instance& inst, const GridConfig& cfg) {
  const PlaneGraph& g = inst.graph;
  if (!(cfg.pitch > 0)) throw std::invalid_argument("grid_search_morph: pitch must be positive");
  if (cfg.width < 1 || cfg.height < 1 ||
      static_cast<long long>(cfg.width) * cfg.height > (1LL << 21))
    throw std::invalid_argument("grid_search_morph: grid size out of range");
  if (cfg.movable.empty())
    throw std::invalid_argument("grid_search_morph: movable set must not be empty");
  {
    // The cell tuple must radix-pack injectively into the 128-bit state key.
    const unsigned __int128 base =
        static_cast<unsigned __int128>(cfg.width) * static_cast<unsigned __int128>(cfg.height);
    unsigned __int128 cap = ~static_cast<unsigned __int128>(0);
    for (std::size_t i = 0; i < cfg.movable.size(); ++i) {
      if (cap < base)
        throw std::invalid_argument("grid_search_morph: too many movable vertices for this grid");
      cap /= base;
    }
  }
  for (std::size_t i = 0; i < cfg.movable.size(); ++i) {
    int v = cfg.movable[i];
    if (v < 0 || v >= g.n) throw std::invalid_argument("grid_search_morph: bad movable vertex");
    for (std::size_t j = i + 1; j < cfg.movable.size(); ++j)
      if (cfg.movable[j] == v)
        throw std::invalid_argument("grid_search_morph: duplicate movable vertex");
  }
  if (!drawing_valid(g, inst.start) || !drawing_valid(g, inst.end))
    throw std::invalid_argument("grid_search_morph: endpoint drawing invalid");
  if (!obstacle_clear_of_drawing(g, inst.start, inst.obstacles) ||
      !obstacle_clear_of_drawing(g, inst.end, inst.obstacles))
    throw std::invalid_argument("grid_search_morph: obstacle on endpoint drawing");

  auto snap = [&](const Point2& p) -> std::pair<int, int> {
    Rational qx = (p.x - cfg.origin.x) / cfg.pitch, qy = (p.y - cfg.origin.y) / cfg.pitch;
    if (denominator(qx) != 1 || denominator(qy) != 1)
      throw std::invalid_argument("grid_search_morph: endpoint not grid-aligned");
    long long ix = numerator(qx).convert_to<long long>(),
              iy = numerator(qy).convert_to<long long>();
    if (ix < 0 || ix >= cfg.width || iy < 0 || iy >= cfg.height)
      throw std::invalid_argument("grid_search_morph: endpoint outside the grid box");
    return {static_cast<int>(ix), static_cast<int>(iy)};
  };
  auto unsnap = [&](std::pair<int, int> c) {
    return Point2{cfg.origin.x + c.first * cfg.pitch, cfg.origin.y + c.second * cfg.pitch};
  };

  using State = std::vector<std::pair<int, int>>;
  State start_state, target_state;
  for (int v : cfg.movable) {
    start_state.push_back(snap(inst.start[v]));
    target_state.push_back(snap(inst.end[v]));
  }
  // A pinned vertex that differs between the endpoints makes the target
  // unreachable; the search still exhausts the movable component honestly.
  bool target_reachable_shape = true;
  for (int v = 0; v < g.n; ++v) {
    bool mv = false;
    for (int m : cfg.movable) mv |= (m == v);
    if (!mv && inst.start[v] != inst.end[v]) target_reachable_shape = false;
  }

  // Choose the integer fast path when every coordinate in play scales onto a
  // bounded integer lattice (common denominator small enough for int64).
  using search_detail::IPoint;
  Integer den(1);
  auto fold_den = [&](const Rational& r) { den = lcm(den, denominator(r)); };
  fold_den(cfg.origin.x);
  fold_den(cfg.origin.y);
  fold_den(cfg.pitch);
  for (const Point2& p : inst.obstacles) {
    fold_den(p.x);
    fold_den(p.y);
  }
  for (int v = 0; v < g.n; ++v) {
    fold_den(inst.start[v].x);
    fold_den(inst.start[v].y);
  }
  const Integer ibound = Integer(1) << 40;
  bool int_mode = den < ibound;
  auto to_i64 = [&](const Rational& r) {
    Rational s = r * den;
    if (abs(numerator(s)) >= ibound) int_mode = false;
    return int_mode ? numerator(s).convert_to<long long>() : 0;
  };
  auto to_ipt = [&](const Point2& p) { return IPoint{to_i64(p.x), to_i64(p.y)}; };
  std::vector<IPoint> iwork, iobs;
  long long iox = 0, ioy = 0, ipitch = 0;
  if (int_mode) {
    for (int v = 0; v < g.n; ++v) iwork.push_back(to_ipt(inst.start[v]));
    for (const Point2& p : inst.obstacles) iobs.push_back(to_ipt(p));
    iox = to_i64(cfg.origin.x);
    ioy = to_i64(cfg.origin.y);
    ipitch = to_i64(cfg.pitch);
    if (!int_mode ||
        abs(Integer(iox) + Integer(ipitch) * cfg.width) + abs(Integer(ipitch) * cfg.height) +
                abs(Integer(ioy)) >=
            ibound)
      int_mode = false;
  }
  auto iunsnap = [&](std::pair<int, int> c) {
    return IPoint{iox + c.first * ipitch, ioy + c.second * ipitch};
  };

  const StateKey target_key = canonical_state_key(target_state, cfg.width, cfg.height);
  std::vector<State> states{start_state};
  std::vector<std::pair<int, std::pair<int, std::pair<int, int>>>> parent{
      {-1, {-1, {0, 0}}}};  // (parent index, (movable slot, new cell))
  std::unordered_map<StateKey, int, StateKeyHash> seen;
  seen.emplace(canonical_state_key(start_state, cfg.width, cfg.height), 0);

  SearchResult res;
  res.pitch = cfg.pitch;
  if (start_state == target_state && target_reachable_shape) {
    res.found = true;
    res.morph = Morph{{inst.start}};  // zero steps
    res.states_explored = 1;
    res.frontier_peak = 1;
    return res;
  }

  std::deque<int> queue{0};
  res.frontier_peak = 1;
  Drawing work = inst.start;
  int found_at = -1;
  while (!queue.empty() && found_at < 0) {
    int cur = queue.front();
    queue.pop_front();
    const State st = states[cur];
    for (std::size_t s = 0; s < cfg.movable.size(); ++s) {
      if (int_mode) iwork[cfg.movable[s]] = iunsnap(st[s]);
      else work[cfg.movable[s]] = unsnap(st[s]);
    }

    auto try_move = [&](std::size_t slot, int cx, int cy) {
      if (found_at >= 0) return;
      if (cx < 0 || cx >= cfg.width || cy < 0 || cy >= cfg.height) return;
      if (st[slot] == std::make_pair(cx, cy)) return;
      State nxt = st;
      nxt[slot] = {cx, cy};
      StateKey k = canonical_state_key(nxt, cfg.width, cfg.height);
      if (seen.count(k)) return;
      int v = cfg.movable[slot];
      if (int_mode) {
        if (!search_detail::grid_step_ok_i64(g, iwork, v, iunsnap({cx, cy}), iobs)) return;
      } else {
        if (!grid_step_ok(g, work, v, unsnap({cx, cy}), inst.obstacles)) return;
      }
      int idx = static_cast<int>(states.size());
      states.push_back(nxt);
      parent.push_back({cur, {static_cast<int>(slot), {cx, cy}}});
      seen.emplace(k, idx);
      if (target_reachable_shape && k == target_key) {
        found_at = idx;
        return;
      }
      queue.push_back(idx);
      res.frontier_peak = std::max(res.frontier_peak, queue.size());
    };

    // Goal bias: probing each vertex's target cell first does not change the
    // BFS level structure but finds goal-adjacent states without expanding
    // the bulk of the final level.
    for (std::size_t slot = 0; slot < cfg.movable.size() && found_at < 0; ++slot)
      try_move(slot, target_state[slot].first, target_state[slot].second);
    for (std::size_t slot = 0; slot < cfg.movable.size() && found_at < 0; ++slot) {
      if (cfg.any_point) {
        for (int cx = 0; cx < cfg.width && found_at < 0; ++cx)
          for (int cy = 0; cy < cfg.height && found_at < 0; ++cy) try_move(slot, cx, cy);
      } else {
        for (int dx = -1; dx <= 1 && found_at < 0; ++dx)
          for (int dy = -1; dy <= 1 && found_at < 0; ++dy) {
            if (dx == 0 && dy == 0) continue;
            try_move(slot, st[slot].first + dx, st[slot].second + dy);
          }
      }
    }
  }

  res.states_explored = states.size();
  if (found_at < 0) return res;  // exhausted: not found at this resolution

  // Reconstruct the drawing sequence along the parent chain.
  std::vector<int> chain;
  for (int i = found_at; i >= 0; i = parent[i].first) chain.push_back(i);
  Morph m;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Drawing d = inst.start;
    for (std::size_t s = 0; s < cfg.movable.size(); ++s)
      d[cfg.movable[s]] = unsnap(states[*it][s]);
    m.drawings.push_back(std::move(d));
  }
  if (!verify_morph(g, m, inst.obstacles).ok)
    throw std::logic_error("grid_search_morph: internal error, found morph failed verification");
  res.found = true;
  res.morph = std::move(m);
  return res;
}

}  // namespace obmorph
