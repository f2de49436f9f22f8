#pragma once

// Shifting the vertex labels of a cycle drawing along its own curve.
//
// If the drawing has a free vertex (degree two, collinear with its
// neighbors), the labels can be advanced by one position using exactly n
// linear steps: in step k, vertex v_{k-1} finishes its arrival slide onto
// corner q_k while v_k simultaneously departs a short hop along its outgoing
// edge.  Every motion slides along the (static) curve or hugs it inside a
// thin corner sliver whose width is controlled by a single parameter, so the
// whole morph stays arbitrarily close to the curve and never meets the
// obstacles.  The construction is retried with a smaller sliver parameter
// until the exact verifier accepts it.

#include "obmorph/morph_util.hpp"

#include <optional>
#include <stdexcept>

namespace obmorph {

namespace detail {

// Cycle order starting at vertex 0, following adjacency (matches the
// traversal used by is_shifted_version).
inline std::vector<int> trace_cycle_order(const PlaneGraph& g) {
  auto adj = g.adjacency();
  for (int v = 0; v < g.n; ++v)
    if (adj[v].size() != 2) throw std::invalid_argument("cycle_shift_morph: graph is not a cycle");
  std::vector<int> order{0};
  int prev = 0, cur = adj[0][0];
  while (cur != 0) {
    order.push_back(cur);
    int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = nxt;
  }
  if (static_cast<int>(order.size()) != g.n)
    throw std::invalid_argument("cycle_shift_morph: cycle is disconnected");
  return order;
}

// One unit label shift (+1 along `order`) with sliver parameter lambda.
// Returns the n step boundaries appended to mb.
inline void unit_shift_steps(MorphBuilder& mb, const std::vector<int>& order,
                             const Rational& lambda) {
  const int n = static_cast<int>(order.size());
  const Drawing q0 = mb.current();
  auto q = [&](int i) -> const Point2& { return q0[order[((i % n) + n) % n]]; };
  // Departure parking spot of v_k: a lambda-fraction along its outgoing edge.
  auto park = [&](int k) { return lerp(q(k), q(k + 1), lambda); };

  for (int k = 1; k <= n; ++k) {
    Drawing d = mb.current();
    d[order[(k - 1) % n]] = q(k);            // arrival onto corner q_k
    if (k <= n - 1) d[order[k]] = park(k);   // simultaneous departure hop
    mb.push(std::move(d));
  }
}

}  // namespace detail

// Morph the drawing onto its own shifted version: the vertex at order
// position i ends at the start position of order position i+offset.
// Requires a free vertex; uses exactly n steps per unit shift.
inline Morph cycle_shift_morph(const PlaneGraph& g, const Drawing& pos, int offset,
                               const ObstacleSet& obstacles) {
  const int n = g.n;
  if (n < 3) throw std::invalid_argument("cycle_shift_morph: cycle too small");
  offset = ((offset % n) + n) % n;
  if (offset == 0) throw std::invalid_argument("cycle_shift_morph: offset is 0 mod n");
  std::vector<int> order = detail::trace_cycle_order(g);

  auto issues = validate_drawing(g, pos);
  if (!issues.empty()) throw std::invalid_argument("cycle_shift_morph: invalid drawing");

  // The construction starts each unit shift at a free corner; rotate the
  // order so position 0 is free.  The free positions are preserved by the
  // shift (the point set is), so one rotation up front suffices.
  std::vector<int> fv = free_vertices(g, pos);
  if (fv.empty()) throw std::invalid_argument("cycle_shift_morph: no free vertex");
  int start = -1;
  for (int i = 0; i < n && start < 0; ++i)
    if (std::find(fv.begin(), fv.end(), order[i]) != fv.end()) start = i;
  std::rotate(order.begin(), order.begin() + start, order.end());

  for (int halvings = 0; halvings < 48; ++halvings) {
    Rational lambda = Rational(1, 4) / (Integer(1) << halvings);
    MorphBuilder mb(pos);
    std::vector<int> ord = order;
    for (int rep = 0; rep < offset; ++rep) {
      detail::unit_shift_steps(mb, ord, lambda);
      // After a unit shift the free corner is occupied by the predecessor
      // in the cycle order; restart the next round from there.
      std::rotate(ord.begin(), ord.end() - 1, ord.end());
    }
    Morph m = std::move(mb).finish();
    if (verify_morph(g, m, obstacles).ok) return m;
  }
  throw std::runtime_error("cycle_shift_morph: verification kept failing");
}

}  // namespace obmorph
