#pragma once

// Frame pinning: post-compose a morph with a per-time similarity so that one
// or two designated vertices stay put.
//
// With one pinned vertex the correction is a translation; composed with the
// linear vertex motions it stays linear, so the result is exact with no
// refinement.  With two pinned vertices the correction is the similarity
// z -> v1(0) + (z - v1(x)) * (w(0) / w(x)) with w(x) = v2(x) - v1(x),
// computed in exact rational complex arithmetic.  It is nonlinear in x, so
// each step is discretized at dyadic parameters; at every emitted boundary
// the pinned vertices sit at their home positions exactly, hence they are
// exactly stationary throughout every sub-step as well.  Sub-steps are
// refined adaptively until the exact verifier accepts.

#include "obmorph/morph_util.hpp"

#include <stdexcept>

namespace obmorph {

namespace detail {

// Rational complex multiplication / division on points.
inline Point2 cmul(const Point2& a, const Point2& b) {
  return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x};
}
inline Point2 cdiv(const Point2& a, const Point2& b) {
  Rational n = b.x * b.x + b.y * b.y;
  if (n == 0) throw std::invalid_argument("pin_frame_transform: pinned vertices coincide");
  return {(a.x * b.x + a.y * b.y) / n, (a.y * b.x - a.x * b.y) / n};
}

}  // namespace detail

struct PinOptions {
  int max_refinement_rounds = 20;
  std::size_t max_boundaries = 40000;
};

// Correct morph m of graph g so the pinned vertices (one or two) are
// stationary; the first drawing is unchanged, and the last drawing equals
// the input's last drawing corrected (identity when the pinned vertices end
// at their start positions).  Verified with an empty obstacle set; the
// pinned vertices themselves act as the obstacles.
inline Morph pin_frame_transform(const PlaneGraph& g, const Morph& m,
                                 const std::vector<int>& pinned, const PinOptions& opt = {}) {
  if (pinned.empty() || pinned.size() > 2)
    throw std::invalid_argument("pin_frame_transform: need one or two pinned vertices");
  if (m.drawings.size() < 2) return m;
  const bool two = pinned.size() == 2;
  const int p1 = pinned[0], p2 = two ? pinned[1] : -1;
  const Drawing& first = m.drawings.front();
  const Point2 home1 = first[p1];
  const Point2 w0 = two ? first[p2] - first[p1] : Point2{Rational(1), Rational(0)};
  if (two && w0 == Point2{Rational(0), Rational(0)})
    throw std::invalid_argument("pin_frame_transform: pinned vertices coincide at start");
  const Drawing& last = m.drawings.back();
  for (int p : pinned)
    if (last[p] != first[p])
      throw std::invalid_argument(
          "pin_frame_transform: pinned vertex positions differ between the first and last "
          "drawing");
  if (two) {
    // The similarity divides by the pinned difference vector; it must stay
    // away from zero throughout every step, boundaries included.
    for (std::size_t s = 0; s + 1 < m.drawings.size(); ++s) {
      const Point2 ws = m.drawings[s][p2] - m.drawings[s][p1];
      const Point2 we = m.drawings[s + 1][p2] - m.drawings[s + 1][p1];
      Point2 zero{Rational(0), Rational(0)};
      if (ws == zero || we == zero ||
          detail::coincidence_time(MovingPoint{m.drawings[s][p1], m.drawings[s + 1][p1]},
                                   MovingPoint{m.drawings[s][p2], m.drawings[s + 1][p2]}))
        throw std::invalid_argument(
            "pin_frame_transform: pinned vertex distance collapses to zero");
    }
  }

  // Evaluate the corrected drawing at parameter x within original step s.
  auto corrected = [&](int s, const Rational& x) {
    Drawing d(g.n);
    const Drawing& A = m.drawings[s];
    const Drawing& B = m.drawings[s + 1];
    for (int v = 0; v < g.n; ++v) d[v] = lerp(A[v], B[v], x);
    if (!two) {
      Point2 shift = d[p1] - home1;
      for (auto& p : d) p = p - shift;
      return d;
    }
    Point2 w = d[p2] - d[p1];
    Point2 factor = detail::cdiv(w0, w);  // throws if w == 0
    Point2 base = d[p1];
    for (auto& p : d) p = home1 + detail::cmul(p - base, factor);
    return d;
  };

  // Per original step: sorted dyadic parameter lists, refined on failure.
  const int steps = m.steps();
  std::vector<std::vector<Rational>> params(steps, {Rational(0), Rational(1)});
  for (int round = 0; round <= opt.max_refinement_rounds; ++round) {
    MorphBuilder mb(corrected(0, Rational(0)));
    for (int s = 0; s < steps; ++s)
      for (std::size_t i = 1; i < params[s].size(); ++i) mb.push(corrected(s, params[s][i]));
    Morph out = std::move(mb).finish();
    if (out.drawings.size() < 2) out.drawings.push_back(out.drawings.front());
    MorphReport rep = verify_morph(g, out, {});
    if (rep.ok) return out;
    if (round == opt.max_refinement_rounds) break;
    // Refine: with one pinned vertex the composition is exactly linear, so a
    // failure is genuine and refinement cannot help.
    if (!two) throw std::runtime_error("pin_frame_transform: corrected morph is invalid");
    // Locate the failing sub-step and split every interval of that original
    // step (simple and robust; failing steps are re-found next round).
    int idx = rep.failing_step;  // index into concatenated sub-steps
    int s = 0;
    {
      int acc = 0;
      for (; s < steps; ++s) {
        int sub = static_cast<int>(params[s].size()) - 1;
        if (idx < acc + sub) break;
        acc += sub;
      }
      if (s >= steps) s = steps - 1;  // boundary-validation failures: refine last
    }
    std::vector<Rational> finer;
    std::size_t total = 0;
    for (int t = 0; t < steps; ++t) total += params[t].size();
    if (total > opt.max_boundaries)
      throw std::runtime_error("pin_frame_transform: refinement cap exceeded");
    finer.push_back(params[s].front());
    for (std::size_t i = 1; i < params[s].size(); ++i) {
      finer.push_back((params[s][i - 1] + params[s][i]) / 2);
      finer.push_back(params[s][i]);
    }
    params[s] = std::move(finer);
  }
  throw std::runtime_error("pin_frame_transform: refinement cap exceeded");
}

}  // namespace obmorph
