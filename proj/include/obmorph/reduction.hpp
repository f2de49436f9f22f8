#pragma once

// Hardness gadgetry: encodes a 3-CNF formula as an obstacle-avoidance
// morphing instance.  The two input drawings differ only on a 4-cycle of
// "synchronization" vertices whose labels advance by one around the cycle;
// a satisfying assignment yields an explicit piecewise-linear witness morph
// (variable gadgets commit to a side, row/column waves carry the commitment
// to the clause strip, each clause resolves through its first true literal,
// the synchronization cycle rotates, and everything retracts in reverse).
//
// All coordinates are integers after scaling by kScale; internally the
// construction works in hundredths of a layout unit so that every named
// constant below is exact.
//
// What is machine-checked: the witness passes the exact verifier, local
// out-of-order "gate probes" fail the verifier, the emitted drawings are
// valid and obstacle-compatible, and a bounded grid search over the
// synchronization cycle alone finds no morph.  A negative answer from the
// decision front end reports the formula as unsatisfiable and explicitly
// does not certify that no morph exists.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpll.hpp"
#include "drawing.hpp"
#include "plane_graph.hpp"
#include "rational.hpp"
#include "search.hpp"
#include "verifier.hpp"

namespace obmorph {

// One parallel stage of the witness schedule: simultaneous straight-line
// moves, one target per listed vertex.
struct Phase {
  std::vector<std::pair<int, Point2>> moves;
};

// An out-of-order move that the verifier must reject: from witness drawing
// `at_drawing`, moving `vertex` to `target` violates a gate obstacle or a
// coincidence constraint.
struct GateProbe {
  std::string name;
  int at_drawing = 0;
  int vertex = -1;
  Point2 target;
};

struct ReductionOutput {
  Instance instance;     // scaled integer coordinates
  CnfFormula formula;
  int scale = 100;

  struct VarIds {
    int a_top = -1, d = -1, a_bot = -1;
  };
  struct ColIds {
    int r_lit = -1, s = -1, t = -1, w = -1, u = -1;
    int split_row = 0;   // row whose center splits for this literal
    int clause = 0;      // clause index (1-based)
    int slot = 0;        // literal slot within the clause (1..3)
  };
  struct ClauseIds {
    int pL = -1, aL1 = -1, aL2 = -1;
    std::array<int, 3> d{-1, -1, -1};
    int r = -1, g = -1, pR = -1, aR1 = -1, aR2 = -1;
    int q = -1;          // port the clause bridge attaches to
  };

  std::array<int, 4> sync{-1, -1, -1, -1};
  std::vector<VarIds> vars;                   // index v-1, v = 1..n
  std::vector<std::vector<int>> port;         // port[r-1][k-1]
  std::vector<std::vector<int>> center;       // center[r-1][k-1]
  std::map<std::pair<int, int>, int> bport;   // (row, column) -> id
  std::vector<ColIds> cols;                   // index kappa-1
  std::vector<ClauseIds> cls;                 // index i-1
  std::map<int, std::string> role;            // vertex id -> label
};

struct WitnessBundle {
  Morph morph;
  std::vector<GateProbe> probes;
};

struct DecideResult {
  bool satisfiable = false;
  std::optional<Assignment> model;
  std::optional<Morph> witness;  // present iff satisfiable; verified
  std::string report;
};

namespace reduction_detail {

// Everything below is in hundredths of a layout unit, so all published
// constants with two decimals are exact integers here.
struct P {
  long long x = 0, y = 0;
  friend bool operator==(const P& a, const P& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const P& a, const P& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

inline Point2 to_point(const P& p) { return {Rational(p.x), Rational(p.y)}; }

// Layout constants for a formula with n variables and m clauses.
struct Geometry {
  int n = 0, m = 0;

  explicit Geometry(const CnfFormula& f) : m(static_cast<int>(f.clauses.size())) {
    n = f.num_vars;
  }

  long long Y0() const { return 3200LL * n + 3200; }

  // --- synchronization cycle ------------------------------------------------
  P seat(int k) const {
    switch (k) {
      case 1: return {400, Y0() + 2800};
      case 2: return {600, Y0() + 2700};
      case 3: return {500, Y0() + 500};
      default: return {400, Y0() + 400};
    }
  }
  // Waypoint for the rotation: the intersection of the line through seats
  // 1, 2 (slope -1/2) and the line through seats 4, 3 (slope +1), so both
  // long swings of v2 are collinear with its cycle neighbours.
  P hub() const { return {2000, Y0() + 2000}; }

  // --- variable gadget v = 1..n ----------------------------------------------
  P var_a_top(int v) const { return {800, 3200LL * v + 900}; }
  P var_d(int v) const { return {800, 3200LL * v}; }
  P var_a_bot(int v) const { return {800, 3200LL * v - 900}; }
  P var_d_moved(int v, bool val) const {
    return {800, 3200LL * v + (val ? 700 : -700)};
  }
  P var_a_exit(int v, bool val) const {
    return {1200, 3200LL * v + (val ? 650 : -650)};
  }

  // --- grid of rows and columns ----------------------------------------------
  int columns() const { return 3 * m; }
  int ports_per_row() const { return m >= 1 ? 3 * m + 1 : 1; }
  long long col_x0(int kappa) const { return 1600LL * kappa; }
  long long row_y0(int r) const { return 1600LL * r; }
  long long col_cx(int kappa) const { return 1600LL * kappa + 800; }

  P port_pos(int r, int k) const { return {1600LL * k, 1600LL * r + 800}; }
  P port_adv(int r, int k) const { return {1600LL * k + 400, 1600LL * r + 800}; }
  // Center states: TL (rest), BL (row wave), BR (split), TR (column wave).
  P center_tl(int r, int k) const { return {col_x0(k) + 600, row_y0(r) + 1000}; }
  P center_bl(int r, int k) const { return {col_x0(k) + 600, row_y0(r) + 600}; }
  P center_tr(int r, int k) const { return {col_x0(k) + 1000, row_y0(r) + 1000}; }
  P center_br(int r, int k) const { return {col_x0(k) + 1000, row_y0(r) + 600}; }
  P bport_pos(int r, int k) const { return {col_x0(k) + 800, 1600LL * r}; }
  P bport_adv(int r, int k) const { return {col_x0(k) + 800, 1600LL * r + 400}; }

  // --- literal stalk of column kappa ------------------------------------------
  P lit_r(int kappa) const { return {col_cx(kappa), Y0() - 700}; }
  P lit_r_pushed(int kappa) const { return {col_cx(kappa) + 30, Y0() - 320}; }
  P lit_s(int kappa) const { return {col_cx(kappa), Y0() - 300}; }
  P lit_s_raised(int kappa) const { return {col_cx(kappa) - 25, Y0() - 150}; }
  long long plug_h(int slot) const { return slot == 1 ? 45 : 5; }
  P plug(int kappa, int slot) const {
    return {col_cx(kappa) + 30, Y0() + 50 + plug_h(slot)};
  }
  P lit_t_tucked(int kappa) const { return {col_cx(kappa) + 25, Y0() - 260}; }
  // Anchor triangle keeping the stalk tip rigidly attached.
  P anchor_w(int kappa, int slot) const {
    long long cx = col_cx(kappa);
    if (slot == 1) return {cx + 85, Y0() + 85};
    if (slot == 2) return {cx + 85, Y0() + 50};
    return {cx - 25, Y0() + 45};
  }
  P anchor_u(int kappa, int slot) const {
    long long cx = col_cx(kappa);
    return slot == 3 ? P{cx - 32, Y0() - 120} : P{cx + 92, Y0() - 200};
  }
  P anchor_gate(int kappa, int slot) const {
    long long cx = col_cx(kappa);
    if (slot == 1) return {cx + 75, Y0() - 30};
    if (slot == 2) return {cx + 80, Y0() - 35};
    return {cx - 18, Y0() - 70};
  }

  // --- clause strip i = 1..m ----------------------------------------------------
  long long clause_x(int i) const { return 4800LL * i - 3200; }
  // The left post sits left of the bridge port below, so that when the port
  // advances the swept bridge triangle stays clear of the top row's cell
  // obstacles.
  P cl_pL(int i) const { return {clause_x(i) - 200, Y0() + 110}; }
  P cl_aL1(int i) const { return {clause_x(i) + 50, Y0() + 200}; }
  P cl_aL2(int i) const { return {clause_x(i) + 140, Y0() + 220}; }
  P cl_d(int i, int j) const {
    long long dx[3] = {800, 2400, 4000};
    long long dy[3] = {160, 120, 75};
    return {clause_x(i) + dx[j - 1], Y0() + dy[j - 1]};
  }
  P cl_d_displaced(int i, int j) const {
    // Only slots 2 and 3 are ever displaced; slot 3 swings up so the chain
    // clears the lowered check vertex without sweeping over it.
    return j == 2 ? P{clause_x(i) + 2900, Y0() + 60} : P{clause_x(i) + 4080, Y0() + 130};
  }
  P cl_r(int i) const { return {clause_x(i) + 4100, Y0() + 93}; }
  P cl_r_lowered(int i) const { return {clause_x(i) + 4060, Y0() + 25}; }
  P cl_g(int i) const { return {clause_x(i) + 4400, Y0() + 120}; }
  P cl_pR(int i) const { return {clause_x(i) + 4480, Y0() + 130}; }
  P cl_aR1(int i) const { return {clause_x(i) + 4440, Y0() + 210}; }
  P cl_aR2(int i) const { return {clause_x(i) + 4520, Y0() + 220}; }
  P cl_gate_pl(int i) const { return {clause_x(i) - 204, Y0() + 176}; }
  P cl_gate_pr(int i) const { return {clause_x(i) + 4480, Y0() + 186}; }
  P cl_gate_r(int i) const { return {clause_x(i) + 4035, Y0() + 49}; }
};

// Row that column kappa's literal connects to: 2v for a positive occurrence
// of variable v, 2v-1 for a negative one.
inline int split_row_of(const CnfFormula& f, int kappa) {
  int i = (kappa - 1) / 3 + 1;
  int j = (kappa - 1) % 3 + 1;
  int lit = f.clauses[i - 1][j - 1];
  int v = lit > 0 ? lit : -lit;
  return lit > 0 ? 2 * v : 2 * v - 1;
}

inline void req(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("reduction self-check failed: " + what);
}

}  // namespace reduction_detail

// ---------------------------------------------------------------------------
// Instance construction.

inline ReductionOutput reduce(const CnfFormula& f) {
  using reduction_detail::Geometry;
  using reduction_detail::P;
  using reduction_detail::req;
  using reduction_detail::split_row_of;
  using reduction_detail::to_point;

  f.check();
  Geometry geo(f);
  const int n = geo.n, m = geo.m;
  const long long Y0 = geo.Y0();

  ReductionOutput out;
  out.formula = f;

  std::vector<P> base;
  std::vector<std::pair<int, int>> edges;
  auto add_vertex = [&](P p, std::string role) {
    base.push_back(p);
    int id = static_cast<int>(base.size()) - 1;
    out.role[id] = std::move(role);
    return id;
  };
  auto add_edge = [&](int u, int v) { edges.emplace_back(u, v); };

  // Synchronization cycle.
  for (int k = 1; k <= 4; ++k)
    out.sync[k - 1] = add_vertex(geo.seat(k), "sync:v" + std::to_string(k));
  add_edge(out.sync[0], out.sync[1]);
  add_edge(out.sync[1], out.sync[2]);
  add_edge(out.sync[2], out.sync[3]);
  add_edge(out.sync[3], out.sync[0]);

  // Variable gadgets.
  out.vars.resize(n);
  for (int v = 1; v <= n; ++v) {
    auto& ids = out.vars[v - 1];
    std::string tag = "var:" + std::to_string(v);
    ids.a_top = add_vertex(geo.var_a_top(v), tag + ":a_top");
    ids.d = add_vertex(geo.var_d(v), tag + ":d");
    ids.a_bot = add_vertex(geo.var_a_bot(v), tag + ":a_bot");
    add_edge(ids.a_top, ids.d);
    add_edge(ids.d, ids.a_bot);
  }

  // Ports (and for m = 0 a vertical spine that keeps the rows connected).
  const int K = geo.ports_per_row();
  out.port.assign(2 * n, std::vector<int>(K, -1));
  for (int r = 1; r <= 2 * n; ++r)
    for (int k = 1; k <= K; ++k)
      out.port[r - 1][k - 1] = add_vertex(
          geo.port_pos(r, k), "port:" + std::to_string(r) + ":" + std::to_string(k));
  for (int v = 1; v <= n; ++v) {
    add_edge(out.vars[v - 1].a_top, out.port[2 * v - 1][0]);
    add_edge(out.vars[v - 1].a_bot, out.port[2 * v - 2][0]);
  }
  if (m == 0) {
    for (int r = 1; r + 1 <= 2 * n; ++r)
      add_edge(out.port[r - 1][0], out.port[r][0]);
  }

  // Cell centers and row edges.
  out.center.assign(2 * n, std::vector<int>(geo.columns(), -1));
  for (int r = 1; r <= 2 * n; ++r)
    for (int k = 1; k <= geo.columns(); ++k) {
      int c = add_vertex(geo.center_tl(r, k),
                         "cell:" + std::to_string(r) + ":" + std::to_string(k));
      out.center[r - 1][k - 1] = c;
      add_edge(out.port[r - 1][k - 1], c);
      add_edge(c, out.port[r - 1][k]);
    }

  // Column transmission chains and literal stalks.
  out.cols.resize(geo.columns());
  for (int kappa = 1; kappa <= geo.columns(); ++kappa) {
    auto& col = out.cols[kappa - 1];
    col.clause = (kappa - 1) / 3 + 1;
    col.slot = (kappa - 1) % 3 + 1;
    col.split_row = split_row_of(f, kappa);
    int sigma = col.split_row;
    std::string tag = "col:" + std::to_string(kappa);
    int below = out.center[sigma - 1][kappa - 1];
    for (int r = sigma + 1; r <= 2 * n; ++r) {
      int b = add_vertex(geo.bport_pos(r, kappa),
                         "bport:" + std::to_string(r) + ":" + std::to_string(kappa));
      out.bport[{r, kappa}] = b;
      add_edge(below, b);
      add_edge(b, out.center[r - 1][kappa - 1]);
      below = out.center[r - 1][kappa - 1];
    }
    col.r_lit = add_vertex(geo.lit_r(kappa), tag + ":r_lit");
    col.s = add_vertex(geo.lit_s(kappa), tag + ":s");
    col.t = add_vertex(geo.plug(kappa, col.slot), tag + ":t");
    col.w = add_vertex(geo.anchor_w(kappa, col.slot), tag + ":w");
    col.u = add_vertex(geo.anchor_u(kappa, col.slot), tag + ":u");
    add_edge(out.center[2 * n - 1][kappa - 1], col.r_lit);
    add_edge(col.r_lit, col.s);
    add_edge(col.s, col.t);
    add_edge(col.t, col.w);
    add_edge(col.t, col.u);
    add_edge(col.w, col.u);
  }

  // Clause strips.
  out.cls.resize(m);
  for (int i = 1; i <= m; ++i) {
    auto& c = out.cls[i - 1];
    std::string tag = "clause:" + std::to_string(i);
    c.pL = add_vertex(geo.cl_pL(i), tag + ":pL");
    c.aL1 = add_vertex(geo.cl_aL1(i), tag + ":aL1");
    c.aL2 = add_vertex(geo.cl_aL2(i), tag + ":aL2");
    for (int j = 1; j <= 3; ++j)
      c.d[j - 1] = add_vertex(geo.cl_d(i, j), tag + ":d" + std::to_string(j));
    c.r = add_vertex(geo.cl_r(i), tag + ":r");
    c.g = add_vertex(geo.cl_g(i), tag + ":g");
    c.pR = add_vertex(geo.cl_pR(i), tag + ":pR");
    c.aR1 = add_vertex(geo.cl_aR1(i), tag + ":aR1");
    c.aR2 = add_vertex(geo.cl_aR2(i), tag + ":aR2");
    c.q = out.port[2 * n - 1][3 * (i - 1)];
    add_edge(c.pL, c.d[0]);
    add_edge(c.d[0], c.d[1]);
    add_edge(c.d[1], c.d[2]);
    add_edge(c.d[2], c.r);
    add_edge(c.r, c.g);
    add_edge(c.g, c.pR);
    add_edge(c.pL, c.aL1);
    add_edge(c.pL, c.aL2);
    add_edge(c.aL1, c.aL2);
    add_edge(c.pR, c.aR1);
    add_edge(c.pR, c.aR2);
    add_edge(c.aR1, c.aR2);
    add_edge(c.pL, c.q);
  }
  // Bridge tying the synchronization cycle to the rest of the graph.
  if (n >= 1) add_edge(out.sync[2], out.port[2 * n - 1][0]);

  // --- obstacles ---------------------------------------------------------------
  std::vector<P> obs;
  auto o = [&](long long x, long long y) { obs.push_back({x, y}); };

  // Synchronization corridor.  The open pocket of the corridor quad (right of
  // both diagonals, left of the seat-2/seat-3 edge) is never swept by the
  // intended rotation, so it is filled with obstacle strips that hug the
  // three critical chords at horizontal offset 2; they pin v2 to its seat
  // until the long collinear swing through the hub becomes available.
  for (int j = 1; j <= 48; ++j) o(498 + 2 * j, Y0 + 500 + 44 * j);   // near edge s2-s3
  for (int j = 5; j <= 39; j += 2) o(490 + 2 * j, Y0 + 500 + 44 * j);
  for (int k = 37; k <= 91; k += 2) o(402 + 2 * k, Y0 + 400 + 23 * k);  // near diagonal s4-s2
  for (int k = 72; k <= 96; k += 2) o(402 + k, Y0 + 2800 - 23 * k);     // near diagonal s1-s3
  for (int k = 0; k <= 26; ++k) o(300, Y0 + 300 + 100 * k);             // left wall
  for (long long x = 410; x <= 590; x += 20) o(x, Y0 + 2710 + (600 - x) / 2);  // over line s1-s2
  for (long long x = 520; x <= 595; x += 25) o(x, Y0 + x - 40);  // under line s4-s3-hub
  for (long long x = 530; x <= 590; x += 30) o(x, Y0 + x - 70);
  o(400, Y0 + 350);
  o(400, Y0 + 2850);
  for (long long x : {350LL, 450LL, 550LL, 650LL, 750LL}) o(x, Y0 + 2950);
  o(350, Y0 + 250);
  o(750, Y0 + 250);

  // Variable gates.
  for (int v = 1; v <= n; ++v) {
    o(900, 3200LL * v + 400);   // exit gate, true side
    o(900, 3200LL * v - 400);   // exit gate, false side
    o(1300, 3200LL * v + 845);  // port gate, true row
    o(1300, 3200LL * v - 845);  // port gate, false row
  }

  // Cell obstacles.
  for (int r = 1; r <= 2 * n; ++r)
    for (int k = 1; k <= geo.columns(); ++k) {
      long long x0 = geo.col_x0(k), y0 = geo.row_y0(r);
      int sigma = out.cols[k - 1].split_row;
      o(x0 + 300, y0 + 300);
      o(x0 + 1300, y0 + 300);
      o(x0 + 300, y0 + 1300);
      o(x0 + 1300, y0 + 1300);
      if (r == sigma)
        o(x0 + 300, y0 + 760);   // split-entry gate
      else
        o(x0 + 200, y0 + 750);   // row-entry gate
      if (k <= geo.columns() - 1) o(x0 + 1500, y0 + 850);  // row-order gate
      if (r >= sigma + 1) o(x0 + 830, y0 + 300);           // column-entry gate
      if (r >= sigma && r <= 2 * n - 1) o(x0 + 750, y0 + 1500);  // column-order gate
      if (r == 2 * n) {
        o(x0 + 728, y0 + 2000);  // top gates for the stalk push
        o(x0 + 784, y0 + 2400);
      }
    }

  // Literal stalk gates and anchors.
  for (int kappa = 1; kappa <= geo.columns(); ++kappa) {
    long long cx = geo.col_cx(kappa);
    int slot = out.cols[kappa - 1].slot;
    o(cx - 15, Y0 - 250);  // raise gate
    o(cx + 10, Y0 - 250);  // tuck gate
    P ag = geo.anchor_gate(kappa, slot);
    o(ag.x, ag.y);
  }

  // Clause gates.
  for (int i = 1; i <= m; ++i) {
    P pl = geo.cl_gate_pl(i), pr = geo.cl_gate_pr(i), gr = geo.cl_gate_r(i);
    o(pl.x, pl.y);
    o(pr.x, pr.y);
    o(gr.x, gr.y);
  }

  // Floor: pinholes only where the construction legitimately crosses.
  {
    std::set<long long> drop;  // unit x-coordinates to omit
    drop.insert(6);
    drop.insert(7);
    drop.insert(8);
    for (int kappa = 1; kappa <= geo.columns(); ++kappa)
      for (long long dx = -2; dx <= 2; ++dx) drop.insert(16LL * kappa + 8 + dx);
    // The clause bridges cross the floor strictly between lattice points
    // (at x = 48i - 32 - 480/251 units, sliding to 48i - 32 - 436/251 during
    // the port advance), so they need no pinholes.
    long long hi = m >= 1 ? 48LL * m + 9 : 9;
    for (long long k = 2; k <= hi; ++k)
      if (!drop.count(k)) o(100 * k, Y0);
  }

  // --- assemble the instance -----------------------------------------------------
  PlaneGraph g;
  g.n = static_cast<int>(base.size());
  g.edges = edges;
  Drawing start(g.n), end(g.n);
  for (int v = 0; v < g.n; ++v) start[v] = to_point(base[v]);
  end = start;
  // Labels advance one seat around the synchronization cycle.
  for (int k = 0; k < 4; ++k)
    end[out.sync[k]] = to_point(geo.seat(k == 3 ? 1 : k + 2));

  g.rotation = derive_rotation(g.n, g.edges, start);
  g.outer_face = outer_walk_index(g, start);
  out.instance.graph = g;
  out.instance.start = start;
  out.instance.end = end;
  out.instance.obstacles.reserve(obs.size());
  for (const P& p : obs) out.instance.obstacles.push_back(to_point(p));

  // --- generation-time self-checks -------------------------------------------------
  req(validate_drawing(g, start).empty(), "start drawing invalid");
  req(validate_drawing(g, end).empty(), "end drawing invalid");
  {
    CompatibilityReport rep = check_necessary_compatibility(out.instance);
    req(rep.ok, "necessary compatibility: " + rep.reason);
  }
  {
    // Connectivity.
    auto adj = g.adjacency();
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          stack.push_back(w);
        }
    }
    req(cnt == g.n, "graph not connected");
  }
  {
    int diff = 0;
    for (int v = 0; v < g.n; ++v)
      if (start[v] != end[v]) ++diff;
    req(diff == 4, "drawings must differ on exactly four vertices");
    std::vector<Point2> a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back(start[out.sync[k]]);
      b.push_back(end[out.sync[k]]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    req(a == b, "seat multiset must be preserved");
  }
  {
    std::vector<int> fv = free_vertices(g, start);
    for (const auto& ids : out.vars)
      req(std::find(fv.begin(), fv.end(), ids.d) != fv.end(),
          "variable middle vertex must be free");
  }
  {
    long long cnt = static_cast<long long>(obs.size());
    long long nm = static_cast<long long>(n) * m;
    req(cnt >= 24 * nm, "too few obstacles");
    req(cnt <= 80 * (nm + n + m + 1) + 160, "too many obstacles");
    // Coordinates stay polynomial in the formula size: O(log(n+m)) bits.
    long long bound = 6400LL * (n + m + 2);
    for (const P& p : obs) req(std::llabs(p.x) <= bound && std::llabs(p.y) <= bound, "obstacle out of range");
    for (const P& p : base) req(std::llabs(p.x) <= bound && std::llabs(p.y) <= bound, "vertex out of range");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness synthesis.

namespace reduction_detail {

// Forward schedule and the indices of the checkpoint drawings probes refer
// to (drawing t is the state after the first t phases).
struct ForwardPlan {
  std::vector<Phase> phases;
  int after_commit = 0;   // variable middles moved
  int after_exit = 0;     // variable anchors exited
  int row_base = 0;       // drawing before the first row-wave phase
  int after_rows = 0;
  int after_cols = 0;
  int after_raise = 0;
  int after_tuck = 0;
};

inline ForwardPlan forward_plan(const ReductionOutput& out, const Assignment& asg) {
  Geometry geo(out.formula);
  const int n = geo.n, m = geo.m;
  ForwardPlan plan;
  if (m == 0 && n == 0) return plan;

  auto val = [&](int v) { return asg.value[v]; };
  auto active_row = [&](int v) { return val(v) ? 2 * v : 2 * v - 1; };

  if (m >= 1) {
    // Commit the variables, then release the row anchors.
    Phase commit, exit;
    for (int v = 1; v <= n; ++v) {
      commit.moves.emplace_back(out.vars[v - 1].d, to_point(geo.var_d_moved(v, val(v))));
      int anchor = val(v) ? out.vars[v - 1].a_top : out.vars[v - 1].a_bot;
      exit.moves.emplace_back(anchor, to_point(geo.var_a_exit(v, val(v))));
    }
    plan.phases.push_back(std::move(commit));
    plan.after_commit = static_cast<int>(plan.phases.size());
    plan.phases.push_back(std::move(exit));
    plan.after_exit = static_cast<int>(plan.phases.size());
    plan.row_base = plan.after_exit;

    // Row waves: ports then centers, column by column, in every active row.
    for (int k = 1; k <= geo.columns(); ++k) {
      Phase ports, centers;
      for (int v = 1; v <= n; ++v) {
        int r = active_row(v);
        ports.moves.emplace_back(out.port[r - 1][k - 1], to_point(geo.port_adv(r, k)));
        bool split = out.cols[k - 1].split_row == r;
        centers.moves.emplace_back(out.center[r - 1][k - 1],
                                   to_point(split ? geo.center_br(r, k) : geo.center_bl(r, k)));
      }
      plan.phases.push_back(std::move(ports));
      plan.phases.push_back(std::move(centers));
    }
    plan.after_rows = static_cast<int>(plan.phases.size());

    // Column waves in every column whose literal is true, then the stalk.
    std::vector<int> true_cols;
    for (int kappa = 1; kappa <= geo.columns(); ++kappa) {
      int lit = out.formula.clauses[out.cols[kappa - 1].clause - 1][out.cols[kappa - 1].slot - 1];
      if (val(std::abs(lit)) == (lit > 0)) true_cols.push_back(kappa);
    }
    // Stage lists run in lockstep; shorter columns simply finish early.
    std::vector<std::vector<std::pair<int, Point2>>> stages;
    for (int kappa : true_cols) {
      int sigma = out.cols[kappa - 1].split_row;
      std::size_t s = 0;
      for (int r = sigma + 1; r <= 2 * n; ++r) {
        if (stages.size() < s + 2) stages.resize(s + 2);
        stages[s].emplace_back(out.bport.at({r, kappa}), to_point(geo.bport_adv(r, kappa)));
        bool active = active_row((r + 1) / 2) == r;
        stages[s + 1].emplace_back(out.center[r - 1][kappa - 1],
                                   to_point(active ? geo.center_br(r, kappa)
                                                   : geo.center_tr(r, kappa)));
        s += 2;
      }
      if (stages.size() < s + 1) stages.resize(s + 1);
      stages[s].emplace_back(out.cols[kappa - 1].r_lit, to_point(geo.lit_r_pushed(kappa)));
    }
    for (auto& st : stages) plan.phases.push_back(Phase{std::move(st)});
    plan.after_cols = static_cast<int>(plan.phases.size());

    // Raise the sliders, tuck the tips.
    Phase raise, tuck;
    for (int kappa : true_cols) {
      raise.moves.emplace_back(out.cols[kappa - 1].s, to_point(geo.lit_s_raised(kappa)));
      tuck.moves.emplace_back(out.cols[kappa - 1].t, to_point(geo.lit_t_tucked(kappa)));
    }
    plan.phases.push_back(std::move(raise));
    plan.after_raise = static_cast<int>(plan.phases.size());
    plan.phases.push_back(std::move(tuck));
    plan.after_tuck = static_cast<int>(plan.phases.size());

    // Clause resolution: drop onto the first true literal, shift the rest
    // out of the way, lower the check vertex.
    Phase drop, shift1, shift2, lower;
    for (int i = 1; i <= m; ++i) {
      int jstar = 0;
      for (int j = 1; j <= 3 && jstar == 0; ++j) {
        int lit = out.formula.clauses[i - 1][j - 1];
        if (val(std::abs(lit)) == (lit > 0)) jstar = j;
      }
      if (jstar == 0) throw std::invalid_argument("assignment does not satisfy the formula");
      int kappa = 3 * (i - 1) + jstar;
      drop.moves.emplace_back(out.cls[i - 1].d[jstar - 1], to_point(geo.plug(kappa, jstar)));
      if (jstar + 1 <= 3)
        shift1.moves.emplace_back(out.cls[i - 1].d[jstar],
                                  to_point(geo.cl_d_displaced(i, jstar + 1)));
      if (jstar + 2 <= 3)
        shift2.moves.emplace_back(out.cls[i - 1].d[jstar + 1],
                                  to_point(geo.cl_d_displaced(i, jstar + 2)));
      lower.moves.emplace_back(out.cls[i - 1].r, to_point(geo.cl_r_lowered(i)));
    }
    plan.phases.push_back(std::move(drop));
    if (!shift1.moves.empty()) plan.phases.push_back(std::move(shift1));
    if (!shift2.moves.empty()) plan.phases.push_back(std::move(shift2));
    plan.phases.push_back(std::move(lower));
  }
  return plan;
}

}  // namespace reduction_detail

inline WitnessBundle synthesize_witness_bundle(const ReductionOutput& out,
                                               const Assignment& asg) {
  using reduction_detail::Geometry;
  using reduction_detail::req;
  using reduction_detail::to_point;

  if (static_cast<int>(asg.value.size()) < out.formula.num_vars + 1)
    throw std::invalid_argument("assignment too short");
  if (!asg.satisfies(out.formula))
    throw std::invalid_argument("assignment does not satisfy the formula");

  Geometry geo(out.formula);
  reduction_detail::ForwardPlan plan = reduction_detail::forward_plan(out, asg);

  WitnessBundle bundle;
  std::vector<Drawing>& ds = bundle.morph.drawings;
  ds.push_back(out.instance.start);
  for (const Phase& ph : plan.phases) {
    Drawing next = ds.back();
    for (const auto& [v, p] : ph.moves) next[v] = p;
    ds.push_back(std::move(next));
  }
  const int fwd = static_cast<int>(ds.size()) - 1;  // phases applied so far

  // Rotate the synchronization cycle: v2 swings out to the waypoint, the
  // others advance one seat, v2 lands on its new seat.
  {
    auto move = [&](int k, reduction_detail::P p) {
      Drawing next = ds.back();
      next[out.sync[k]] = to_point(p);
      ds.push_back(std::move(next));
    };
    move(1, geo.hub());
    move(0, geo.seat(2));
    move(3, geo.seat(1));
    move(2, geo.seat(4));
    move(1, geo.seat(3));
  }

  // Retract: replay the forward boundary drawings backwards with the cycle
  // left in its advanced position.
  for (int t = fwd - 1; t >= 0; --t) {
    Drawing d = ds[t];
    for (int k = 0; k < 4; ++k) d[out.sync[k]] = out.instance.end[out.sync[k]];
    ds.push_back(std::move(d));
  }
  req(ds.back() == out.instance.end, "witness must end at the target drawing");

  // Step budget: linear in the formula size.
  if (out.formula.num_vars + static_cast<int>(out.formula.clauses.size()) >= 1)
    req(bundle.morph.steps() <=
            48 * (out.formula.num_vars + static_cast<int>(out.formula.clauses.size())),
        "witness exceeds the step budget");

  // --- gate probes: out-of-order moves the verifier must reject ----------------
  const int n = geo.n, m = geo.m;
  auto val = [&](int v) { return asg.value[v]; };
  auto active_row = [&](int v) { return val(v) ? 2 * v : 2 * v - 1; };
  auto probe = [&](std::string name, int at, int vertex, reduction_detail::P target) {
    bundle.probes.push_back(GateProbe{std::move(name), at, vertex, to_point(target)});
  };
  if (n >= 1 && m >= 1) {
    const auto& plan_ref = plan;
    probe("variable-exit-gate", 0, val(1) ? out.vars[0].a_top : out.vars[0].a_bot,
          geo.var_a_exit(1, val(1)));
    probe("variable-port-gate", plan_ref.after_commit, out.port[active_row(1) - 1][0],
          geo.port_adv(active_row(1), 1));
    // Row-entry gates: one split and one plain cell if both occur.
    bool have_split = false, have_plain = false;
    for (int k = 1; k <= geo.columns() && !(have_split && have_plain); ++k)
      for (int v = 1; v <= n; ++v) {
        int r = active_row(v);
        bool split = out.cols[k - 1].split_row == r;
        int at = plan_ref.row_base + 2 * (k - 1);
        if (split && !have_split) {
          probe("split-entry-gate", at, out.center[r - 1][k - 1], geo.center_br(r, k));
          have_split = true;
        }
        if (!split && !have_plain) {
          probe("row-entry-gate", at, out.center[r - 1][k - 1], geo.center_bl(r, k));
          have_plain = true;
        }
      }
    if (geo.columns() >= 2)
      probe("row-order-gate", plan_ref.row_base + 1, out.port[active_row(1) - 1][1],
            geo.port_adv(active_row(1), 2));
    // Column-wave gates need a true column with cells above the split row.
    int kc = 0, kcc = 0, kt = 0;
    for (int kappa = 1; kappa <= geo.columns(); ++kappa) {
      int lit = out.formula.clauses[out.cols[kappa - 1].clause - 1][out.cols[kappa - 1].slot - 1];
      if (val(std::abs(lit)) != (lit > 0)) continue;
      int sigma = out.cols[kappa - 1].split_row;
      if (kc == 0 && sigma <= 2 * n - 1) kc = kappa;
      if (kcc == 0 && sigma <= 2 * n - 2) kcc = kappa;
      if (kt == 0) kt = kappa;
    }
    if (kc != 0) {
      int sigma = out.cols[kc - 1].split_row;
      int r = sigma + 1;
      bool active = active_row((r + 1) / 2) == r;
      probe("column-entry-gate", plan_ref.after_rows, out.center[r - 1][kc - 1],
            active ? geo.center_br(r, kc) : geo.center_tr(r, kc));
      probe("top-gate", plan_ref.after_rows, out.cols[kc - 1].r_lit, geo.lit_r_pushed(kc));
    }
    if (kcc != 0) {
      int sigma = out.cols[kcc - 1].split_row;
      probe("column-order-gate", plan_ref.after_rows, out.bport.at({sigma + 2, kcc}),
            geo.bport_adv(sigma + 2, kcc));
    }
    probe("stalk-raise-gate", plan_ref.after_rows, out.cols[kt - 1].s, geo.lit_s_raised(kt));
    probe("stalk-tuck-gate", plan_ref.after_cols, out.cols[kt - 1].t, geo.lit_t_tucked(kt));
    {
      int jstar = 0;
      for (int j = 1; j <= 3 && jstar == 0; ++j) {
        int lit = out.formula.clauses[0][j - 1];
        if (val(std::abs(lit)) == (lit > 0)) jstar = j;
      }
      probe("plug-occupied", plan_ref.after_raise, out.cls[0].d[jstar - 1],
            geo.plug(jstar, jstar));
      probe("clause-or-gate", plan_ref.after_tuck, out.cls[0].r, geo.cl_r_lowered(1));
    }
  }

  // Probes must fail; the witness as a whole is checked by callers/tests,
  // but each probe is cheap enough to confirm at generation time.
  for (const GateProbe& pr : bundle.probes) {
    Drawing from = ds[pr.at_drawing];
    Drawing to = from;
    to[pr.vertex] = pr.target;
    StepReport rep = verify_linear_step(out.instance.graph, from, to, out.instance.obstacles);
    req(!rep.ok, "gate probe unexpectedly legal: " + pr.name);
  }
  return bundle;
}

inline Morph synthesize_witness(const ReductionOutput& out, const Assignment& asg) {
  return synthesize_witness_bundle(out, asg).morph;
}

// ---------------------------------------------------------------------------
// Decision front end.

inline DecideResult decide_and_witness(const CnfFormula& f) {
  DecideResult res;
  std::optional<Assignment> model = dpll_solve(f);
  if (!model) {
    res.satisfiable = false;
    std::ostringstream rep;
    rep << "UNSAT: no satisfying assignment exists; no witness morph produced. "
        << "This verdict certifies only the exhaustive search over assignments; "
        << "it does not certify that no morph exists between the emitted drawings.";
    res.report = rep.str();
    return res;
  }
  res.satisfiable = true;
  res.model = model;
  ReductionOutput out = reduce(f);
  WitnessBundle bundle = synthesize_witness_bundle(out, *model);
  MorphReport mrep = verify_morph(out.instance.graph, bundle.morph, out.instance.obstacles);
  if (!mrep.ok)
    throw std::logic_error("internal error: synthesized witness failed verification at step " +
                           std::to_string(mrep.failing_step));
  res.witness = std::move(bundle.morph);
  std::ostringstream rep;
  rep << "SAT: witness morph with " << res.witness->steps() << " steps verified.";
  res.report = rep.str();
  return res;
}

// Bounded lattice probe over the synchronization cycle alone: at unit pitch
// inside the corridor box the advance-by-one relabeling is unreachable, and
// the search exhausts the state space.
inline GridConfig sync_probe_config(const ReductionOutput& out) {
  reduction_detail::Geometry geo(out.formula);
  GridConfig cfg;
  cfg.origin = {Rational(300), Rational(geo.Y0() + 300)};
  cfg.pitch = Rational(100);
  cfg.width = 4;    // x in [3, 6] layout units
  cfg.height = 27;  // y in [Y0 + 3, Y0 + 29]
  cfg.movable.assign(out.sync.begin(), out.sync.end());
  cfg.any_point = false;
  return cfg;
}

}  // namespace obmorph
