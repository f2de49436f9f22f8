#pragma once

// JSON serialization for instances, morphs, and reports, plus deterministic
// SVG rendering of drawings and animated SVG rendering of verified morphs.
// All coordinates travel as canonical rational strings ("num/den", reduced,
// denominator positive); decimals appear only in SVG output.

#include "obmorph/drawing.hpp"
#include "obmorph/reduction.hpp"
#include "obmorph/search.hpp"
#include "obmorph/verifier.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace obmorph {

using Json = nlohmann::json;  // std::map-backed: object keys serialize sorted

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Canonical rational strings.

inline std::string rational_to_string(const Rational& r) {
  std::ostringstream out;
  out << numerator(r) << "/" << denominator(r);
  return out.str();
}

inline Rational parse_rational_str(const std::string& s) {
  std::optional<Rational> r = parse_rational(s);
  if (!r) throw IoError("malformed rational: " + s);
  return *r;
}

inline Json point_to_json(const Point2& p) {
  return Json::array({rational_to_string(p.x), rational_to_string(p.y)});
}

inline Point2 parse_point(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw IoError("point must be a two-element array of rational strings");
  return {parse_rational_str(j[0].get<std::string>()), parse_rational_str(j[1].get<std::string>())};
}

// ---------------------------------------------------------------------------
// Drawings as {"<vertex>": ["x","y"], ...} with decimal string keys.

inline Json drawing_to_json(const Drawing& d) {
  Json out = Json::object();
  for (std::size_t v = 0; v < d.size(); ++v) out[std::to_string(v)] = point_to_json(d[v]);
  return out;
}

inline Drawing parse_drawing(const Json& j, int n) {
  if (!j.is_object()) throw IoError("drawing must be an object keyed by vertex id");
  if (static_cast<int>(j.size()) != n)
    throw IoError("drawing lists " + std::to_string(j.size()) + " vertices, expected " +
                  std::to_string(n));
  Drawing d(n);
  std::vector<bool> seen(n, false);
  for (const auto& [key, val] : j.items()) {
    int v = -1;
    try {
      std::size_t used = 0;
      v = std::stoi(key, &used);
      if (used != key.size()) v = -1;
    } catch (const std::exception&) {
    }
    if (v < 0 || v >= n || seen[v]) throw IoError("bad vertex key in drawing: " + key);
    seen[v] = true;
    d[v] = parse_point(val);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Instances.

inline Json instance_to_json(const Instance& inst) {
  const PlaneGraph& g = inst.graph;
  Json jg = Json::object();
  jg["n"] = g.n;
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  jg["edges"] = edges;
  Json rot = Json::object();
  for (std::size_t v = 0; v < g.rotation.size(); ++v)
    rot[std::to_string(v)] = g.rotation[v];
  jg["rotation"] = rot;
  jg["outer_face"] = g.outer_face;

  Json out = Json::object();
  out["graph"] = jg;
  out["start"] = drawing_to_json(inst.start);
  out["end"] = drawing_to_json(inst.end);
  Json obs = Json::array();
  for (const Point2& p : inst.obstacles) obs.push_back(point_to_json(p));
  out["obstacles"] = obs;
  return out;
}

inline Instance parse_instance(const Json& j) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("start") || !j.contains("end"))
    throw IoError("instance must contain graph, start, end");
  const Json& jg = j.at("graph");
  if (!jg.contains("n") || !jg.at("n").is_number_integer())
    throw IoError("graph.n must be an integer");
  Instance inst;
  PlaneGraph& g = inst.graph;
  g.n = jg.at("n").get<int>();
  if (g.n < 0) throw IoError("graph.n must be non-negative");
  for (const Json& e : jg.value("edges", Json::array())) {
    if (!e.is_array() || e.size() != 2) throw IoError("edge must be a pair");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 0 || u >= g.n || v < 0 || v >= g.n || u == v) throw IoError("edge out of range");
    g.edges.emplace_back(u, v);
  }
  inst.start = parse_drawing(j.at("start"), g.n);
  inst.end = parse_drawing(j.at("end"), g.n);
  if (jg.contains("rotation") && !jg.at("rotation").empty()) {
    g.rotation.assign(g.n, {});
    for (const auto& [key, val] : jg.at("rotation").items()) {
      int v = std::stoi(key);
      if (v < 0 || v >= g.n) throw IoError("rotation key out of range: " + key);
      g.rotation[v] = val.get<std::vector<int>>();
    }
  } else {
    g.rotation = derive_rotation(g.n, g.edges, inst.start);
  }
  g.outer_face = jg.contains("outer_face") ? jg.at("outer_face").get<int>()
                                           : outer_walk_index(g, inst.start);
  for (const Json& p : j.value("obstacles", Json::array()))
    inst.obstacles.push_back(parse_point(p));
  return inst;
}

// ---------------------------------------------------------------------------
// Morphs: {"steps": [drawing, drawing, ...]} listing every boundary drawing.

inline Json morph_to_json(const Morph& m) {
  Json steps = Json::array();
  for (const Drawing& d : m.drawings) steps.push_back(drawing_to_json(d));
  Json out = Json::object();
  out["steps"] = steps;
  return out;
}

inline Morph parse_morph(const Json& j, int n) {
  if (!j.is_object() || !j.contains("steps") || !j.at("steps").is_array())
    throw IoError("morph must contain a steps array");
  Morph m;
  for (const Json& d : j.at("steps")) m.drawings.push_back(parse_drawing(d, n));
  if (m.drawings.empty()) throw IoError("morph must contain at least one drawing");
  return m;
}

// ---------------------------------------------------------------------------
// Reports.

inline Json algebraic_time_to_json(const AlgebraicTime& t) {
  Json out = Json::object();
  out["p"] = t.p.str();
  out["q"] = t.q.str();
  out["r"] = t.r.str();
  out["d"] = t.d.str();
  return out;
}

inline Json violation_to_json(const Violation& v) {
  Json out = Json::object();
  out["kind"] = violation_kind_name(v.kind);
  out["time"] = algebraic_time_to_json(v.time);
  out["entities"] = Json::array({v.a, v.b, v.c});
  out["detail"] = v.detail;
  return out;
}

inline Json morph_report_to_json(const MorphReport& rep) {
  Json out = Json::object();
  out["ok"] = rep.ok;
  if (!rep.ok) {
    out["failing_step"] = rep.failing_step;
    if (rep.violation) out["violation"] = violation_to_json(*rep.violation);
  }
  return out;
}

inline Json search_result_to_json(const SearchResult& sr) {
  Json out = Json::object();
  out["found"] = sr.found;
  out["states_explored"] = sr.states_explored;
  out["frontier_peak"] = sr.frontier_peak;
  out["pitch"] = rational_to_string(sr.pitch);
  if (!sr.found)
    out["note"] =
        "not found at this resolution; this exhausts the probed lattice only "
        "and is not a certificate that no morph exists";
  return out;
}

inline Json role_map_to_json(const ReductionOutput& out) {
  Json roles = Json::object();
  for (const auto& [v, label] : out.role) roles[std::to_string(v)] = label;
  Json j = Json::object();
  j["scale"] = out.scale;
  j["sync"] = out.sync;
  j["roles"] = roles;
  return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Rendering.

struct RenderSpec {
  int canvas_w = 800, canvas_h = 800;
  double edge_width = 2.0, glyph_width = 1.5;
  int frames_per_step = 20;
  bool show_obstacles = true;
  bool show_labels = false;

  void check() const {
    if (canvas_w <= 0 || canvas_h <= 0)
      throw std::invalid_argument("RenderSpec: canvas dimensions must be positive");
    if (frames_per_step < 1)
      throw std::invalid_argument("RenderSpec: frames_per_step must be at least 1");
  }
};

namespace io_detail {

// Decimal with 12 significant digits; plenty for display, never used in
// decision paths.
inline std::string dec(const Rational& r) {
  std::ostringstream out;
  out << std::setprecision(12) << r.convert_to<double>();
  return out.str();
}

inline std::string dec(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

struct Frame {
  Rational min_x, min_y, max_x, max_y, span;
  int w, h;
  std::pair<std::string, std::string> map(const Point2& p) const {
    Rational x = Rational(w) * (p.x - min_x) / span;
    Rational y = Rational(h) - Rational(h) * (p.y - min_y) / span;
    return {dec(x), dec(y)};
  }
  std::pair<double, double> mapd(const Point2& p) const {
    Rational x = Rational(w) * (p.x - min_x) / span;
    Rational y = Rational(h) - Rational(h) * (p.y - min_y) / span;
    return {x.convert_to<double>(), y.convert_to<double>()};
  }
};

inline Frame make_frame(const std::vector<const Drawing*>& drawings, const ObstacleSet& obstacles,
                        const RenderSpec& spec) {
  Frame f;
  bool first = true;
  auto fold = [&](const Point2& p) {
    if (first) {
      f.min_x = f.max_x = p.x;
      f.min_y = f.max_y = p.y;
      first = false;
      return;
    }
    f.min_x = std::min(f.min_x, p.x);
    f.max_x = std::max(f.max_x, p.x);
    f.min_y = std::min(f.min_y, p.y);
    f.max_y = std::max(f.max_y, p.y);
  };
  for (const Drawing* d : drawings)
    for (const Point2& p : *d) fold(p);
  for (const Point2& p : obstacles) fold(p);
  if (first) {
    f.min_x = f.min_y = Rational(0);
    f.max_x = f.max_y = Rational(1);
  }
  Rational margin = std::max(Rational(1), Rational(1, 20) * (f.max_x - f.min_x));
  f.min_x -= margin;
  f.max_x += margin;
  f.min_y -= margin;
  f.max_y += margin;
  f.span = std::max(f.max_x - f.min_x, f.max_y - f.min_y);
  if (f.span == 0) f.span = Rational(1);
  f.w = spec.canvas_w;
  f.h = spec.canvas_h;
  return f;
}

// Cross glyph: two diagonal strokes centered on the obstacle.
inline void emit_obstacle_crosses(std::ostringstream& svg, const Frame& fr,
                                  const ObstacleSet& obstacles, const RenderSpec& spec) {
  if (!spec.show_obstacles) return;
  for (const Point2& p : obstacles) {
    auto [x, y] = fr.mapd(p);
    svg << "  <g class=\"obstacle\" stroke=\"#c0392b\" stroke-width=\"" << dec(spec.glyph_width)
        << "\"><line x1=\"" << dec(x - 4) << "\" y1=\"" << dec(y - 4) << "\" x2=\"" << dec(x + 4)
        << "\" y2=\"" << dec(y + 4) << "\" /><line x1=\"" << dec(x - 4) << "\" y1=\""
        << dec(y + 4) << "\" x2=\"" << dec(x + 4) << "\" y2=\"" << dec(y - 4) << "\" /></g>\n";
  }
}

}  // namespace io_detail

inline std::string render_drawing(const PlaneGraph& g, const Drawing& d,
                                  const ObstacleSet& obstacles, const RenderSpec& spec = {}) {
  spec.check();
  if (static_cast<int>(d.size()) != g.n)
    throw std::invalid_argument("render_drawing: drawing size mismatch");
  using io_detail::dec;
  io_detail::Frame fr = io_detail::make_frame({&d}, obstacles, spec);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.w << "\" height=\"" << fr.h
      << "\" viewBox=\"0 0 " << fr.w << " " << fr.h << "\">\n";
  for (const auto& [u, v] : g.edges) {
    auto [x1, y1] = fr.map(d[u]);
    auto [x2, y2] = fr.map(d[v]);
    svg << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" stroke=\"#2c3e50\" stroke-width=\"" << dec(spec.edge_width) << "\" />\n";
  }
  for (int v = 0; v < g.n; ++v) {
    auto [x, y] = fr.map(d[v]);
    svg << "  <circle cx=\"" << x << "\" cy=\"" << y
        << "\" r=\"3\" fill=\"#2c3e50\" />\n";
    if (spec.show_labels)
      svg << "  <text x=\"" << x << "\" y=\"" << y
          << "\" dx=\"5\" dy=\"-5\" font-size=\"10\">" << v << "</text>\n";
  }
  io_detail::emit_obstacle_crosses(svg, fr, obstacles, spec);
  svg << "</svg>\n";
  return svg.str();
}

// Animated SVG of a morph.  The morph must verify against the given graph
// and obstacles; unverified morphs are refused.
inline std::string render_morph(const PlaneGraph& g, const Morph& m, const ObstacleSet& obstacles,
                                const RenderSpec& spec = {}) {
  spec.check();
  if (m.drawings.empty()) throw std::invalid_argument("render_morph: empty morph");
  if (m.drawings.size() == 1) return render_drawing(g, m.drawings[0], obstacles, spec);
  MorphReport rep = verify_morph(g, m, obstacles);
  if (!rep.ok)
    throw std::invalid_argument("render_morph: refusing to render an unverified morph (step " +
                                std::to_string(rep.failing_step) + " fails)");

  using io_detail::dec;
  std::vector<const Drawing*> all;
  for (const Drawing& d : m.drawings) all.push_back(&d);
  io_detail::Frame fr = io_detail::make_frame(all, obstacles, spec);
  const int steps = m.steps();
  const double dur = static_cast<double>(steps) * spec.frames_per_step / 20.0;

  // keyTimes breaks at step boundaries; values interpolate linearly inside
  // each step, matching the morph's semantics.
  std::string key_times;
  for (int t = 0; t <= steps; ++t) {
    if (t) key_times += ';';
    key_times += dec(static_cast<double>(t) / steps);
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.w << "\" height=\"" << fr.h
      << "\" viewBox=\"0 0 " << fr.w << " " << fr.h << "\">\n";
  io_detail::emit_obstacle_crosses(svg, fr, obstacles, spec);
  auto animate = [&](const char* attr, auto get) {
    std::string vals;
    for (std::size_t t = 0; t < m.drawings.size(); ++t) {
      if (t) vals += ';';
      vals += get(m.drawings[t]);
    }
    svg << "<animate attributeName=\"" << attr << "\" dur=\"" << dec(dur)
        << "s\" repeatCount=\"indefinite\" calcMode=\"linear\" keyTimes=\"" << key_times
        << "\" values=\"" << vals << "\" />";
  };
  for (const auto& [u, v] : g.edges) {
    auto [x1, y1] = fr.map(m.drawings[0][u]);
    auto [x2, y2] = fr.map(m.drawings[0][v]);
    svg << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" stroke=\"#2c3e50\" stroke-width=\"" << dec(spec.edge_width) << "\">";
    animate("x1", [&](const Drawing& d) { return fr.map(d[u]).first; });
    animate("y1", [&](const Drawing& d) { return fr.map(d[u]).second; });
    animate("x2", [&](const Drawing& d) { return fr.map(d[v]).first; });
    animate("y2", [&](const Drawing& d) { return fr.map(d[v]).second; });
    svg << "</line>\n";
  }
  for (int v = 0; v < g.n; ++v) {
    auto [x, y] = fr.map(m.drawings[0][v]);
    svg << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"#2c3e50\">";
    animate("cx", [&](const Drawing& d) { return fr.map(d[v]).first; });
    animate("cy", [&](const Drawing& d) { return fr.map(d[v]).second; });
    svg << "</circle>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace obmorph
