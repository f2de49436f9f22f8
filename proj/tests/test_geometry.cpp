#include <catch2/catch_amalgamated.hpp>

#include "obmorph/drawing.hpp"
#include "obmorph/predicates.hpp"

using namespace obmorph;

namespace {

PlaneGraph make_graph(int n, std::vector<std::pair<int, int>> edges, const Drawing& pos) {
  PlaneGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.rotation = derive_rotation(n, g.edges, pos);
  g.outer_face = outer_walk_index(g, pos);
  return g;
}

Drawing tri_pos() { return {{Rational(0), Rational(0)}, {Rational(4), Rational(0)}, {Rational(0), Rational(4)}}; }

PlaneGraph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {2, 0}}, tri_pos()); }

}  // namespace

TEST_CASE("static predicates") {
  Point2 a{Rational(0), Rational(0)}, b{Rational(4), Rational(0)}, c{Rational(2), Rational(3)};
  CHECK(orientation(a, b, c) == 1);
  CHECK(orientation(a, c, b) == -1);
  CHECK(orientation(a, b, Point2{Rational(7), Rational(0)}) == 0);

  CHECK(on_segment(Point2{Rational(2), Rational(0)}, a, b));
  CHECK(on_segment(a, a, b));
  CHECK(!on_segment(Point2{Rational(5), Rational(0)}, a, b));
  CHECK(!strictly_inside_segment(a, a, b));
  CHECK(strictly_inside_segment(Point2{Rational(1, 3), Rational(0)}, a, b));

  using SR = SegmentRelation;
  Point2 p{Rational(2), Rational(-1)}, q{Rational(2), Rational(1)};
  CHECK(segments_intersect(a, b, p, q) == SR::ProperCrossing);
  CHECK(segments_intersect(a, b, b, c) == SR::Touching);  // shared endpoint
  CHECK(segments_intersect(a, b, Point2{Rational(3), Rational(0)}, Point2{Rational(9), Rational(0)}) ==
        SR::Touching);  // collinear overlap
  CHECK(segments_intersect(a, b, Point2{Rational(2), Rational(0)}, q) == SR::Touching);  // T-contact
  CHECK(segments_intersect(a, b, Point2{Rational(0), Rational(2)}, Point2{Rational(4), Rational(2)}) ==
        SR::Disjoint);
}

TEST_CASE("kinetic orientation polynomial has the expected roots") {
  // a fixed at origin, b = (1+t, t), w = (2t, 1-t): orientation vanishes at
  // t = 1/sqrt(3).
  MovingPoint a = MovingPoint::fixed({Rational(0), Rational(0)});
  MovingPoint b({Rational(1), Rational(0)}, {Rational(2), Rational(1)});
  MovingPoint w({Rational(0), Rational(1)}, {Rational(2), Rational(0)});
  QuadraticPoly f = moving_orientation(a, b, w);
  CHECK(f.c0 == 1);
  CHECK(f.c1 == 0);
  CHECK(f.c2 == -3);
  UnitRoots rr = roots_in_unit_interval(f);
  REQUIRE(rr.roots.size() == 1);
  AlgebraicTime expect = AlgebraicTime::make(Integer(0), Integer(1), Integer(3), Integer(3));
  CHECK(rr.roots[0] == expect);
  CHECK(on_segment_at(w, a, b, rr.roots[0]));
  CHECK(!coincide_at(w, b, rr.roots[0]));
}

TEST_CASE("face traversal orients bounded faces counter-clockwise") {
  PlaneGraph g = triangle();
  Drawing pos = tri_pos();
  // Rotation at the origin: neighbor 1 along +x precedes neighbor 2 along +y.
  CHECK(g.rotation[0] == std::vector<int>{1, 2});

  FaceSet fs = compute_faces(g);
  REQUIRE(fs.walks.size() == 2);
  int pos_walks = 0, neg_walks = 0;
  for (auto& w : fs.walks) {
    REQUIRE(w.size() == 3);
    Rational area = walk_doubled_area(w, pos);
    if (area > 0) ++pos_walks;
    if (area < 0) ++neg_walks;
    CHECK((area == 16 || area == -16));
  }
  CHECK(pos_walks == 1);
  CHECK(neg_walks == 1);
  CHECK(walk_doubled_area(fs.walks[g.outer_face], pos) == -16);
  CHECK(euler_consistent(g));
}

TEST_CASE("faces of K4 and point location") {
  Drawing pos = {{Rational(0), Rational(0)},
                 {Rational(6), Rational(0)},
                 {Rational(3), Rational(5)},
                 {Rational(3), Rational(2)}};
  PlaneGraph g = make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}}, pos);
  CHECK(g.rotation[0] == std::vector<int>{1, 3, 2});
  CHECK(g.rotation[3] == std::vector<int>{2, 0, 1});

  FaceSet fs = compute_faces(g);
  REQUIRE(fs.walks.size() == 4);
  CHECK(euler_consistent(g));
  CHECK(validate_drawing(g, pos).empty());

  // Locate points in each region.
  int f_low = locate_point(g, pos, {Rational(3), Rational(1)});     // triangle 0-1-3
  int f_left = locate_point(g, pos, {Rational(2), Rational(2)});    // triangle 0-3-2
  int f_right = locate_point(g, pos, {Rational(4), Rational(2)});   // triangle 1-2-3
  CHECK(f_low >= 0);
  CHECK(f_left >= 0);
  CHECK(f_right >= 0);
  CHECK(f_low != f_left);
  CHECK(f_left != f_right);
  CHECK(f_low != f_right);
  CHECK(locate_point(g, pos, {Rational(100), Rational(0)}) == kOuterFace);
  CHECK(locate_point(g, pos, {Rational(3), Rational(0)}) == kOnDrawing);   // on edge 0-1
  CHECK(locate_point(g, pos, {Rational(3), Rational(2)}) == kOnDrawing);   // on vertex 3
}

TEST_CASE("point location with nested components") {
  // Triangle with an isolated vertex inside and a separate small triangle
  // inside the big one.
  Drawing pos = {{Rational(-10), Rational(-10)}, {Rational(10), Rational(-10)},
                 {Rational(0), Rational(12)},
                 {Rational(-2), Rational(-2)}, {Rational(2), Rational(-2)},
                 {Rational(0), Rational(2)},
                 {Rational(7), Rational(7)}};
  PlaneGraph g = make_graph(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}, pos);
  CHECK(validate_drawing(g, pos).empty());
  // Inside the small triangle: innermost containing walk wins.
  int f_small = locate_point(g, pos, {Rational(0), Rational(0)});
  int f_ring = locate_point(g, pos, {Rational(5), Rational(-5)});
  REQUIRE(f_small >= 0);
  REQUIRE(f_ring >= 0);
  CHECK(f_small != f_ring);
  FaceSet fs = compute_faces(g);
  CHECK(walk_doubled_area(fs.walks[f_small], pos) < walk_doubled_area(fs.walks[f_ring], pos));
  CHECK(locate_point(g, pos, {Rational(50), Rational(0)}) == kOuterFace);
  // The isolated vertex sits inside the big triangle face.
  CHECK(locate_point(g, pos, pos[6]) == kOnDrawing);
}

TEST_CASE("drawing validation catches defects") {
  PlaneGraph g = triangle();
  Drawing pos = tri_pos();
  CHECK(validate_drawing(g, pos).empty());

  SECTION("coincident vertices") {
    Drawing bad = pos;
    bad[1] = bad[0];
    auto issues = validate_drawing(g, bad);
    bool found = false;
    for (auto& is : issues) found |= (is.kind == "coincident-vertices");
    CHECK(found);
  }
  SECTION("vertex on edge") {
    Drawing bad = pos;
    bad[2] = {Rational(2), Rational(0)};
    auto issues = validate_drawing(g, bad);
    bool found = false;
    for (auto& is : issues) found |= (is.kind == "vertex-on-edge");
    CHECK(found);
  }
  SECTION("edge crossing") {
    Drawing pos4 = {{Rational(0), Rational(0)}, {Rational(4), Rational(0)},
                    {Rational(4), Rational(4)}, {Rational(0), Rational(4)}};
    // Path 0-2 and 1-3 cross.
    PlaneGraph h = make_graph(4, {{0, 2}, {1, 3}}, pos4);
    auto issues = validate_drawing(h, pos4);
    bool found = false;
    for (auto& is : issues) found |= (is.kind == "edge-crossing");
    CHECK(found);
  }
  SECTION("rotation order mismatch at a degree-3 vertex") {
    Drawing spos = {{Rational(0), Rational(0)}, {Rational(2), Rational(0)},
                    {Rational(0), Rational(2)}, {Rational(-2), Rational(0)}};
    PlaneGraph s = make_graph(4, {{0, 1}, {0, 2}, {0, 3}}, spos);
    CHECK(validate_drawing(s, spos).empty());
    std::swap(s.rotation[0][1], s.rotation[0][2]);
    auto issues = validate_drawing(s, spos);
    bool found = false;
    for (auto& is : issues) found |= (is.kind == "rotation-order-mismatch");
    CHECK(found);
  }
  SECTION("rotation must list exactly the neighbors") {
    PlaneGraph h = g;
    h.rotation[0] = {1};
    auto issues = validate_drawing(h, pos);
    REQUIRE(!issues.empty());
    CHECK(issues[0].kind == "rotation-not-neighbor-permutation");
  }
  SECTION("outer face must be the unbounded walk") {
    PlaneGraph h = g;
    FaceSet fs = compute_faces(h);
    h.outer_face = 1 - h.outer_face;
    auto issues = validate_drawing(h, pos);
    bool found = false;
    for (auto& is : issues) found |= (is.kind == "outer-face-not-unbounded");
    CHECK(found);
    h.outer_face = 5;
    issues = validate_drawing(h, pos);
    found = false;
    for (auto& is : issues) found |= (is.kind == "outer-face-out-of-range");
    CHECK(found);
  }
}

TEST_CASE("necessary compatibility of instances") {
  Instance inst;
  inst.graph = triangle();
  inst.start = tri_pos();
  inst.end = tri_pos();
  for (auto& p : inst.end) p = p + Point2{Rational(1), Rational(1)};

  SECTION("obstacle staying in the inner face is compatible") {
    inst.obstacles = {{Rational(3, 2), Rational(3, 2)}};
    auto rep = check_necessary_compatibility(inst);
    CHECK(rep.ok);
    CHECK(rep.face_in_start == rep.face_in_end);
  }
  SECTION("obstacle switching faces is incompatible") {
    // Inside the start triangle, outside the translated end triangle.
    inst.obstacles = {{Rational(1, 4), Rational(1, 4)}};
    auto rep = check_necessary_compatibility(inst);
    CHECK(!rep.ok);
    CHECK(rep.reason == "obstacle-face-mismatch");
  }
  SECTION("obstacle on the drawing is rejected") {
    inst.obstacles = {{Rational(2), Rational(0)}};
    auto rep = check_necessary_compatibility(inst);
    CHECK(!rep.ok);
    CHECK(rep.reason == "obstacle-on-drawing");
  }
  SECTION("invalid endpoint drawings are rejected") {
    inst.obstacles.clear();
    inst.end[1] = inst.end[0];
    auto rep = check_necessary_compatibility(inst);
    CHECK(!rep.ok);
    CHECK(rep.reason == "invalid-end-drawing");
  }
}

TEST_CASE("free vertices and cyclic shift recognition") {
  // Path 0-1-2 with 1 on the segment between its neighbors.
  Drawing ppos = {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(3), Rational(0)}};
  PlaneGraph path;
  path.n = 3;
  path.edges = {{0, 1}, {1, 2}};
  path.rotation = derive_rotation(3, path.edges, ppos);
  CHECK(free_vertices(path, ppos) == std::vector<int>{1});

  // Square cycle, labels advanced by one.
  Drawing sq = {{Rational(0), Rational(0)}, {Rational(2), Rational(0)},
                {Rational(2), Rational(2)}, {Rational(0), Rational(2)}};
  PlaneGraph cyc = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, sq);
  Drawing shifted = {sq[3], sq[0], sq[1], sq[2]};  // pos2[v] = pos1[v-1]
  auto off = is_shifted_version(cyc, sq, shifted);
  REQUIRE(off.has_value());
  // Shifting all labels by the same non-zero cyclic offset.
  CHECK((*off == 1 || *off == 3));
  CHECK(!is_shifted_version(cyc, sq, sq).has_value());
  Drawing other = sq;
  other[0] = {Rational(-1), Rational(-1)};
  CHECK(!is_shifted_version(cyc, sq, other).has_value());
}
