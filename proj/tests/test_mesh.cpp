#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "thermocq/mesh.hpp"

using namespace thermocq;

namespace {

double signed_area(const Mesh& m, int t) {
    const Vec2 a = m.vertex(m.triangles[size_t(t)][0]);
    const Vec2 b = m.vertex(m.triangles[size_t(t)][1]);
    const Vec2 c = m.vertex(m.triangles[size_t(t)][2]);
    return 0.5 * (b - a).cross(c - a);
}

} // namespace

TEST_CASE("reference triangle mesh") {
    const Mesh m = make_reference_triangle_mesh();
    CHECK(m.num_vertices() == 3);
    CHECK(m.num_triangles() == 1);
    CHECK(m.boundary_edges.size() == 3);
    CHECK(m.total_area() == doctest::Approx(0.5).epsilon(1e-14));
    const BoundaryMesh bm = extract_boundary(m);
    CHECK(bm.num_panels() == 3);
    CHECK(bm.num_loops() == 1);
    CHECK(bm.perimeter() == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m.h() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("unit square mesh geometry") {
    const Mesh m = make_unit_square_mesh();
    CHECK(m.num_vertices() == 4);
    CHECK(m.num_triangles() == 2);
    CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
    const BoundaryMesh bm = extract_boundary(m);
    CHECK(bm.num_panels() == 4);
    CHECK(bm.perimeter() == doctest::Approx(4.0).epsilon(1e-14));

    for (const Panel& p : bm.panels) {
        CHECK(p.length == doctest::Approx(1.0).epsilon(1e-14));
        // unit tangent from a to b, normal is the tangent rotated -90deg
        CHECK(p.tangent.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(p.normal.x == doctest::Approx(p.tangent.y).epsilon(1e-14));
        CHECK(p.normal.y == doctest::Approx(-p.tangent.x).epsilon(1e-14));
        CHECK(dist(p.point(0.0), p.a) == doctest::Approx(0.0));
        CHECK(dist(p.point(1.0), p.b) == doctest::Approx(0.0));
        CHECK(dist(p.point(0.5), p.midpoint()) == doctest::Approx(0.0));

        // outward normal: stepping along it leaves the solid
        const Vec2 out = p.midpoint() + 1e-3 * p.normal;
        const Vec2 in = p.midpoint() - 1e-3 * p.normal;
        CHECK(!inside_solid(bm, out));
        CHECK(inside_solid(bm, in));
    }

    // each side of the square shows up exactly once
    std::multiset<double> mids;
    for (const Panel& p : bm.panels) mids.insert(p.midpoint().x + 10.0 * p.midpoint().y);
    CHECK(mids.size() == 4);
    CHECK(mids.count(0.5) == 1);          // bottom (0.5, 0)
    CHECK(mids.count(1.0 + 5.0) == 1);    // right (1, 0.5)
    CHECK(mids.count(0.5 + 10.0) == 1);   // top (0.5, 1)
    CHECK(mids.count(5.0) == 1);          // left (0, 0.5)
}

TEST_CASE("red refinement counts and invariants") {
    const Mesh tri = make_reference_triangle_mesh();
    const Mesh tri1 = tri.refined();
    CHECK(tri1.num_triangles() == 4);
    CHECK(tri1.num_vertices() == 6);
    CHECK(tri1.boundary_edges.size() == 6);
    CHECK(tri1.total_area() == doctest::Approx(tri.total_area()).epsilon(1e-14));
    CHECK(extract_boundary(tri1).perimeter() ==
          doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(tri1.h() == doctest::Approx(0.5 * tri.h()).epsilon(1e-14));
    for (int t = 0; t < tri1.num_triangles(); ++t) CHECK(signed_area(tri1, t) > 0.0);

    const Mesh sq1 = make_unit_square_mesh().refined();
    CHECK(sq1.num_triangles() == 8);
    CHECK(sq1.num_vertices() == 9);
    CHECK(sq1.total_area() == doctest::Approx(1.0).epsilon(1e-14));

    // two rounds: growth is exactly 4x triangles per round
    const Mesh sq2 = sq1.refined();
    CHECK(sq2.num_triangles() == 32);
    CHECK(extract_boundary(sq2).perimeter() == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("parse_mesh reorients clockwise triangles and warns") {
    const std::string text =
        "3 1 0\n"
        "0 0\n"
        "1 0\n"
        "0 1\n"
        "0 2 1\n"; // clockwise
    const Mesh m = parse_mesh(text);
    REQUIRE(m.num_triangles() == 1);
    CHECK(signed_area(m, 0) > 0.0);
    REQUIRE(m.warnings.size() == 1);
    CHECK(m.warnings[0].find("reoriented") != std::string::npos);
    // boundary was omitted: it is rederived from the triangle
    CHECK(m.boundary_edges.size() == 3);
}

TEST_CASE("parse_mesh accepts comments and explicit boundary") {
    const std::string text =
        "# a one-triangle mesh\n"
        "3 1 3\n"
        "0 0\n"
        "1 0   # second vertex\n"
        "0 1\n"
        "0 1 2\n"
        "0 1\n"
        "1 2\n"
        "2 0\n";
    const Mesh m = parse_mesh(text);
    CHECK(m.num_vertices() == 3);
    CHECK(m.boundary_edges.size() == 3);
    CHECK(m.warnings.empty());
}

TEST_CASE("mesh error handling") {
    CHECK_THROWS_AS(load_mesh("/nonexistent/path.mesh"), std::runtime_error);
    CHECK_THROWS_AS(make_regular_polygon_mesh(2), std::runtime_error);
    CHECK_THROWS_AS(parse_mesh("not a mesh"), std::runtime_error);
}

TEST_CASE("regular polygon mesh") {
    const Mesh hex = make_regular_polygon_mesh(6);
    const BoundaryMesh bm = extract_boundary(hex);
    CHECK(bm.num_panels() == 6);
    // radius 1: side length 2 sin(pi/6) = 1, area (n/2) sin(2 pi/n)
    CHECK(bm.perimeter() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(hex.total_area() == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(inside_solid(bm, {0.0, 0.0}));
    CHECK(!inside_solid(bm, {2.0, 0.0}));
    // distance from the center equals the apothem cos(pi/6)
    CHECK(distance_to_boundary(bm, {0.0, 0.0}) ==
          doctest::Approx(std::cos(M_PI / 6.0)).epsilon(1e-12));

    const Mesh pent = make_regular_polygon_mesh(5, 2.0, {1.0, -1.0});
    CHECK(extract_boundary(pent).perimeter() ==
          doctest::Approx(5.0 * 2.0 * 2.0 * std::sin(M_PI / 5.0)).epsilon(1e-12));
    CHECK(inside_solid(extract_boundary(pent), {1.0, -1.0}));
}

TEST_CASE("panel ordering around the loop") {
    const Mesh hex = make_regular_polygon_mesh(6).refined();
    const BoundaryMesh bm = extract_boundary(hex);
    REQUIRE(bm.num_loops() == 1);
    const int n = bm.num_panels();
    CHECK(n == 12);
    for (int p = 0; p < n; ++p) {
        CHECK(bm.prev_panel(bm.next_panel(p)) == p);
        // consecutive panels share their endpoint
        const Panel& cur = bm.panels[size_t(p)];
        const Panel& nxt = bm.panels[size_t(bm.next_panel(p))];
        CHECK(cur.v1 == nxt.v0);
        CHECK(dist(cur.b, nxt.a) == doctest::Approx(0.0));
    }
    // walking next_panel visits every panel exactly once
    int p = 0;
    std::set<int> seen;
    for (int i = 0; i < n; ++i) {
        seen.insert(p);
        p = bm.next_panel(p);
    }
    CHECK(p == 0);
    CHECK(int(seen.size()) == n);
}

TEST_CASE("distance to boundary on the unit square") {
    const BoundaryMesh bm = extract_boundary(make_unit_square_mesh());
    CHECK(distance_to_boundary(bm, {0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(distance_to_boundary(bm, {0.25, 0.5}) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(distance_to_boundary(bm, {2.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(distance_to_boundary(bm, {0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("shipped meshes load cleanly") {
    const Mesh hex = load_mesh(std::string(THERMOCQ_DATA_DIR) + "/hexagon.mesh");
    CHECK(hex.num_triangles() > 0);
    CHECK(hex.warnings.empty());
    const BoundaryMesh hb = extract_boundary(hex);
    CHECK(hb.num_panels() == 12);
    CHECK(hb.num_loops() == 1);
    for (const Panel& p : hb.panels) {
        CHECK(!inside_solid(hb, p.midpoint() + 1e-4 * p.normal));
        CHECK(inside_solid(hb, p.midpoint() - 1e-4 * p.normal));
    }

    const Mesh pent = load_mesh(std::string(THERMOCQ_DATA_DIR) + "/pentagon.mesh");
    CHECK(pent.num_triangles() > 0);
    CHECK(pent.warnings.empty());
    CHECK(extract_boundary(pent).num_loops() == 1);
}
