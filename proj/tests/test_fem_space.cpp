#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "thermocq/fem_space.hpp"

using namespace thermocq;

namespace {

// number of Lagrange dofs of degree k on a single triangle
int local_dim(int k) { return (k + 1) * (k + 2) / 2; }

// evaluate the global FE function with coefficients c at reference point p of
// triangle t
double eval_fe(const FESpace& sp, const Eigen::VectorXd& c, int t, const Vec2& ref) {
    const ReferenceElement& el = reference_element(sp.degree());
    Eigen::VectorXd vals;
    el.eval(ref, vals);
    const auto& dofs = sp.element_dofs(t);
    double s = 0.0;
    for (size_t i = 0; i < dofs.size(); ++i) s += c(dofs[i]) * vals(int(i));
    return s;
}

} // namespace

TEST_CASE("reference element is nodal and a partition of unity") {
    for (int k = 1; k <= 5; ++k) {
        const ReferenceElement& el = reference_element(k);
        REQUIRE(el.degree == k);
        REQUIRE(el.dim == local_dim(k));
        REQUIRE(int(el.nodes.size()) == el.dim);

        // nodal: basis i equals one at node i, zero at the others
        Eigen::VectorXd vals;
        for (int j = 0; j < el.dim; ++j) {
            el.eval(el.nodes[size_t(j)], vals);
            for (int i = 0; i < el.dim; ++i)
                CHECK(vals(i) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-11));
        }

        // partition of unity and zero gradient sum at random interior points
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        Eigen::MatrixXd grads;
        for (int trial = 0; trial < 20; ++trial) {
            double a = uni(rng), b = uni(rng);
            if (a + b > 1.0) { a = 1.0 - a; b = 1.0 - b; }
            const Vec2 p{a, b};
            el.eval(p, vals);
            CHECK(vals.sum() == doctest::Approx(1.0).epsilon(1e-13));
            el.eval_grad(p, grads);
            CHECK(grads.col(0).sum() == doctest::Approx(0.0).epsilon(1e-11));
            CHECK(grads.col(1).sum() == doctest::Approx(0.0).epsilon(1e-11));
        }

        // first three nodes are the vertices in order
        CHECK(dist(el.nodes[0], {0.0, 0.0}) == doctest::Approx(0.0));
        CHECK(dist(el.nodes[1], {1.0, 0.0}) == doctest::Approx(0.0));
        CHECK(dist(el.nodes[2], {0.0, 1.0}) == doctest::Approx(0.0));
    }
}

TEST_CASE("dof counts on tiny meshes") {
    const Mesh tri = make_reference_triangle_mesh();
    CHECK(FESpace(tri, 1).num_dofs() == 3);
    CHECK(FESpace(tri, 2).num_dofs() == 6);
    CHECK(FESpace(tri, 3).num_dofs() == 10);

    const Mesh sq = make_unit_square_mesh();
    CHECK(FESpace(sq, 1).num_dofs() == 4);
    // 4 vertices + 5 edges + 0 interior
    CHECK(FESpace(sq, 2).num_dofs() == 4 + 5);
    CHECK(FESpace(sq, 2).num_edges() == 5);
    // k=3: 4 vertices + 2 per edge + 1 interior per triangle
    CHECK(FESpace(sq, 3).num_dofs() == 4 + 2 * 5 + 2);
}

TEST_CASE("element map geometry") {
    const Mesh sq = make_unit_square_mesh().refined();
    const FESpace sp(sq, 1);
    for (int t = 0; t < sq.num_triangles(); ++t) {
        const ElementMap em = sp.element_map(t);
        CHECK(em.det == doctest::Approx(2.0 * sq.triangle_area(t)).epsilon(1e-13));
        // the map carries reference vertices to the triangle's vertices
        const auto& tv = sq.triangles[size_t(t)];
        CHECK(dist(em.to_physical({0, 0}), sq.vertex(tv[0])) == doctest::Approx(0.0));
        CHECK(dist(em.to_physical({1, 0}), sq.vertex(tv[1])) == doctest::Approx(0.0));
        CHECK(dist(em.to_physical({0, 1}), sq.vertex(tv[2])) == doctest::Approx(0.0));
    }

    // pushforward of the gradient: for f(x) = 3x + 5y the physical gradient is
    // (3,5) regardless of the element
    const int t = 0;
    const ElementMap em = sp.element_map(t);
    const Vec2 gref{3.0 * em.B[0][0] + 5.0 * em.B[1][0], 3.0 * em.B[0][1] + 5.0 * em.B[1][1]};
    const Vec2 gphys = em.push_gradient(gref);
    CHECK(gphys.x == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(gphys.y == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("interpolation reproduces degree-k polynomials") {
    const Mesh m = make_unit_square_mesh().refined();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int k = 1; k <= 5; ++k) {
        const FESpace sp(m, k);
        auto f = [k](Vec2 p) {
            // a full-degree polynomial: (x + 2y + 1/3)^k plus lower order
            return std::pow(p.x + 2.0 * p.y + 1.0 / 3.0, k) + p.x - 0.5 * p.y;
        };
        const Eigen::VectorXd c = sp.interpolate(f);
        REQUIRE(c.size() == sp.num_dofs());
        for (int trial = 0; trial < 50; ++trial) {
            double a = uni(rng), b = uni(rng);
            if (a + b > 1.0) { a = 1.0 - a; b = 1.0 - b; }
            const int t = int(rng() % unsigned(m.num_triangles()));
            const Vec2 ref{a, b};
            const Vec2 phys = sp.element_map(t).to_physical(ref);
            CHECK(eval_fe(sp, c, t, ref) == doctest::Approx(f(phys)).epsilon(1e-11));
        }
    }
}

TEST_CASE("global continuity: shared dofs agree across elements") {
    const Mesh m = make_unit_square_mesh().refined();
    for (int k = 1; k <= 3; ++k) {
        const FESpace sp(m, k);
        // each global dof has exactly one coordinate, consistent from the
        // perspective of every element containing it
        const ReferenceElement& el = reference_element(k);
        for (int t = 0; t < m.num_triangles(); ++t) {
            const auto& dofs = sp.element_dofs(t);
            REQUIRE(int(dofs.size()) == el.dim);
            const ElementMap em = sp.element_map(t);
            for (int i = 0; i < el.dim; ++i) {
                const Vec2 expect = em.to_physical(el.nodes[size_t(i)]);
                CHECK(dist(sp.dof_point(dofs[size_t(i)]), expect) ==
                      doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("panel dofs run from v0 to v1 and lie on the panel") {
    const Mesh m = make_regular_polygon_mesh(6).refined();
    const BoundaryMesh bm = extract_boundary(m);
    for (int k = 1; k <= 3; ++k) {
        const FESpace sp(m, k);
        for (const Panel& panel : bm.panels) {
            const std::vector<int> pd = sp.panel_dofs(panel);
            REQUIRE(int(pd.size()) == k + 1);
            // endpoints first and last
            CHECK(dist(sp.dof_point(pd.front()), panel.a) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(dist(sp.dof_point(pd.back()), panel.b) == doctest::Approx(0.0).epsilon(1e-12));
            for (int i = 0; i <= k; ++i) {
                const Vec2 expect = panel.point(double(i) / k);
                CHECK(dist(sp.dof_point(pd[size_t(i)]), expect) ==
                      doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("dof indices are unique per element and cover the space") {
    const Mesh m = make_regular_polygon_mesh(5).refined();
    const FESpace sp(m, 3);
    std::set<int> all;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto& dofs = sp.element_dofs(t);
        std::set<int> local(dofs.begin(), dofs.end());
        CHECK(local.size() == dofs.size());
        all.insert(dofs.begin(), dofs.end());
        for (int d : dofs) {
            CHECK(d >= 0);
            CHECK(d < sp.num_dofs());
        }
    }
    CHECK(int(all.size()) == sp.num_dofs());
}
