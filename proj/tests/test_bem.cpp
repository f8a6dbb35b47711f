#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "thermocq/bem.hpp"
#include "thermocq/scenarios.hpp"

using namespace thermocq;

namespace {

int find_panel(const BoundaryMesh& bm, Vec2 midpoint) {
    for (int p = 0; p < bm.num_panels(); ++p)
        if (dist(bm.panels[size_t(p)].midpoint(), midpoint) < 1e-12) return p;
    REQUIRE(false);
    return -1;
}

double rel_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

// local shape evaluation from monomial coefficients
double eval_shape(const std::vector<double>& coeff, double t) {
    double s = 0.0, tn = 1.0;
    for (double c : coeff) {
        s += c * tn;
        tn *= t;
    }
    return s;
}

} // namespace

TEST_CASE("trace space numbering and nodal bases") {
    const Mesh hex = make_regular_polygon_mesh(6);
    const BoundaryMesh bm = extract_boundary(hex);
    for (int k = 1; k <= 3; ++k) {
        const BoundarySpaces sp(bm, k);
        CHECK(sp.degree() == k);
        CHECK(sp.num_y_dofs() == 6 * k);
        CHECK(sp.num_x_dofs() == 6 * k);

        for (int p = 0; p < bm.num_panels(); ++p) {
            const Panel& panel = bm.panels[size_t(p)];
            const auto& yd = sp.y_panel_dofs(p);
            REQUIRE(int(yd.size()) == k + 1);
            // consecutive dofs around the loop with wraparound at the seam
            CHECK(yd.front() == p * k);
            CHECK(yd.back() == ((p + 1) * k) % (6 * k));
            // nodal points: equispaced from panel.a to panel.b
            for (int j = 0; j <= k; ++j)
                CHECK(dist(sp.y_dof_point(yd[size_t(j)]), panel.point(double(j) / k)) <= 1e-13);

            const auto xd = sp.x_panel_dofs(p);
            REQUIRE(int(xd.size()) == k);
            for (int j = 0; j < k; ++j) {
                CHECK(xd[size_t(j)] == p * k + j);
                // X nodes are interior to the panel (discontinuous space)
                const Vec2 q = sp.x_dof_point(xd[size_t(j)]);
                const double t = dot(q - panel.a, panel.tangent) / panel.length;
                CHECK(t > 1e-6);
                CHECK(t < 1.0 - 1e-6);
            }
        }

        // interpolation of a linear function is reproduced by the local bases
        auto f = [](Vec2 p) { return Complex(2.0 * p.x - p.y + 0.25); };
        const Eigen::VectorXcd cy = sp.interpolate_y(f);
        const Eigen::VectorXcd cx = sp.interpolate_x(f);
        for (int p = 0; p < bm.num_panels(); ++p) {
            const Panel& panel = bm.panels[size_t(p)];
            for (double t : {0.12, 0.5, 0.87}) {
                Complex vy(0.0), vx(0.0);
                const auto& yd = sp.y_panel_dofs(p);
                for (size_t j = 0; j < yd.size(); ++j)
                    vy += cy(yd[j]) * eval_shape(sp.y_basis()[j], t);
                const auto xd = sp.x_panel_dofs(p);
                for (size_t j = 0; j < xd.size(); ++j)
                    vx += cx(xd[j]) * eval_shape(sp.x_basis()[j], t);
                const Complex want = f(panel.point(t));
                CHECK(std::abs(vy - want) <= 1e-12);
                if (k >= 2) CHECK(std::abs(vx - want) <= 1e-12);
            }
        }
    }
}

TEST_CASE("single layer entries match independent quadrature oracles") {
    // unit square, k = 1: X dofs are one constant per unit-length panel, so
    // V entries are double integrals of K0(zeta r)/2pi over panel pairs,
    // computed here against 25-digit reference values
    const Mesh sq = make_unit_square_mesh();
    const BoundaryMesh bm = extract_boundary(sq);
    const BoundarySpaces sp(bm, 1);
    const int bottom = find_panel(bm, {0.5, 0.0});
    const int right = find_panel(bm, {1.0, 0.5});
    const int top = find_panel(bm, {0.5, 1.0});

    struct Oracle {
        Complex zeta, diag, opp, adj;
    };
    const Oracle cases[] = {
        {Complex(1.0, 0.0), Complex(0.26878630425116559379, 0.0),
         Complex(0.060604403702960281972, 0.0), Complex(0.1116901245616387135, 0.0)},
        {Complex(1.0, 3.0), Complex(0.081971916306977422602, -0.1283072899835764114),
         Complex(-0.028370668137199340657, 0.02147543191800804331),
         Complex(-0.030527254942946284404, -0.030771490685085163215)},
    };
    for (const Oracle& o : cases) {
        const CalderonMatrices cal = assemble_calderon(sp, o.zeta);
        CAPTURE(o.zeta.real());
        CAPTURE(o.zeta.imag());
        for (int p = 0; p < 4; ++p)
            CHECK(std::abs(cal.V(p, p) - o.diag) <= 1e-8 * std::abs(o.diag));
        CHECK(std::abs(cal.V(bottom, top) - o.opp) <= 1e-8 * std::abs(o.opp));
        CHECK(std::abs(cal.V(bottom, right) - o.adj) <= 1e-7 * std::abs(o.adj));
        // V is complex-symmetric
        CHECK(rel_diff(cal.V.transpose(), cal.V) <= 1e-12);
    }
}

TEST_CASE("operator symmetries on a refined polygon") {
    const Mesh hex = make_regular_polygon_mesh(6).refined();
    const BoundaryMesh bm = extract_boundary(hex);
    for (int k : {1, 2})
        for (Complex s : {Complex(0.0, 2.8), Complex(1.0, 3.0)}) {
            const BoundarySpaces sp(bm, k);
            const CalderonMatrices cal = assemble_calderon(sp, s);
            CAPTURE(k);
            CAPTURE(s.real());
            CAPTURE(s.imag());
            // V and W are complex-symmetric (unconjugated transpose)
            CHECK(rel_diff(cal.V.transpose(), cal.V) <= 1e-12);
            CHECK(rel_diff(cal.W.transpose(), cal.W) <= 1e-12);
            // the adjoint double layer is assembled independently, yet must
            // be the transpose pairing of K
            CHECK((cal.Kp - cal.K.transpose()).cwiseAbs().maxCoeff() <=
                  1e-10 * cal.K.cwiseAbs().maxCoeff());
            CHECK(cal.V.rows() == sp.num_x_dofs());
            CHECK(cal.K.rows() == sp.num_x_dofs());
            CHECK(cal.K.cols() == sp.num_y_dofs());
            CHECK(cal.W.rows() == sp.num_y_dofs());
        }
}

TEST_CASE("assembly is stable under cranked-up quadrature options") {
    const Mesh hex = make_regular_polygon_mesh(6).refined();
    const BoundarySpaces sp(extract_boundary(hex), 2);
    const Complex s(0.0, 2.8);
    const CalderonMatrices base = assemble_calderon(sp, s);
    BemQuadratureOptions crank;
    crank.gauss_regular = 8;
    crank.gauss_adjacent = 7;
    crank.gauss_log = 14;
    crank.max_subdivision = 20;
    const CalderonMatrices fine = assemble_calderon(sp, s, crank);
    CHECK(rel_diff(base.V, fine.V) <= 1e-6);
    CHECK(rel_diff(base.K, fine.K) <= 1e-6);
    CHECK(rel_diff(base.W, fine.W) <= 1e-6);
}

TEST_CASE("pair skipping zeroes far blocks at strongly damped frequencies") {
    const Mesh sq = make_unit_square_mesh();
    const BoundaryMesh bm = extract_boundary(sq);
    const BoundarySpaces sp(bm, 1);
    const int bottom = find_panel(bm, {0.5, 0.0});
    const int top = find_panel(bm, {0.5, 1.0});
    // Re(zeta) * distance = 60 > default cutoff 45: the kernel magnitude
    // e^-60 is below roundoff relative to the diagonal, the entry is dropped
    const CalderonMatrices cal = assemble_calderon(sp, Complex(60.0, 5.0));
    CHECK(std::abs(cal.V(bottom, top)) == 0.0);
    // while the self entry stays finite
    CHECK(std::abs(cal.V(bottom, bottom)) > 0.0);
}

TEST_CASE("duality and Gram matrices") {
    const Mesh hex = make_regular_polygon_mesh(6).refined();
    const BoundaryMesh bm = extract_boundary(hex);
    for (int k : {1, 2}) {
        const BoundarySpaces sp(bm, k);
        const Eigen::MatrixXd myx = assemble_cross_mass(sp);
        CHECK(myx.rows() == sp.num_y_dofs());
        CHECK(myx.cols() == sp.num_x_dofs());
        // both nodal bases sum to one, so the total mass is the perimeter
        const double perim = bm.perimeter();
        CHECK(myx.sum() == doctest::Approx(perim).epsilon(1e-12));
        // entries vanish unless the X dof's panel touches the Y dof
        for (int j = 0; j < sp.num_x_dofs(); ++j) {
            const int p = j / k;
            const auto& yd = sp.y_panel_dofs(p);
            for (int i = 0; i < sp.num_y_dofs(); ++i) {
                const bool touches = std::find(yd.begin(), yd.end(), i) != yd.end();
                if (!touches) CHECK(myx(i, j) == 0.0);
            }
        }

        const Eigen::MatrixXd my = assemble_y_mass(sp);
        CHECK(my.sum() == doctest::Approx(perim).epsilon(1e-12));
        CHECK((my - my.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(my);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("projections agree with closed-form boundary integrals") {
    const Mesh hex = make_regular_polygon_mesh(6).refined();
    const BoundaryMesh bm = extract_boundary(hex);
    const BoundarySpaces sp(bm, 2);
    const double perim = bm.perimeter();

    const Eigen::VectorXcd px = project_onto_x(sp, [](Vec2) { return Complex(1.0); });
    CHECK(px.sum().real() == doctest::Approx(perim).epsilon(1e-12));
    const Eigen::VectorXcd py = project_onto_y(sp, [](Vec2) { return Complex(1.0); });
    CHECK(py.sum().real() == doctest::Approx(perim).epsilon(1e-12));

    // divergence theorem: integral of n over a closed loop vanishes
    const Eigen::VectorXcd pnx =
        project_onto_y_n(sp, [](Vec2, Vec2 n) { return Complex(n.x); });
    const Eigen::VectorXcd pny =
        project_onto_y_n(sp, [](Vec2, Vec2 n) { return Complex(n.y); });
    CHECK(std::abs(pnx.sum()) <= 1e-13 * perim);
    CHECK(std::abs(pny.sum()) <= 1e-13 * perim);

    // and integral of x . n over the loop is twice the enclosed area
    const Eigen::VectorXcd pxn =
        project_onto_y_n(sp, [](Vec2 x, Vec2 n) { return Complex(dot(x, n)); });
    const Mesh hex0 = make_regular_polygon_mesh(6);
    CHECK(pxn.sum().real() == doctest::Approx(2.0 * hex0.total_area()).epsilon(1e-12));
}

TEST_CASE("Green representation: interior silence, exterior reconstruction") {
    const Complex s(0.0, 2.8);
    Mesh hex = make_regular_polygon_mesh(6).refined().refined();
    const BoundaryMesh bm = extract_boundary(hex);
    const BoundarySpaces sp(bm, 2);
    const Eigen::VectorXcd phi =
        sp.interpolate_y([s](Vec2 p) { return exterior_v_freq(p, s); });
    Eigen::VectorXcd lam(sp.num_x_dofs());
    for (int i = 0; i < sp.num_x_dofs(); ++i)
        lam(i) =
            exterior_dnv_freq(sp.x_dof_point(i), bm.panels[size_t(i / 2)].normal, s);

    // inside the scatterer the representation cancels to discretization error
    const double scale = std::abs(exterior_v_freq({1.3, 0.0}, s));
    for (Vec2 p : {Vec2{0.0, 0.0}, Vec2{0.4, 0.2}, Vec2{-0.3, -0.4}}) {
        const Complex r = eval_double_layer(sp, s, phi, p) - eval_single_layer(sp, s, lam, p);
        CHECK(std::abs(r) <= 1e-4 * scale);
    }
    // outside it reconstructs the field
    for (Vec2 p : {Vec2{1.4, 0.3}, Vec2{-0.2, 1.6}}) {
        const Complex got =
            eval_double_layer(sp, s, phi, p) - eval_single_layer(sp, s, lam, p);
        const Complex want = exterior_v_freq(p, s);
        CHECK(std::abs(got - want) <= 2e-3 * std::abs(want));
    }
}

TEST_CASE("single layer decays away from the boundary for real frequencies") {
    const Mesh hex = make_regular_polygon_mesh(6);
    const BoundarySpaces sp(extract_boundary(hex), 1);
    const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(sp.num_x_dofs());
    const Complex zeta(3.0, 0.0);
    const double near = std::abs(eval_single_layer(sp, zeta, one, {3.0, 0.0}));
    const double far = std::abs(eval_single_layer(sp, zeta, one, {5.0, 0.0}));
    CHECK(near > 0.0);
    CHECK(far < 1e-2 * near);
}
