#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "thermocq/system.hpp"

using namespace thermocq;

namespace {

int find_panel(const BoundaryMesh& bm, Vec2 midpoint) {
    for (int p = 0; p < bm.num_panels(); ++p)
        if (dist(bm.panels[size_t(p)].midpoint(), midpoint) < 1e-12) return p;
    REQUIRE(false);
    return -1;
}

Eigen::VectorXcd random_complex(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(uni(rng), uni(rng));
    return v;
}

} // namespace

TEST_CASE("trace coupling blocks are panel mass matrices times the normal") {
    const Mesh m = make_unit_square_mesh();
    const BoundaryMesh bm = extract_boundary(m);
    const FESpace fe(m, 1);
    const BoundarySpaces sp(bm, 1);
    const Eigen::MatrixXd G = Eigen::MatrixXd(assemble_trace_coupling(fe, sp));
    REQUIRE(G.rows() == sp.num_y_dofs());
    REQUIRE(G.cols() == 2 * fe.num_dofs());

    // on the top panel (normal (0,1), unit length) the block between the two
    // panel Y dofs and the y-components of the endpoint FE dofs is the P1
    // segment mass matrix (1/6)[[2,1],[1,2]]; the x-components see zero
    Eigen::Matrix2d seg;
    seg << 2, 1, 1, 2;
    seg /= 6.0;
    struct Side {
        Vec2 mid, normal;
    };
    for (const Side& side : {Side{{0.5, 1.0}, {0.0, 1.0}}, Side{{0.5, 0.0}, {0.0, -1.0}},
                             Side{{1.0, 0.5}, {1.0, 0.0}}, Side{{0.0, 0.5}, {-1.0, 0.0}}}) {
        const int p = find_panel(bm, side.mid);
        const auto& yd = sp.y_panel_dofs(p);
        const std::vector<int> fd = fe.panel_dofs(bm.panels[size_t(p)]);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    const double nc = c == 0 ? side.normal.x : side.normal.y;
                    CHECK(G(yd[size_t(a)], 2 * fd[size_t(b)] + c) ==
                          doctest::Approx(nc * seg(a, b)).epsilon(1e-13));
                }
    }
}

TEST_CASE("trace coupling integrates the normal flux of FE fields") {
    // summing all rows of G u gives the boundary integral of u . n, which by
    // the divergence theorem equals the volume integral of div u
    const Mesh m = make_unit_square_mesh().refined();
    const BoundaryMesh bm = extract_boundary(m);
    for (int k : {1, 2}) {
        const FESpace fe(m, k);
        const BoundarySpaces sp(bm, k);
        const Eigen::SparseMatrix<double> G = assemble_trace_coupling(fe, sp);

        Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * fe.num_dofs());
        for (int i = 0; i < fe.num_dofs(); ++i) {
            const Vec2 p = fe.dof_point(i);
            if (k == 1) {
                u(2 * i) = p.x; // div = 1, integral over the square = 1
            } else {
                u(2 * i) = p.x * p.x; // div = 3x, integral = 3/2
                u(2 * i + 1) = p.x * p.y;
            }
        }
        const double expect = k == 1 ? 1.0 : 1.5;
        CHECK((G * u).sum() == doctest::Approx(expect).epsilon(1e-12));

        // constant fields have zero net flux
        Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * fe.num_dofs());
        for (int i = 0; i < fe.num_dofs(); ++i) c(2 * i) = 1.0;
        CHECK(std::abs((G * c).sum()) <= 1e-13);

        // interior dofs produce identically zero columns
        for (int i = 0; i < fe.num_dofs(); ++i) {
            const Vec2 p = fe.dof_point(i);
            const bool interior = p.x > 1e-9 && p.x < 1.0 - 1e-9 && p.y > 1e-9 && p.y < 1.0 - 1e-9;
            if (!interior) continue;
            for (int c2 = 0; c2 < 2; ++c2)
                CHECK(Eigen::VectorXd(G.col(2 * i + c2)).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("boundary normal load matches the coupling action on trace data") {
    const Mesh m = make_unit_square_mesh().refined();
    const BoundaryMesh bm = extract_boundary(m);
    const FESpace fe(m, 2);
    const BoundarySpaces sp(bm, 2);
    const Eigen::SparseMatrix<double> G = assemble_trace_coupling(fe, sp);
    // g linear lies in Yh, so <g n, v> = G^T (Y-interpolant of g)
    auto g = [](Vec2 p) { return Complex(2.0 * p.x - p.y + 0.25, 0.5 * p.y); };
    const Eigen::VectorXcd load = assemble_boundary_normal_load(fe, sp, g);
    const Eigen::VectorXcd want = G.transpose().cast<Complex>() * sp.interpolate_y(g);
    CHECK((load - want).cwiseAbs().maxCoeff() <= 1e-12 * want.cwiseAbs().maxCoeff());
}

TEST_CASE("dense operator: layout, couplings, and the exact skew identity") {
    const Mesh m = make_unit_square_mesh();
    const BoundaryMesh bm = extract_boundary(m);
    const FESpace fe(m, 1);
    const BoundarySpaces sp(bm, 1);
    MaterialModel mat = material_preset("manufactured");
    mat.rho_f = 1.3;
    const CoupledSystem sys(fe, sp, mat);

    const int n = sys.n_scalar(), M1 = sys.m1(), M2 = sys.m2();
    CHECK(sys.size() == 3 * n + M1 + M2);
    CHECK(sys.off_theta() == 2 * n);
    CHECK(sys.off_phi() == 3 * n);
    CHECK(sys.off_lambda() == 3 * n + M1);
    CHECK(M1 == sp.num_y_dofs());
    CHECK(M2 == sp.num_x_dofs());

    const Complex s(1.0, 2.0);
    const Eigen::MatrixXcd A = sys.dense_operator(s);
    REQUIRE(A.rows() == sys.size());

    // the solid block is the FEM frequency combination
    const Eigen::MatrixXcd fem = Eigen::MatrixXcd(fem_block(sys.fem(), s));
    CHECK((A.topLeftCorner(3 * n, 3 * n) - fem).cwiseAbs().maxCoeff() == 0.0);

    // fluid pressure drives the momentum rows through +s rho_f G^T; the
    // Neumann identity rows see the solid through -s rho_f G; together the
    // off-diagonal pair is exactly skew
    const Eigen::MatrixXcd G = Eigen::MatrixXd(sys.trace_coupling()).cast<Complex>();
    const Eigen::MatrixXcd B13 = A.block(0, sys.off_phi(), 2 * n, M1);
    const Eigen::MatrixXcd B31 = A.block(sys.off_phi(), 0, M1, 2 * n);
    CHECK((B13 - s * mat.rho_f * G.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((B31 + s * mat.rho_f * G).cwiseAbs().maxCoeff() == 0.0);
    CHECK((B13 + B31.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // blocks that must vanish identically: (u, lambda), (theta, phi),
    // (theta, lambda), (phi-rows, theta), (lambda-rows, u), (lambda-rows, theta)
    CHECK(A.block(0, sys.off_lambda(), 2 * n, M2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.block(2 * n, sys.off_phi(), n, M1 + M2).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.block(sys.off_phi(), 2 * n, M1, n).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.block(sys.off_lambda(), 0, M2, 3 * n).cwiseAbs().maxCoeff() == 0.0);

    // the whole boundary-interaction block scales linearly with rho_f
    MaterialModel mat2 = mat;
    mat2.rho_f = 2.6;
    const CoupledSystem sys2(fe, sp, mat2);
    const Eigen::MatrixXcd A2 = sys2.dense_operator(s);
    const Eigen::MatrixXcd C1 = A.block(sys.off_phi(), sys.off_phi(), M1 + M2, M1 + M2);
    const Eigen::MatrixXcd C2 = A2.block(sys.off_phi(), sys.off_phi(), M1 + M2, M1 + M2);
    CHECK((C2 - 2.0 * C1).cwiseAbs().maxCoeff() <= 1e-12 * C1.cwiseAbs().maxCoeff());
}

TEST_CASE("all three factorizations invert the dense operator") {
    const Mesh m = load_mesh(std::string(THERMOCQ_DATA_DIR) + "/hexagon.mesh");
    const BoundaryMesh bm = extract_boundary(m);
    const FESpace fe(m, 2);
    const BoundarySpaces sp(bm, 2);
    const CoupledSystem sys(fe, sp, material_preset("manufactured"));

    for (Complex s : {Complex(1.0, 0.0), Complex(0.0, 2.8), Complex(1.0, 3.0)}) {
        const Eigen::MatrixXcd A = sys.dense_operator(s);
        const Eigen::VectorXcd x = random_complex(sys.size(), 42);
        const Eigen::VectorXcd b = A * x;
        CAPTURE(s.real());
        CAPTURE(s.imag());
        const auto schur = sys.factorize(s);
        const auto dense = sys.factorize_dense(s);
        const auto bfirst = sys.factorize_boundary_first(s);
        for (const SystemSolver* solver :
             {schur.get(), dense.get(), bfirst.get()}) {
            const Eigen::VectorXcd got = solver->solve(b);
            CHECK((got - x).norm() <= 1e-9 * x.norm());
        }

        // linearity and the zero map
        const Eigen::VectorXcd b2 = random_complex(sys.size(), 77);
        const Eigen::VectorXcd lin =
            schur->solve(2.0 * b + Complex(0.0, 1.0) * b2) -
            (2.0 * schur->solve(b) + Complex(0.0, 1.0) * schur->solve(b2));
        CHECK(lin.norm() <= 1e-10 * x.norm());
        CHECK(schur->solve(Eigen::VectorXcd::Zero(sys.size())).norm() == 0.0);
    }
}

TEST_CASE("Schur path agrees with the monolithic solve on random data") {
    Mesh m = load_mesh(std::string(THERMOCQ_DATA_DIR) + "/hexagon.mesh");
    for (int level = 0; level < 2; ++level) {
        const BoundaryMesh bm = extract_boundary(m);
        const FESpace fe(m, 1);
        const BoundarySpaces sp(bm, 1);
        const CoupledSystem sys(fe, sp, material_preset("manufactured"));
        const Complex s(0.4, 1.9);
        const auto schur = sys.factorize(s);
        const auto dense = sys.factorize_dense(s);
        for (unsigned seed : {11u, 22u, 33u}) {
            const Eigen::VectorXcd b = random_complex(sys.size(), seed);
            const Eigen::VectorXcd xs = schur->solve(b);
            const Eigen::VectorXcd xd = dense->solve(b);
            CHECK((xs - xd).norm() <= 1e-8 * xd.norm());
        }
        m = m.refined();
    }
}
