#include "thermocq/system.hpp"

#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SparseLU>

#include "thermocq/quadrature.hpp"

namespace thermocq {

namespace {

double poly_eval_local(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (int m = (int)c.size() - 1; m >= 0; --m) r = r * x + c[m];
    return r;
}

} // namespace

Eigen::SparseMatrix<double> assemble_trace_coupling(const FESpace& fe, const BoundarySpaces& sp) {
    if (fe.degree() != sp.degree())
        throw std::invalid_argument("assemble_trace_coupling: FE and trace degrees differ");
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    std::vector<Eigen::Triplet<double>> trip;
    const Rule1D g = gauss_legendre(k + 2);
    std::vector<double> vals(k + 1);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const std::vector<int>& yd = sp.y_panel_dofs(p);
        const std::vector<int> fd = fe.panel_dofs(P);
        // the FE trace along the panel is the same local P_k Lagrange set as Yh
        for (size_t q = 0; q < g.nodes.size(); ++q) {
            const double w = g.weights[q] * P.length;
            for (int a = 0; a <= k; ++a) vals[a] = poly_eval_local(sp.y_basis()[a], g.nodes[q]);
            for (int a = 0; a <= k; ++a)
                for (int b = 0; b <= k; ++b) {
                    const double m = w * vals[a] * vals[b];
                    trip.emplace_back(yd[a], 2 * fd[b], m * P.normal.x);
                    trip.emplace_back(yd[a], 2 * fd[b] + 1, m * P.normal.y);
                }
        }
    }
    Eigen::SparseMatrix<double> G(sp.num_y_dofs(), 2 * fe.num_dofs());
    G.setFromTriplets(trip.begin(), trip.end());
    G.makeCompressed();
    return G;
}

Eigen::VectorXcd assemble_boundary_normal_load(const FESpace& fe, const BoundarySpaces& sp,
                                               const std::function<Complex(Vec2)>& g) {
    if (fe.degree() != sp.degree())
        throw std::invalid_argument("assemble_boundary_normal_load: FE and trace degrees differ");
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    const Rule1D rule = gauss_legendre(k + 6);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * fe.num_dofs());
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const std::vector<int> fd = fe.panel_dofs(P);
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
            const double w = rule.weights[q] * P.length;
            const Complex gv = g(P.point(rule.nodes[q]));
            for (int b = 0; b <= k; ++b) {
                const Complex m = w * gv * poly_eval_local(sp.y_basis()[b], rule.nodes[q]);
                v(2 * fd[static_cast<size_t>(b)]) += m * P.normal.x;
                v(2 * fd[static_cast<size_t>(b)] + 1) += m * P.normal.y;
            }
        }
    }
    return v;
}

CoupledSystem::CoupledSystem(const FESpace& fe, const BoundarySpaces& sp,
                             const MaterialModel& mat, const BemQuadratureOptions& bopt)
    : fe_(&fe), sp_(&sp), mat_(mat), bopt_(bopt) {
    fm_ = assemble_fem_matrices(fe, mat);
    G_ = assemble_trace_coupling(fe, sp);
    Myx_ = assemble_cross_mass(sp);
    M1_ = sp.num_y_dofs();
    M2_ = sp.num_x_dofs();
}

Eigen::MatrixXcd CoupledSystem::boundary_block(const CalderonMatrices& cal) const {
    const double rf = mat_.rho_f;
    Eigen::MatrixXcd B(M1_ + M2_, M1_ + M2_);
    B.topLeftCorner(M1_, M1_) = rf * cal.W;
    B.topRightCorner(M1_, M2_) = -rf * (0.5 * Myx_.cast<Complex>() - cal.Kp);
    B.bottomLeftCorner(M2_, M1_) = rf * (0.5 * Myx_.transpose().cast<Complex>() - cal.K);
    B.bottomRightCorner(M2_, M2_) = rf * cal.V;
    return B;
}

Eigen::MatrixXcd CoupledSystem::dense_operator(Complex s) const {
    const int n = fm_.n_scalar;
    const int N = size();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    A.topLeftCorner(3 * n, 3 * n) = Eigen::MatrixXcd(fem_block(fm_, s));
    const Complex srf = s * mat_.rho_f;
    const Eigen::MatrixXd Gd(G_);
    A.block(0, off_phi(), 2 * n, M1_) = srf * Gd.transpose().cast<Complex>();
    A.block(off_phi(), 0, M1_, 2 * n) = -srf * Gd.cast<Complex>();
    const CalderonMatrices cal = assemble_calderon(*sp_, s / mat_.c, bopt_);
    A.block(off_phi(), off_phi(), M1_ + M2_, M1_ + M2_) = boundary_block(cal);
    return A;
}

namespace {

class SchurSolver : public SystemSolver {
public:
    SchurSolver(const CoupledSystem& sys, Complex s, const SparseComplex& F,
                const Eigen::MatrixXcd& Bbd, const Eigen::SparseMatrix<double>& G,
                double rho_f)
        : n2_(2 * sys.n_scalar()), m1_(sys.m1()), srf_(s * rho_f), Gc_(G.cast<Complex>()) {
        flu_.compute(F);
        if (flu_.info() != Eigen::Success)
            throw std::runtime_error("SchurSolver: solid block factorization failed");
        // Xu = F^{-1} [s rho_f G^T; 0]
        Eigen::MatrixXcd Cup = Eigen::MatrixXcd::Zero(F.rows(), m1_);
        Cup.topRows(n2_) = srf_ * Eigen::MatrixXcd(Gc_.transpose());
        Xu_ = flu_.solve(Cup);
        Eigen::MatrixXcd S = Bbd;
        S.topLeftCorner(m1_, m1_) += srf_ * (Gc_ * Xu_.topRows(n2_));
        slu_.compute(S);
    }

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const override {
        const int nf = (int)Xu_.rows();
        const int nb = (int)slu_.rows();
        Eigen::VectorXcd yf = flu_.solve(rhs.head(nf).eval());
        Eigen::VectorXcd rb = rhs.tail(nb);
        rb.head(m1_) += srf_ * (Gc_ * yf.head(n2_));
        const Eigen::VectorXcd xb = slu_.solve(rb);
        Eigen::VectorXcd out(nf + nb);
        out.head(nf) = yf - Xu_ * xb.head(m1_);
        out.tail(nb) = xb;
        return out;
    }

private:
    int n2_, m1_;
    Complex srf_;
    SparseComplex Gc_;
    Eigen::SparseLU<SparseComplex> flu_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> slu_;
    Eigen::MatrixXcd Xu_;
};

class DenseSolver : public SystemSolver {
public:
    explicit DenseSolver(const Eigen::MatrixXcd& A) : lu_(A) {}
    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const override { return lu_.solve(rhs); }

private:
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

class BoundaryFirstSolver : public SystemSolver {
public:
    BoundaryFirstSolver(const CoupledSystem& sys, Complex s, const SparseComplex& F,
                        const Eigen::MatrixXcd& Bbd, const Eigen::SparseMatrix<double>& G,
                        double rho_f)
        : nf_((int)F.rows()), nb_((int)Bbd.rows()), n2_(2 * sys.n_scalar()), m1_(sys.m1()) {
        const Complex srf = s * rho_f;
        Cup_ = Eigen::MatrixXcd::Zero(nf_, nb_);
        Cup_.block(0, 0, n2_, m1_) = srf * Eigen::MatrixXd(G).transpose().cast<Complex>();
        Cdown_ = Eigen::MatrixXcd::Zero(nb_, nf_);
        Cdown_.block(0, 0, m1_, n2_) = -srf * Eigen::MatrixXd(G).cast<Complex>();
        blu_.compute(Bbd);
        const Eigen::MatrixXcd Sf = Eigen::MatrixXcd(F) - Cup_ * blu_.solve(Cdown_);
        slu_.compute(Sf);
    }

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const override {
        const Eigen::VectorXcd rf = rhs.head(nf_);
        const Eigen::VectorXcd rb = rhs.tail(nb_);
        const Eigen::VectorXcd xf = slu_.solve(rf - Cup_ * blu_.solve(rb));
        const Eigen::VectorXcd xb = blu_.solve(rb - Cdown_ * xf);
        Eigen::VectorXcd out(nf_ + nb_);
        out.head(nf_) = xf;
        out.tail(nb_) = xb;
        return out;
    }

private:
    int nf_, nb_, n2_, m1_;
    Eigen::MatrixXcd Cup_, Cdown_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> blu_, slu_;
};

} // namespace

std::unique_ptr<SystemSolver> CoupledSystem::factorize(Complex s) const {
    const SparseComplex F = fem_block(fm_, s);
    const CalderonMatrices cal = assemble_calderon(*sp_, s / mat_.c, bopt_);
    return std::make_unique<SchurSolver>(*this, s, F, boundary_block(cal), G_, mat_.rho_f);
}

std::unique_ptr<SystemSolver> CoupledSystem::factorize_dense(Complex s) const {
    return std::make_unique<DenseSolver>(dense_operator(s));
}

std::unique_ptr<SystemSolver> CoupledSystem::factorize_boundary_first(Complex s) const {
    const SparseComplex F = fem_block(fm_, s);
    const CalderonMatrices cal = assemble_calderon(*sp_, s / mat_.c, bopt_);
    return std::make_unique<BoundaryFirstSolver>(*this, s, F, boundary_block(cal), G_,
                                                 mat_.rho_f);
}

} // namespace thermocq
