#pragma once

#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "thermocq/bem.hpp"
#include "thermocq/fem_assembly.hpp"

namespace thermocq {

// <mu_j . n, psi_i> coupling between interleaved vector FE dofs (cols) and
// Yh boundary test functions (rows); the FE trace on a panel coincides with
// the local Yh shape set, so the blocks are exact panel mass matrices.
Eigen::SparseMatrix<double> assemble_trace_coupling(const FESpace& fe, const BoundarySpaces& sp);

// boundary load <g n, trace v> against the interleaved vector FE space
Eigen::VectorXcd assemble_boundary_normal_load(const FESpace& fe, const BoundarySpaces& sp,
                                               const std::function<Complex(Vec2)>& g);

// factored coupled operator at one frequency
class SystemSolver {
public:
    virtual ~SystemSolver() = default;
    virtual Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const = 0;
};

// The coupled solid/exterior operator.  Unknown ordering:
//   [ u (2n, interleaved), theta (n), phi (M1, Yh), lambda (M2, Xh) ]
// Rows: elastic momentum (2n), heat (n), exterior Neumann identity tested
// with Yh (M1, scaled by rho_f), exterior Dirichlet identity tested with Xh
// (M2, scaled by rho_f).
class CoupledSystem {
public:
    CoupledSystem(const FESpace& fe, const BoundarySpaces& sp, const MaterialModel& mat,
                  const BemQuadratureOptions& bopt = {});

    const FESpace& fe() const { return *fe_; }
    const BoundarySpaces& trace_spaces() const { return *sp_; }
    const MaterialModel& material() const { return mat_; }
    const FemMatrices& fem() const { return fm_; }
    const Eigen::SparseMatrix<double>& trace_coupling() const { return G_; }
    const Eigen::MatrixXd& cross_mass() const { return Myx_; }

    int n_scalar() const { return fm_.n_scalar; }
    int m1() const { return M1_; }
    int m2() const { return M2_; }
    int size() const { return 3 * fm_.n_scalar + M1_ + M2_; }
    int off_theta() const { return 2 * fm_.n_scalar; }
    int off_phi() const { return 3 * fm_.n_scalar; }
    int off_lambda() const { return 3 * fm_.n_scalar + M1_; }

    // full dense operator (small problems and invariant tests)
    Eigen::MatrixXcd dense_operator(Complex s) const;

    // production path: sparse LU on the solid block, dense Schur complement
    // on the boundary unknowns
    std::unique_ptr<SystemSolver> factorize(Complex s) const;
    // monolithic dense LU (reference)
    std::unique_ptr<SystemSolver> factorize_dense(Complex s) const;
    // opposite elimination order: boundary unknowns first (reference,
    // dense solid complement, small problems only)
    std::unique_ptr<SystemSolver> factorize_boundary_first(Complex s) const;

private:
    const FESpace* fe_;
    const BoundarySpaces* sp_;
    MaterialModel mat_;
    BemQuadratureOptions bopt_;
    FemMatrices fm_;
    Eigen::SparseMatrix<double> G_;  // M1 x 2n
    Eigen::MatrixXd Myx_;            // M1 x M2
    int M1_ = 0, M2_ = 0;

    // boundary-boundary dense block [[rho_f W, -rho_f (Myx/2 - Kp)],
    //                                [rho_f (Myx^T/2 - K), rho_f V]]
    Eigen::MatrixXcd boundary_block(const CalderonMatrices& cal) const;
};

} // namespace thermocq
