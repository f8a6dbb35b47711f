#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "thermocq/mesh.hpp"

namespace thermocq {

using Complex = std::complex<double>;

// Trace spaces on a panel mesh:
//   Yh  continuous piecewise P_k, nodal at equispaced points per panel
//   Xh  discontinuous piecewise P_{k-1}, nodal at Gauss points per panel
// Both have k * num_panels global dofs.  Yh dofs are numbered consecutively
// around each loop so that panel p carries dofs {p*k .. p*k+k} with wraparound
// at the loop seam.
class BoundarySpaces {
public:
    BoundarySpaces(const BoundaryMesh& bm, int degree);

    const BoundaryMesh& boundary() const { return *bm_; }
    int degree() const { return k_; }
    int num_y_dofs() const { return (int)y_points_.size(); }
    int num_x_dofs() const { return (int)x_points_.size(); }

    const std::vector<int>& y_panel_dofs(int p) const { return y_dofs_[p]; }
    std::vector<int> x_panel_dofs(int p) const;

    Vec2 y_dof_point(int dof) const { return y_points_[dof]; }
    Vec2 x_dof_point(int dof) const { return x_points_[dof]; }

    // local shape functions on [0,1] in monomial coefficients (row = function)
    const std::vector<std::vector<double>>& y_basis() const { return y_coeff_; }
    const std::vector<std::vector<double>>& dy_basis() const { return dy_coeff_; }
    const std::vector<std::vector<double>>& x_basis() const { return x_coeff_; }

    template <class F>
    Eigen::VectorXcd interpolate_y(F&& f) const {
        Eigen::VectorXcd v(num_y_dofs());
        for (int i = 0; i < num_y_dofs(); ++i) v(i) = f(y_points_[i]);
        return v;
    }
    template <class F>
    Eigen::VectorXcd interpolate_x(F&& f) const {
        Eigen::VectorXcd v(num_x_dofs());
        for (int i = 0; i < num_x_dofs(); ++i) v(i) = f(x_points_[i]);
        return v;
    }

private:
    const BoundaryMesh* bm_;
    int k_;
    std::vector<std::vector<int>> y_dofs_;
    std::vector<Vec2> y_points_, x_points_;
    std::vector<std::vector<double>> y_coeff_, dy_coeff_, x_coeff_;
};

struct BemQuadratureOptions {
    int gauss_regular = 0;   // points per subinterval on separated pairs (0: degree + 4)
    int gauss_adjacent = 0;  // points per graded cell on touching pairs (0: degree + 3)
    int gauss_log = 0;       // log-weighted points on the diagonal (0: degree + 8)
    int max_subdivision = 16;
    double skip_exponent = 45.0;  // drop pairs with Re(zeta) * dist beyond this
};

// Galerkin matrices of the exterior boundary operators for the kernel
// K0(zeta r) / 2pi.  V: Xh x Xh, K: Xh rows / Yh cols, Kp (transpose pairing
// of K): Yh rows / Xh cols, W: Yh x Yh via the tangential-derivative identity
//   <W phi, psi> = <V phi', psi'> + zeta^2 <V (phi n), psi n>.
struct CalderonMatrices {
    Eigen::MatrixXcd V, K, Kp, W;
};

CalderonMatrices assemble_calderon(const BoundarySpaces& sp, Complex zeta,
                                   const BemQuadratureOptions& opt = {});

// <psi_i, eta_j> duality mass matrix, rows Yh, cols Xh
Eigen::MatrixXd assemble_cross_mass(const BoundarySpaces& sp);

// L2(Gamma) Gram matrix of Yh (used for boundary error norms)
Eigen::MatrixXd assemble_y_mass(const BoundarySpaces& sp);

// <f, eta_i> and <f, psi_i> panelwise projections of a given function
Eigen::VectorXcd project_onto_x(const BoundarySpaces& sp,
                                const std::function<Complex(Vec2)>& f);
// variant whose integrand also sees the outward panel normal
Eigen::VectorXcd project_onto_y_n(const BoundarySpaces& sp,
                                  const std::function<Complex(Vec2, Vec2)>& f);
Eigen::VectorXcd project_onto_y(const BoundarySpaces& sp,
                                const std::function<Complex(Vec2)>& f);

// layer potentials evaluated away from the boundary
Complex eval_single_layer(const BoundarySpaces& sp, Complex zeta,
                          const Eigen::VectorXcd& lambda, Vec2 x);
Complex eval_double_layer(const BoundarySpaces& sp, Complex zeta,
                          const Eigen::VectorXcd& phi, Vec2 x);

} // namespace thermocq
