#pragma once

#include <Eigen/Sparse>
#include <array>
#include <complex>
#include <functional>

#include "thermocq/fem_space.hpp"
#include "thermocq/material.hpp"

namespace thermocq {

using SparseReal = Eigen::SparseMatrix<double>;
using SparseComplex = Eigen::SparseMatrix<std::complex<double>>;
using Complex = std::complex<double>;

// Galerkin matrices of the solid. The displacement space is the scalar space
// taken twice, components interleaved: vector dof (i,c) -> 2*i + c.
struct FemMatrices {
    int n_scalar = 0;
    SparseReal mass_rho_vec;  // (rho u, v),              2n x 2n
    SparseReal stiff_elastic; // (C eps(u), eps(v)),      2n x 2n
    SparseReal coupling_zeta; // (zeta theta, eps(v)),    2n x n
    SparseReal coupling_eta;  // (eta u, grad theta),     n x 2n
    SparseReal mass_theta;    // (theta, phi),            n x n
    SparseReal stiff_kappa;   // (kappa grad theta, grad phi), n x n

    int n_vector() const { return 2 * n_scalar; }
    int n_total() const { return 3 * n_scalar; }
};

// quad_order < 0 selects the default 2k+2
FemMatrices assemble_fem_matrices(const FESpace& space, const MaterialModel& mat,
                                  int quad_order = -1);

// scalar mass with a coefficient (test hook and building block)
SparseReal assemble_scalar_mass(const FESpace& space, const ScalarField& coeff,
                                int quad_order = -1);

// frequency combination
//   [ stiff_elastic + s^2 mass_rho_vec   -coupling_zeta          ]
//   [ -s coupling_eta                     stiff_kappa + s mass_theta ]
SparseComplex fem_block(const FemMatrices& fm, Complex s);

// load vectors <f, v> over the solid; vector loads use interleaved ordering
Eigen::VectorXcd project_fem_scalar(const FESpace& space,
                                    const std::function<Complex(Vec2)>& f,
                                    int quad_order = -1);
Eigen::VectorXcd project_fem_vector(const FESpace& space,
                                    const std::function<std::array<Complex, 2>(Vec2)>& f,
                                    int quad_order = -1);

// weak-form load vectors, used to build manufactured right hand sides without
// second derivatives of the exact fields:
//   vector test space: <d, v> = int S : grad v + b . v   (S row d pairs with grad v_d)
//   scalar test space: <d, w> = int q . grad w + c w
Eigen::VectorXcd assemble_weak_vector_load(
    const FESpace& space, const std::function<std::array<std::array<Complex, 2>, 2>(Vec2)>& S,
    const std::function<std::array<Complex, 2>(Vec2)>& b, int quad_order = -1);
Eigen::VectorXcd assemble_weak_scalar_load(const FESpace& space,
                                           const std::function<std::array<Complex, 2>(Vec2)>& q,
                                           const std::function<Complex(Vec2)>& c,
                                           int quad_order = -1);

// discretization error norms against a smooth exact field (H1 is the seminorm)
double error_l2_scalar(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<Complex(Vec2)>& exact, int quad_order = -1);
double error_h1_scalar(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<std::array<Complex, 2>(Vec2)>& grad_exact,
                       int quad_order = -1);
double error_l2_vector(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<std::array<Complex, 2>(Vec2)>& exact,
                       int quad_order = -1);
double error_h1_vector(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<std::array<std::array<Complex, 2>, 2>(Vec2)>& grad_exact,
                       int quad_order = -1);

} // namespace thermocq
