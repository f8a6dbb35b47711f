#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "thermocq/geom.hpp"

namespace thermocq {

struct ScalarField {
    std::function<double(const Vec2&)> value;
    double operator()(const Vec2& p) const { return value(p); }
};

// 2x2 coefficient tensor; div is the row divergence (d_j m_ij), used when
// building manufactured volume forces
struct TensorField {
    std::function<Eigen::Matrix2d(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> div;
    Eigen::Matrix2d operator()(const Vec2& p) const { return value(p); }
};

ScalarField constant_scalar(double v);
TensorField constant_tensor(const Eigen::Matrix2d& m);
TensorField isotropic_tensor(double v); // v * identity

// Coefficients of the solid (density, Lame constants, thermal stress
// coupling, conductivity, convective coupling) and of the exterior fluid.
struct MaterialModel {
    ScalarField rho;
    double lambda = 1.0;
    double mu = 1.0;
    TensorField zeta;
    TensorField kappa;
    TensorField eta;
    double rho_f = 1.0;
    double c = 1.0;
};

// all coefficients one, density rho
MaterialModel unit_material(double rho = 1.0);

// named presets: "manufactured" (smooth variable coefficients used by the
// convergence studies), "pentagon" (heavy layered core for the scattering
// demo), "trapping"
MaterialModel material_preset(const std::string& name);

} // namespace thermocq
