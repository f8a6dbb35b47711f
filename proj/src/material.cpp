#include "thermocq/material.hpp"

#include <cmath>
#include <stdexcept>

namespace thermocq {

ScalarField constant_scalar(double v) {
    return {[v](const Vec2&) { return v; }};
}

TensorField constant_tensor(const Eigen::Matrix2d& m) {
    return {[m](const Vec2&) { return m; }, [](const Vec2&) { return Vec2{0, 0}; }};
}

TensorField isotropic_tensor(double v) {
    return constant_tensor(v * Eigen::Matrix2d::Identity());
}

MaterialModel unit_material(double rho) {
    MaterialModel m;
    m.rho = constant_scalar(rho);
    m.lambda = 1.0;
    m.mu = 1.0;
    m.zeta = isotropic_tensor(1.0);
    m.kappa = isotropic_tensor(1.0);
    m.eta = isotropic_tensor(1.0);
    return m;
}

namespace {

MaterialModel smooth_variable_material() {
    MaterialModel m;
    m.rho = {[](const Vec2& p) { return 5.0 + std::sin(p.x) * std::sin(p.y); }};
    m.lambda = 2.0;
    m.mu = 3.0;
    m.zeta = {[](const Vec2& p) {
                  Eigen::Matrix2d z;
                  z << std::sin(p.x) + std::cos(p.y), std::cos(p.x),
                       std::cos(p.x), -std::sin(p.y);
                  return z;
              },
              [](const Vec2& p) {
                  return Vec2{std::cos(p.x), -std::sin(p.x) - std::cos(p.y)};
              }};
    m.kappa = {[](const Vec2& p) {
                   Eigen::Matrix2d k;
                   k << 10.0 + p.x * p.x, 0.0, 0.0, 10.0 + p.y;
                   return k;
               },
               [](const Vec2& p) { return Vec2{2.0 * p.x, 1.0}; }};
    m.eta = {[](const Vec2& p) {
                 Eigen::Matrix2d e;
                 e << 1.0, 5.0 + p.x + p.y, 5.0 + p.x + p.y, p.x + p.y;
                 return e;
             },
             [](const Vec2&) { return Vec2{1.0, 2.0}; }};
    return m;
}

} // namespace

MaterialModel material_preset(const std::string& name) {
    if (name == "manufactured") return smooth_variable_material();
    if (name == "pentagon") {
        MaterialModel m = smooth_variable_material();
        // Gaussian core centered in the shipped pentagon
        const Vec2 c{0.108, 0.54};
        m.rho = {[c](const Vec2& p) {
            double r2 = (p - c).squared_norm();
            return 15.0 + 40.0 * std::exp(-49.0 * r2);
        }};
        return m;
    }
    if (name == "trapping") {
        MaterialModel m = smooth_variable_material();
        m.rho = {[](const Vec2& p) { return 20.0 + std::abs(p.x) + std::abs(p.y); }};
        return m;
    }
    throw std::invalid_argument("unknown material preset '" + name + "'");
}

} // namespace thermocq
