#include "thermocq/fem_assembly.hpp"

#include <vector>

#include "thermocq/quadrature.hpp"

namespace thermocq {

namespace {

using Triplet = Eigen::Triplet<double>;

struct BasisAtPoint {
    Eigen::VectorXd val;    // basis values
    Eigen::MatrixXd gref;   // reference gradients (dim x 2)
};

// reference basis data at every quadrature point, computed once
std::vector<BasisAtPoint> tabulate(const ReferenceElement& re, const TriangleRule& rule) {
    std::vector<BasisAtPoint> tab(static_cast<size_t>(rule.size()));
    for (int q = 0; q < rule.size(); ++q) {
        re.eval(rule.points[static_cast<size_t>(q)], tab[static_cast<size_t>(q)].val);
        re.eval_grad(rule.points[static_cast<size_t>(q)], tab[static_cast<size_t>(q)].gref);
    }
    return tab;
}

} // namespace

FemMatrices assemble_fem_matrices(const FESpace& space, const MaterialModel& mat,
                                  int quad_order) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 2;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    const int dim = re.dim;
    const int n = space.num_dofs();

    std::vector<Triplet> t_mrho, t_kel, t_gz, t_ge, t_mth, t_kk;
    Eigen::MatrixXd grad(dim, 2);

    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bp = tab[static_cast<size_t>(q)];
            const double w = rule.weights[static_cast<size_t>(q)] * em.det;
            const Vec2 x = em.to_physical(rule.points[static_cast<size_t>(q)]);
            for (int i = 0; i < dim; ++i) {
                Vec2 g = em.push_gradient({bp.gref(i, 0), bp.gref(i, 1)});
                grad(i, 0) = g.x;
                grad(i, 1) = g.y;
            }
            const double rho = mat.rho(x);
            const Eigen::Matrix2d zeta = mat.zeta(x);
            const Eigen::Matrix2d kappa = mat.kappa(x);
            const Eigen::Matrix2d eta = mat.eta(x);
            const double lam = mat.lambda, mu = mat.mu;

            for (int i = 0; i < dim; ++i) {
                const int gi = dofs[static_cast<size_t>(i)];
                const double vi = bp.val(i);
                const Eigen::Vector2d gradi(grad(i, 0), grad(i, 1));
                for (int j = 0; j < dim; ++j) {
                    const int gj = dofs[static_cast<size_t>(j)];
                    const double vj = bp.val(j);
                    const Eigen::Vector2d gradj(grad(j, 0), grad(j, 1));

                    const double m = w * vi * vj;
                    t_mth.emplace_back(gi, gj, m);
                    t_mrho.emplace_back(2 * gi, 2 * gj, rho * m);
                    t_mrho.emplace_back(2 * gi + 1, 2 * gj + 1, rho * m);

                    t_kk.emplace_back(gi, gj, w * gradi.dot(kappa * gradj));

                    const double gg = gradi.dot(gradj);
                    for (int d = 0; d < 2; ++d)
                        for (int c = 0; c < 2; ++c) {
                            double e = lam * gradj(c) * gradi(d) +
                                       mu * (gradj(d) * gradi(c) + (c == d ? gg : 0.0));
                            t_kel.emplace_back(2 * gi + d, 2 * gj + c, w * e);
                        }

                    // (zeta theta_j, eps(v_{i,d})) = theta_j (zeta grad phi_i)_d
                    const Eigen::Vector2d zg = zeta * gradi;
                    t_gz.emplace_back(2 * gi, gj, w * vj * zg(0));
                    t_gz.emplace_back(2 * gi + 1, gj, w * vj * zg(1));

                    // (eta u_{j,c}, grad phi_i) = phi_j (eta^T grad phi_i)_c
                    const Eigen::Vector2d eg = eta.transpose() * gradi;
                    t_ge.emplace_back(gi, 2 * gj, w * vj * eg(0));
                    t_ge.emplace_back(gi, 2 * gj + 1, w * vj * eg(1));
                }
            }
        }
    }

    FemMatrices fm;
    fm.n_scalar = n;
    auto build = [](int rows, int cols, std::vector<Triplet>& trip) {
        SparseReal m(rows, cols);
        m.setFromTriplets(trip.begin(), trip.end());
        m.makeCompressed();
        return m;
    };
    fm.mass_rho_vec = build(2 * n, 2 * n, t_mrho);
    fm.stiff_elastic = build(2 * n, 2 * n, t_kel);
    fm.coupling_zeta = build(2 * n, n, t_gz);
    fm.coupling_eta = build(n, 2 * n, t_ge);
    fm.mass_theta = build(n, n, t_mth);
    fm.stiff_kappa = build(n, n, t_kk);
    return fm;
}

SparseReal assemble_scalar_mass(const FESpace& space, const ScalarField& coeff,
                                int quad_order) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 2;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    std::vector<Triplet> trip;
    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bp = tab[static_cast<size_t>(q)];
            const double w = rule.weights[static_cast<size_t>(q)] * em.det;
            const double cv = coeff(em.to_physical(rule.points[static_cast<size_t>(q)]));
            for (int i = 0; i < re.dim; ++i)
                for (int j = 0; j < re.dim; ++j)
                    trip.emplace_back(dofs[static_cast<size_t>(i)],
                                      dofs[static_cast<size_t>(j)],
                                      w * cv * bp.val(i) * bp.val(j));
        }
    }
    SparseReal m(space.num_dofs(), space.num_dofs());
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

Eigen::VectorXcd project_fem_scalar(const FESpace& space, const std::function<Complex(Vec2)>& f,
                                    int quad_order) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 4;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.num_dofs());
    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[static_cast<size_t>(q)] * em.det;
            const Complex fv = f(em.to_physical(rule.points[static_cast<size_t>(q)]));
            for (int i = 0; i < re.dim; ++i)
                v(dofs[static_cast<size_t>(i)]) += w * fv * tab[static_cast<size_t>(q)].val(i);
        }
    }
    return v;
}

Eigen::VectorXcd project_fem_vector(const FESpace& space,
                                    const std::function<std::array<Complex, 2>(Vec2)>& f,
                                    int quad_order) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 4;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * space.num_dofs());
    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[static_cast<size_t>(q)] * em.det;
            const auto fv = f(em.to_physical(rule.points[static_cast<size_t>(q)]));
            for (int i = 0; i < re.dim; ++i) {
                const double b = w * tab[static_cast<size_t>(q)].val(i);
                v(2 * dofs[static_cast<size_t>(i)]) += b * fv[0];
                v(2 * dofs[static_cast<size_t>(i)] + 1) += b * fv[1];
            }
        }
    }
    return v;
}

Eigen::VectorXcd assemble_weak_vector_load(
    const FESpace& space, const std::function<std::array<std::array<Complex, 2>, 2>(Vec2)>& S,
    const std::function<std::array<Complex, 2>(Vec2)>& b, int quad_order) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 4;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * space.num_dofs());
    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bp = tab[static_cast<size_t>(q)];
            const double w = rule.weights[static_cast<size_t>(q)] * em.det;
            const Vec2 x = em.to_physical(rule.points[static_cast<size_t>(q)]);
            const auto Sv = S(x);
            const auto bv = b(x);
            for (int i = 0; i < re.dim; ++i) {
                const Vec2 g = em.push_gradient({bp.gref(i, 0), bp.gref(i, 1)});
                const double bas = bp.val(i);
                for (int d = 0; d < 2; ++d)
                    v(2 * dofs[static_cast<size_t>(i)] + d) +=
                        w * (Sv[static_cast<size_t>(d)][0] * g.x +
                             Sv[static_cast<size_t>(d)][1] * g.y + bv[static_cast<size_t>(d)] * bas);
            }
        }
    }
    return v;
}

Eigen::VectorXcd assemble_weak_scalar_load(const FESpace& space,
                                           const std::function<std::array<Complex, 2>(Vec2)>& q,
                                           const std::function<Complex(Vec2)>& c, int quad_order) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 4;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.num_dofs());
    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int p = 0; p < rule.size(); ++p) {
            const auto& bp = tab[static_cast<size_t>(p)];
            const double w = rule.weights[static_cast<size_t>(p)] * em.det;
            const Vec2 x = em.to_physical(rule.points[static_cast<size_t>(p)]);
            const auto qv = q(x);
            const Complex cv = c(x);
            for (int i = 0; i < re.dim; ++i) {
                const Vec2 g = em.push_gradient({bp.gref(i, 0), bp.gref(i, 1)});
                v(dofs[static_cast<size_t>(i)]) += w * (qv[0] * g.x + qv[1] * g.y + cv * bp.val(i));
            }
        }
    }
    return v;
}

namespace {

// shared quadrature sweep for the error norms: acc receives the squared
// pointwise mismatch already multiplied by the quadrature weight
template <class Acc>
double error_sweep(const FESpace& space, int quad_order, Acc&& acc) {
    const int k = space.degree();
    if (quad_order < 0) quad_order = 2 * k + 6;
    const auto& re = reference_element(k);
    const TriangleRule rule = triangle_rule(quad_order);
    const auto tab = tabulate(re, rule);
    double total = 0.0;
    for (int t = 0; t < space.mesh().num_triangles(); ++t) {
        const auto& dofs = space.element_dofs(t);
        const ElementMap em = space.element_map(t);
        for (int q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[static_cast<size_t>(q)] * em.det;
            total += acc(dofs, em, tab[static_cast<size_t>(q)],
                         rule.points[static_cast<size_t>(q)], w);
        }
    }
    return std::sqrt(total);
}

} // namespace

double error_l2_scalar(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<Complex(Vec2)>& exact, int quad_order) {
    return error_sweep(space, quad_order,
                       [&](const std::vector<int>& dofs, const ElementMap& em,
                           const BasisAtPoint& bp, Vec2 ref, double w) {
                           Complex uh(0.0, 0.0);
                           for (size_t i = 0; i < dofs.size(); ++i)
                               uh += coeffs(dofs[i]) * bp.val(static_cast<int>(i));
                           return w * std::norm(uh - exact(em.to_physical(ref)));
                       });
}

double error_h1_scalar(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<std::array<Complex, 2>(Vec2)>& grad_exact,
                       int quad_order) {
    return error_sweep(space, quad_order,
                       [&](const std::vector<int>& dofs, const ElementMap& em,
                           const BasisAtPoint& bp, Vec2 ref, double w) {
                           Complex gx(0.0, 0.0), gy(0.0, 0.0);
                           for (size_t i = 0; i < dofs.size(); ++i) {
                               const Vec2 g = em.push_gradient({bp.gref(static_cast<int>(i), 0),
                                                                bp.gref(static_cast<int>(i), 1)});
                               gx += coeffs(dofs[i]) * g.x;
                               gy += coeffs(dofs[i]) * g.y;
                           }
                           const auto ge = grad_exact(em.to_physical(ref));
                           return w * (std::norm(gx - ge[0]) + std::norm(gy - ge[1]));
                       });
}

double error_l2_vector(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<std::array<Complex, 2>(Vec2)>& exact,
                       int quad_order) {
    return error_sweep(space, quad_order,
                       [&](const std::vector<int>& dofs, const ElementMap& em,
                           const BasisAtPoint& bp, Vec2 ref, double w) {
                           Complex ux(0.0, 0.0), uy(0.0, 0.0);
                           for (size_t i = 0; i < dofs.size(); ++i) {
                               ux += coeffs(2 * dofs[i]) * bp.val(static_cast<int>(i));
                               uy += coeffs(2 * dofs[i] + 1) * bp.val(static_cast<int>(i));
                           }
                           const auto ue = exact(em.to_physical(ref));
                           return w * (std::norm(ux - ue[0]) + std::norm(uy - ue[1]));
                       });
}

double error_h1_vector(const FESpace& space, const Eigen::VectorXcd& coeffs,
                       const std::function<std::array<std::array<Complex, 2>, 2>(Vec2)>& grad_exact,
                       int quad_order) {
    return error_sweep(space, quad_order,
                       [&](const std::vector<int>& dofs, const ElementMap& em,
                           const BasisAtPoint& bp, Vec2 ref, double w) {
                           std::array<std::array<Complex, 2>, 2> gh{};
                           for (size_t i = 0; i < dofs.size(); ++i) {
                               const Vec2 g = em.push_gradient({bp.gref(static_cast<int>(i), 0),
                                                                bp.gref(static_cast<int>(i), 1)});
                               gh[0][0] += coeffs(2 * dofs[i]) * g.x;
                               gh[0][1] += coeffs(2 * dofs[i]) * g.y;
                               gh[1][0] += coeffs(2 * dofs[i] + 1) * g.x;
                               gh[1][1] += coeffs(2 * dofs[i] + 1) * g.y;
                           }
                           const auto ge = grad_exact(em.to_physical(ref));
                           double e = 0.0;
                           for (int a = 0; a < 2; ++a)
                               for (int b = 0; b < 2; ++b) e += std::norm(gh[a][b] - ge[a][b]);
                           return w * e;
                       });
}

SparseComplex fem_block(const FemMatrices& fm, Complex s) {
    const int n = fm.n_scalar;
    const int nv = 2 * n;
    std::vector<Eigen::Triplet<Complex>> trip;
    auto add = [&trip](const SparseReal& m, Complex factor, int row0, int col0) {
        for (int k = 0; k < m.outerSize(); ++k)
            for (SparseReal::InnerIterator it(m, k); it; ++it)
                trip.emplace_back(row0 + static_cast<int>(it.row()),
                                  col0 + static_cast<int>(it.col()),
                                  factor * it.value());
    };
    add(fm.stiff_elastic, 1.0, 0, 0);
    add(fm.mass_rho_vec, s * s, 0, 0);
    add(fm.coupling_zeta, -1.0, 0, nv);
    add(fm.coupling_eta, -s, nv, 0);
    add(fm.stiff_kappa, 1.0, nv, nv);
    add(fm.mass_theta, s, nv, nv);
    SparseComplex A(3 * n, 3 * n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
}

} // namespace thermocq
