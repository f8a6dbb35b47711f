#include "thermocq/scenarios.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "thermocq/bessel.hpp"
#include "thermocq/quadrature.hpp"

namespace thermocq {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// q(x) = truncated binomial series of (1+x)^-5; heaviside_c5(t) = t^5 q(t-1)
// matches value 1 and five vanishing derivatives at both ends of [0,1]
double step_q(double x) {
    return 1.0 + x * (-5.0 + x * (15.0 + x * (-35.0 + x * (70.0 - 126.0 * x))));
}
double step_q_d1(double x) {
    return -5.0 + x * (30.0 + x * (-105.0 + x * (280.0 - 630.0 * x)));
}
double step_q_d2(double x) { return 30.0 + x * (-210.0 + x * (840.0 - 2520.0 * x)); }

} // namespace

double heaviside_c5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double p = t * t * t * t * t;
    return p * step_q(t - 1.0);
}

double heaviside_c5_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double p4 = t * t * t * t;
    return 5.0 * p4 * step_q(t - 1.0) + p4 * t * step_q_d1(t - 1.0);
}

namespace {

double heaviside_c5_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double p3 = t * t * t;
    const double x = t - 1.0;
    return 20.0 * p3 * step_q(x) + 10.0 * p3 * t * step_q_d1(x) + p3 * t * t * step_q_d2(x);
}

} // namespace

double ramp(double t) { return heaviside_c5(t) * (t * t + 2.0 * t); }

double ramp_d1(double t) {
    return heaviside_c5_d1(t) * (t * t + 2.0 * t) + heaviside_c5(t) * (2.0 * t + 2.0);
}

double ramp_d2(double t) {
    return heaviside_c5_d2(t) * (t * t + 2.0 * t) + 2.0 * heaviside_c5_d1(t) * (2.0 * t + 2.0) +
           2.0 * heaviside_c5(t);
}

double signal_g(double t) { return heaviside_c5(t) * std::sin(3.0 * t); }

double signal_g_d1(double t) {
    return heaviside_c5_d1(t) * std::sin(3.0 * t) + 3.0 * heaviside_c5(t) * std::cos(3.0 * t);
}

double plane_pulse(double tau) {
    const double u = 88.0 * tau;
    if (u <= 0.0 || u >= 0.3) return 0.0;
    return 3.0 * std::sin(u);
}

double plane_pulse_d1(double tau) {
    const double u = 88.0 * tau;
    if (u <= 0.0 || u >= 0.3) return 0.0;
    return 264.0 * std::cos(u);
}

// ---- manufactured fields ---------------------------------------------------------

Vec2 manufactured_u(Vec2 p) {
    return {p.x * p.x * p.x + p.x * p.y + p.y * p.y * p.y, std::sin(p.x) * std::cos(p.y)};
}

Eigen::Matrix2d manufactured_grad_u(Vec2 p) {
    Eigen::Matrix2d g;
    g(0, 0) = 3.0 * p.x * p.x + p.y;
    g(0, 1) = p.x + 3.0 * p.y * p.y;
    g(1, 0) = std::cos(p.x) * std::cos(p.y);
    g(1, 1) = -std::sin(p.x) * std::sin(p.y);
    return g;
}

double manufactured_theta(Vec2 p) {
    const double sx = std::sin(kPi * p.x), sy = std::sin(p.y);
    return sx * sx * sy * sy;
}

Vec2 manufactured_grad_theta(Vec2 p) {
    const double sx = std::sin(kPi * p.x), sy = std::sin(p.y);
    return {kPi * std::sin(2.0 * kPi * p.x) * sy * sy, sx * sx * std::sin(2.0 * p.y)};
}

Complex exterior_v_freq(Vec2 x, Complex s) {
    const double r = x.norm();
    return bessel_k0(s * r) / (2.0 * kPi);
}

Complex exterior_dnv_freq(Vec2 x, Vec2 n, Complex s) {
    const double r = x.norm();
    const BesselK01 k = bessel_k01(s * r);
    return -s * k.k1 * (dot(x, n) / r) / (2.0 * kPi);
}

// ---- transient exterior field ----------------------------------------------------

namespace {

// integral over sigma in [0, acosh(t/r)] of f(sigma, t - r cosh sigma), split
// where the smoothed step inside the signal changes branch (argument = 1)
template <class F>
double cosh_integral(double r, double t, F&& f) {
    if (t <= r * (1.0 + 1e-14)) return 0.0;
    const double top = std::acosh(t / r);
    double split = top;
    if (t - 1.0 > r) split = std::acosh((t - 1.0) / r);
    const Rule1D& g = gauss_legendre(10);
    double acc = 0.0;
    const double edges[3] = {0.0, split, top};
    for (int piece = 0; piece < 2; ++piece) {
        const double a = edges[piece], b = edges[piece + 1];
        if (b - a < 1e-15) continue;
        const int m = 8;
        const double hseg = (b - a) / m;
        for (int seg = 0; seg < m; ++seg) {
            const double s0 = a + seg * hseg;
            for (size_t q = 0; q < g.nodes.size(); ++q) {
                const double sig = s0 + hseg * g.nodes[q];
                acc += hseg * g.weights[q] * f(sig, t - r * std::cosh(sig));
            }
        }
    }
    return acc;
}

} // namespace

double exterior_v_time(Vec2 x, double t) {
    const double r = x.norm();
    return (2.0 / kPi) * cosh_integral(r, t, [](double, double arg) { return signal_g(arg); });
}

double exterior_dtv_time(Vec2 x, double t) {
    const double r = x.norm();
    return (2.0 / kPi) * cosh_integral(r, t, [](double, double arg) { return signal_g_d1(arg); });
}

double exterior_dnv_time(Vec2 x, Vec2 n, double t) {
    const double r = x.norm();
    const double radial = cosh_integral(
        r, t, [](double sig, double arg) { return std::cosh(sig) * signal_g_d1(arg); });
    return -(2.0 / kPi) * (dot(x, n) / r) * radial;
}

// ---- probes ----------------------------------------------------------------------

std::vector<Vec2> exterior_probes(const BoundaryMesh& bm, int count, unsigned seed) {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const Panel& p : bm.panels) {
        xlo = std::min({xlo, p.a.x, p.b.x});
        xhi = std::max({xhi, p.a.x, p.b.x});
        ylo = std::min({ylo, p.a.y, p.b.y});
        yhi = std::max({yhi, p.a.y, p.b.y});
    }
    const double margin = 0.8;
    xlo -= margin;
    ylo -= margin;
    xhi += margin;
    yhi += margin;
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Vec2> pts;
    for (long it = 0; (int)pts.size() < count; ++it) {
        if (it > 1000000) throw std::runtime_error("exterior_probes: rejection sampling stalled");
        const Vec2 p{xlo + uniform() * (xhi - xlo), ylo + uniform() * (yhi - ylo)};
        if (inside_solid(bm, p)) continue;
        const double d = distance_to_boundary(bm, p);
        if (d < 0.15 || d > 0.6) continue;
        pts.push_back(p);
    }
    return pts;
}

// ---- manufactured data -----------------------------------------------------------

namespace {

using Mat2c = std::array<std::array<Complex, 2>, 2>;
using Vec2c = std::array<Complex, 2>;

// Cauchy stress of the manufactured displacement minus the thermal part
Eigen::Matrix2d solid_stress(const MaterialModel& mat, Vec2 p) {
    const Eigen::Matrix2d gu = manufactured_grad_u(p);
    const Eigen::Matrix2d eps = 0.5 * (gu + gu.transpose());
    Eigen::Matrix2d sig = 2.0 * mat.mu * eps;
    const double tr = mat.lambda * (gu(0, 0) + gu(1, 1));
    sig(0, 0) += tr;
    sig(1, 1) += tr;
    sig -= manufactured_theta(p) * mat.zeta(p);
    return sig;
}

Eigen::Vector2d heat_flux_static(const MaterialModel& mat, Vec2 p) {
    const Vec2 gt = manufactured_grad_theta(p);
    return mat.kappa(p) * Eigen::Vector2d(gt.x, gt.y);
}

Eigen::Vector2d convective_static(const MaterialModel& mat, Vec2 p) {
    const Vec2 u = manufactured_u(p);
    return mat.eta(p) * Eigen::Vector2d(u.x, u.y);
}

} // namespace

Eigen::VectorXcd manufactured_frequency_rhs(const CoupledSystem& sys, Complex s) {
    const FESpace& fe = sys.fe();
    const BoundarySpaces& sp = sys.trace_spaces();
    const MaterialModel& mat = sys.material();
    const int n = sys.n_scalar();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(sys.size());

    auto S1 = [&mat](Vec2 p) -> Mat2c {
        const Eigen::Matrix2d sig = solid_stress(mat, p);
        return {{{sig(0, 0), sig(0, 1)}, {sig(1, 0), sig(1, 1)}}};
    };
    auto b1 = [&mat, s](Vec2 p) -> Vec2c {
        const Vec2 u = manufactured_u(p);
        const Complex f = s * s * mat.rho(p);
        return {f * u.x, f * u.y};
    };
    Eigen::VectorXcd d1 = assemble_weak_vector_load(fe, S1, b1);
    d1 += s * mat.rho_f *
          assemble_boundary_normal_load(fe, sp, [s](Vec2 p) { return exterior_v_freq(p, s); });
    rhs.head(2 * n) = d1;

    auto q2 = [&mat, s](Vec2 p) -> Vec2c {
        const Eigen::Vector2d q = heat_flux_static(mat, p);
        const Eigen::Vector2d e = convective_static(mat, p);
        return {q(0) - s * e(0), q(1) - s * e(1)};
    };
    auto c2 = [s](Vec2 p) { return s * manufactured_theta(p); };
    rhs.segment(sys.off_theta(), n) = assemble_weak_scalar_load(fe, q2, c2);

    rhs.segment(sys.off_phi(), sys.m1()) =
        mat.rho_f * project_onto_y_n(sp, [s](Vec2 x, Vec2 nrm) {
            return -(s * dot(manufactured_u(x), nrm) + exterior_dnv_freq(x, nrm, s));
        });
    return rhs;
}

std::vector<Eigen::VectorXd> manufactured_time_rhs(const CoupledSystem& sys, double dt,
                                                   int nsteps) {
    const FESpace& fe = sys.fe();
    const BoundarySpaces& sp = sys.trace_spaces();
    const MaterialModel& mat = sys.material();
    const int n = sys.n_scalar();

    auto Ss = [&mat](Vec2 p) -> Mat2c {
        const Eigen::Matrix2d sig = solid_stress(mat, p);
        return {{{sig(0, 0), sig(0, 1)}, {sig(1, 0), sig(1, 1)}}};
    };
    auto zero2 = [](Vec2) -> Vec2c { return {0.0, 0.0}; };
    const Eigen::VectorXd Ls = assemble_weak_vector_load(fe, Ss, zero2).real();
    const Eigen::VectorXd Lm = project_fem_vector(fe, [&mat](Vec2 p) -> Vec2c {
                                   const Vec2 u = manufactured_u(p);
                                   const double r = mat.rho(p);
                                   return {r * u.x, r * u.y};
                               }).real();
    auto zero1 = [](Vec2) -> Complex { return 0.0; };
    const Eigen::VectorXd Q1 = assemble_weak_scalar_load(fe,
                                                         [&mat](Vec2 p) -> Vec2c {
                                                             const Eigen::Vector2d q =
                                                                 heat_flux_static(mat, p);
                                                             return {q(0), q(1)};
                                                         },
                                                         zero1)
                                   .real();
    const Eigen::VectorXd Q2 =
        project_fem_scalar(fe, [](Vec2 p) -> Complex { return manufactured_theta(p); }).real();
    const Eigen::VectorXd Q3 = assemble_weak_scalar_load(fe,
                                                         [&mat](Vec2 p) -> Vec2c {
                                                             const Eigen::Vector2d e =
                                                                 convective_static(mat, p);
                                                             return {e(0), e(1)};
                                                         },
                                                         zero1)
                                   .real();

    std::vector<Eigen::VectorXd> g(static_cast<size_t>(nsteps) + 1);
    for (int m = 0; m <= nsteps; ++m) {
        const double t = m * dt;
        Eigen::VectorXd gm = Eigen::VectorXd::Zero(sys.size());
        const Eigen::VectorXd boundary1 =
            assemble_boundary_normal_load(fe, sp,
                                          [t](Vec2 p) { return Complex(exterior_dtv_time(p, t)); })
                .real();
        gm.head(2 * n) = ramp(t) * Ls + ramp_d2(t) * Lm + mat.rho_f * boundary1;
        gm.segment(sys.off_theta(), n) = ramp(t) * Q1 + ramp_d1(t) * (Q2 - Q3);
        const double rd = ramp_d1(t);
        gm.segment(sys.off_phi(), sys.m1()) =
            mat.rho_f * project_onto_y_n(sp, [t, rd](Vec2 x, Vec2 nrm) {
                            return Complex(-(rd * dot(manufactured_u(x), nrm) +
                                             exterior_dnv_time(x, nrm, t)));
                        }).real();
        g[static_cast<size_t>(m)] = std::move(gm);
    }
    return g;
}

std::vector<Eigen::VectorXd> plane_pulse_rhs(const CoupledSystem& sys, double dt, int nsteps,
                                             Vec2 direction) {
    const FESpace& fe = sys.fe();
    const BoundarySpaces& sp = sys.trace_spaces();
    const MaterialModel& mat = sys.material();
    const Vec2 d = direction / direction.norm();
    std::vector<Eigen::VectorXd> g(static_cast<size_t>(nsteps) + 1);
    for (int m = 0; m <= nsteps; ++m) {
        const double t = m * dt;
        Eigen::VectorXd gm = Eigen::VectorXd::Zero(sys.size());
        gm.head(2 * sys.n_scalar()) =
            -mat.rho_f * assemble_boundary_normal_load(fe, sp,
                                                       [t, d](Vec2 p) {
                                                           return Complex(
                                                               plane_pulse_d1(t - dot(p, d)));
                                                       })
                             .real();
        gm.segment(sys.off_phi(), sys.m1()) =
            mat.rho_f * project_onto_y_n(sp, [t, d](Vec2 x, Vec2 nrm) {
                            return Complex(-plane_pulse_d1(t - dot(x, d)) * dot(d, nrm));
                        }).real();
        g[static_cast<size_t>(m)] = std::move(gm);
    }
    return g;
}

// ---- studies ---------------------------------------------------------------------

std::vector<RateRow> convergence_rates(const StudyTable& table) {
    std::vector<RateRow> rates;
    for (size_t l = 0; l + 1 < table.rows.size(); ++l) {
        const StudyRow& a = table.rows[l];
        const StudyRow& b = table.rows[l + 1];
        RateRow r;
        r.v = std::log2(a.err_v / b.err_v);
        r.u_l2 = std::log2(a.err_u_l2 / b.err_u_l2);
        r.u_h1 = std::log2(a.err_u_h1 / b.err_u_h1);
        r.th_l2 = std::log2(a.err_th_l2 / b.err_th_l2);
        r.th_h1 = std::log2(a.err_th_h1 / b.err_th_h1);
        rates.push_back(r);
    }
    return rates;
}

namespace {

using ExactU = std::function<Vec2c(Vec2)>;

// relative solid errors of the leading 3n coefficients against scale * exact
void fill_solid_errors(const FESpace& fe, const Eigen::VectorXcd& coeffs, double scale,
                       StudyRow& row) {
    const int n = fe.num_dofs();
    auto eu = [scale](Vec2 p) -> Vec2c {
        const Vec2 u = manufactured_u(p);
        return {scale * u.x, scale * u.y};
    };
    auto egu = [scale](Vec2 p) -> Mat2c {
        const Eigen::Matrix2d g = scale * manufactured_grad_u(p);
        return {{{g(0, 0), g(0, 1)}, {g(1, 0), g(1, 1)}}};
    };
    auto eth = [scale](Vec2 p) -> Complex { return scale * manufactured_theta(p); };
    auto egth = [scale](Vec2 p) -> Vec2c {
        const Vec2 g = manufactured_grad_theta(p);
        return {scale * g.x, scale * g.y};
    };
    const Eigen::VectorXcd zero_v = Eigen::VectorXcd::Zero(2 * n);
    const Eigen::VectorXcd zero_s = Eigen::VectorXcd::Zero(n);
    row.err_u_l2 = error_l2_vector(fe, coeffs.head(2 * n), eu) / error_l2_vector(fe, zero_v, eu);
    row.err_u_h1 = error_h1_vector(fe, coeffs.head(2 * n), egu) / error_h1_vector(fe, zero_v, egu);
    row.err_th_l2 =
        error_l2_scalar(fe, coeffs.segment(2 * n, n), eth) / error_l2_scalar(fe, zero_s, eth);
    row.err_th_h1 =
        error_h1_scalar(fe, coeffs.segment(2 * n, n), egth) / error_h1_scalar(fe, zero_s, egth);
}

Complex exterior_eval(const CoupledSystem& sys, Complex zeta, const Eigen::VectorXcd& coeffs,
                      Vec2 x) {
    const Eigen::VectorXcd phi = coeffs.segment(sys.off_phi(), sys.m1());
    const Eigen::VectorXcd lam = coeffs.segment(sys.off_lambda(), sys.m2());
    return eval_double_layer(sys.trace_spaces(), zeta, phi, x) -
           eval_single_layer(sys.trace_spaces(), zeta, lam, x);
}

StudyRow frequency_level(const Mesh& mesh, int degree, const MaterialModel& mat,
                         const StudyOptions& opt, const std::vector<Vec2>& probes) {
    const FESpace fe(mesh, degree);
    const BoundaryMesh bm = extract_boundary(mesh);
    const BoundarySpaces sp(bm, degree);
    const CoupledSystem sys(fe, sp, mat, opt.bem);
    const auto solver = sys.factorize(opt.s);
    const Eigen::VectorXcd x = solver->solve(manufactured_frequency_rhs(sys, opt.s));

    StudyRow row;
    row.h = mesh.h();
    row.ndof = sys.size();
    fill_solid_errors(fe, x, 1.0, row);
    const Complex zeta = opt.s / mat.c;
    double dmax = 0.0, emax = 0.0;
    for (const Vec2& p : probes) {
        const Complex vh = exterior_eval(sys, zeta, x, p);
        const Complex ve = exterior_v_freq(p, opt.s);
        dmax = std::max(dmax, std::abs(vh - ve));
        emax = std::max(emax, std::abs(ve));
    }
    row.err_v = dmax / emax;
    return row;
}

StudyRow time_level(const Mesh& mesh, int degree, int nsteps, const MaterialModel& mat,
                    const StudyOptions& opt, const std::vector<Vec2>& probes) {
    const FESpace fe(mesh, degree);
    const BoundaryMesh bm = extract_boundary(mesh);
    const BoundarySpaces sp(bm, degree);
    const CoupledSystem sys(fe, sp, mat, opt.bem);
    const double dt = opt.t_final / nsteps;
    const auto g = manufactured_time_rhs(sys, dt, nsteps);

    CqOptions copt;
    copt.num_threads = opt.threads;
    copt.observer_dim = static_cast<int>(probes.size());
    copt.observer = [&sys, &mat, &probes](Complex s, const Eigen::VectorXcd& uhat) {
        Eigen::VectorXcd out(probes.size());
        for (size_t j = 0; j < probes.size(); ++j)
            out(static_cast<Eigen::Index>(j)) = exterior_eval(sys, s / mat.c, uhat, probes[j]);
        return out;
    };
    const CqSolution sol = cq_solve(
        opt.rule, dt, g,
        [&sys](Complex s, const Eigen::VectorXcd& ghat) { return sys.factorize(s)->solve(ghat); },
        copt);

    StudyRow row;
    row.h = mesh.h();
    row.dt = dt;
    row.ndof = sys.size();
    const double T = nsteps * dt;
    fill_solid_errors(fe, sol.steps.back().cast<Complex>(), ramp(T), row);
    double dmax = 0.0, emax = 0.0;
    for (size_t j = 0; j < probes.size(); ++j) {
        const double vh = sol.observed.back()(static_cast<Eigen::Index>(j));
        const double ve = exterior_v_time(probes[j], T);
        dmax = std::max(dmax, std::abs(vh - ve));
        emax = std::max(emax, std::abs(ve));
    }
    row.err_v = dmax / emax;
    return row;
}

Mesh refined_copy(const Mesh& base, int times) {
    Mesh m = base;
    for (int i = 0; i < times; ++i) m = m.refined();
    return m;
}

} // namespace

StudyTable frequency_h_study(const Mesh& base, const MaterialModel& mat,
                             const StudyOptions& opt) {
    Mesh m = refined_copy(base, opt.base_refine);
    const std::vector<Vec2> probes =
        exterior_probes(extract_boundary(m), opt.probe_count, opt.seed);
    StudyTable table;
    for (int l = 0; l < opt.levels; ++l) {
        StudyRow row = frequency_level(m, opt.degree, mat, opt, probes);
        row.level = l;
        table.rows.push_back(row);
        if (l + 1 < opt.levels) m = m.refined();
    }
    return table;
}

StudyTable frequency_p_study(const Mesh& base, const MaterialModel& mat,
                             const StudyOptions& opt) {
    const Mesh m = refined_copy(base, opt.base_refine);
    const std::vector<Vec2> probes =
        exterior_probes(extract_boundary(m), opt.probe_count, opt.seed);
    StudyTable table;
    for (int k = 1; k <= opt.levels; ++k) {
        StudyRow row = frequency_level(m, k, mat, opt, probes);
        row.level = k;
        table.rows.push_back(row);
    }
    return table;
}

StudyTable time_h_study(const Mesh& base, const MaterialModel& mat, const StudyOptions& opt) {
    Mesh m = refined_copy(base, opt.base_refine);
    const std::vector<Vec2> probes =
        exterior_probes(extract_boundary(m), opt.probe_count, opt.seed);
    StudyTable table;
    for (int l = 0; l < opt.levels; ++l) {
        StudyRow row = time_level(m, opt.degree, opt.steps0 << l, mat, opt, probes);
        row.level = l;
        table.rows.push_back(row);
        if (l + 1 < opt.levels) m = m.refined();
    }
    return table;
}

StudyTable time_p_study(const Mesh& base, const MaterialModel& mat, const StudyOptions& opt) {
    const Mesh m = refined_copy(base, opt.base_refine);
    const std::vector<Vec2> probes =
        exterior_probes(extract_boundary(m), opt.probe_count, opt.seed);
    StudyTable table;
    for (int k = 1; k <= opt.levels; ++k) {
        StudyRow row = time_level(m, k, opt.steps0 << (k - 1), mat, opt, probes);
        row.level = k;
        table.rows.push_back(row);
    }
    return table;
}

std::vector<double> null_field_errors(const Mesh& base, int degree, Complex s, int levels) {
    const std::vector<Vec2> pts = {
        {0.0, 0.0}, {0.3, 0.1}, {-0.3, 0.2}, {0.1, -0.35}, {-0.2, -0.3}};
    std::vector<double> errs;
    Mesh m = base;
    for (int l = 0; l < levels; ++l) {
        const BoundaryMesh bm = extract_boundary(m);
        const BoundarySpaces sp(bm, degree);
        const Eigen::VectorXcd phi =
            sp.interpolate_y([s](Vec2 p) { return exterior_v_freq(p, s); });
        Eigen::VectorXcd lam(sp.num_x_dofs());
        for (int i = 0; i < sp.num_x_dofs(); ++i)
            lam(i) = exterior_dnv_freq(sp.x_dof_point(i), bm.panels[i / degree].normal, s);
        double e = 0.0;
        for (const Vec2& p : pts)
            e = std::max(e, std::abs(eval_double_layer(sp, s, phi, p) -
                                     eval_single_layer(sp, s, lam, p)));
        errs.push_back(e);
        if (l + 1 < levels) m = m.refined();
    }
    return errs;
}

TransientScattering run_plane_pulse(const CoupledSystem& sys, CqRule rule, double dt, int nsteps,
                                    Vec2 direction, const std::vector<Vec2>& field_points,
                                    int threads) {
    const auto g = plane_pulse_rhs(sys, dt, nsteps, direction);
    CqOptions copt;
    copt.num_threads = threads;
    copt.observer_dim = static_cast<int>(field_points.size());
    if (!field_points.empty()) {
        copt.observer = [&sys, &field_points](Complex s, const Eigen::VectorXcd& uhat) {
            Eigen::VectorXcd out(field_points.size());
            for (size_t j = 0; j < field_points.size(); ++j)
                out(static_cast<Eigen::Index>(j)) =
                    exterior_eval(sys, s / sys.material().c, uhat, field_points[j]);
            return out;
        };
    }
    CqSolution sol = cq_solve(
        rule, dt, g,
        [&sys](Complex s, const Eigen::VectorXcd& ghat) { return sys.factorize(s)->solve(ghat); },
        copt);
    TransientScattering out;
    out.dt = dt;
    out.steps = std::move(sol.steps);
    out.field = std::move(sol.observed);
    return out;
}

} // namespace thermocq
