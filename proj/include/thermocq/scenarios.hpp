#pragma once

#include <vector>

#include "thermocq/cq.hpp"
#include "thermocq/system.hpp"

namespace thermocq {

// ---- causal time signals ---------------------------------------------------------

// C^5 smoothed step: 0 for t <= 0, 1 for t >= 1, quintic-times-t^5 blend between
double heaviside_c5(double t);
double heaviside_c5_d1(double t);

// drive of the manufactured solid fields: ramp(t) = heaviside_c5(t) (t^2 + 2t)
double ramp(double t);
double ramp_d1(double t);
double ramp_d2(double t);

// drive of the manufactured exterior field: signal_g(t) = heaviside_c5(t) sin(3t)
double signal_g(double t);
double signal_g_d1(double t);

// incident pressure pulse 3 sin(88 tau) windowed to 88 tau in [0, 0.3]
double plane_pulse(double tau);
double plane_pulse_d1(double tau);

// ---- manufactured fields ---------------------------------------------------------

// smooth solid displacement / temperature used by every convergence study
Vec2 manufactured_u(Vec2 p);
Eigen::Matrix2d manufactured_grad_u(Vec2 p); // (i,j) = d_j u_i
double manufactured_theta(Vec2 p);
Vec2 manufactured_grad_theta(Vec2 p);

// exterior field of a unit source at the origin: K0(s|x|) / 2pi
Complex exterior_v_freq(Vec2 x, Complex s);
Complex exterior_dnv_freq(Vec2 x, Vec2 n, Complex s);

// causal exterior field (2/pi) K0(s|x|) ghat(s) driven by signal_g, evaluated
// through the closed-form inverse transform; zero for t <= |x|
double exterior_v_time(Vec2 x, double t);
double exterior_dtv_time(Vec2 x, double t);
double exterior_dnv_time(Vec2 x, Vec2 n, double t);

// seeded exterior sample points, distance to the boundary within [0.15, 0.6]
std::vector<Vec2> exterior_probes(const BoundaryMesh& bm, int count, unsigned seed);

// ---- manufactured data -----------------------------------------------------------

// frequency data whose exact solution is (manufactured_u, manufactured_theta)
// inside and the source field exterior_v_freq outside
Eigen::VectorXcd manufactured_frequency_rhs(const CoupledSystem& sys, Complex s);

// samples d(0), d(dt), ..., d(nsteps*dt) of the transient data whose exact
// solution is ramp(t) * (u, theta) inside and the signal-driven source field
// outside
std::vector<Eigen::VectorXd> manufactured_time_rhs(const CoupledSystem& sys, double dt,
                                                   int nsteps);

// data of an incident plane pulse travelling along `direction` (|d| = 1)
std::vector<Eigen::VectorXd> plane_pulse_rhs(const CoupledSystem& sys, double dt, int nsteps,
                                             Vec2 direction);

// ---- convergence studies ---------------------------------------------------------

struct StudyRow {
    int level = 0;   // refinement index, or the degree for p studies
    double h = 0.0;
    double dt = 0.0; // 0 for frequency studies
    int ndof = 0;
    double err_v = 0.0;
    double err_u_l2 = 0.0;
    double err_u_h1 = 0.0;
    double err_th_l2 = 0.0;
    double err_th_h1 = 0.0;
};

struct StudyTable {
    std::vector<StudyRow> rows;
};

struct RateRow {
    double v = 0.0, u_l2 = 0.0, u_h1 = 0.0, th_l2 = 0.0, th_h1 = 0.0;
};

// log2 error ratios between consecutive rows; entry l compares rows l and l+1
std::vector<RateRow> convergence_rates(const StudyTable& table);

struct StudyOptions {
    int degree = 1;
    int levels = 4;
    int base_refine = 1;  // refinements applied to the base mesh before level 0
    Complex s{0.0, 2.8};
    CqRule rule = CqRule::BDF2;
    double t_final = 1.5;
    int steps0 = 16;      // time steps at level 0, doubled per level
    int probe_count = 25;
    unsigned seed = 20240101;
    int threads = 1;
    BemQuadratureOptions bem{};
};

// h studies refine mesh (and time step) dyadically per level; p studies keep
// the mesh fixed at base_refine and raise the degree (levels = largest degree),
// the time variant also halving the step per level. All errors are relative.
StudyTable frequency_h_study(const Mesh& base, const MaterialModel& mat, const StudyOptions& opt);
StudyTable frequency_p_study(const Mesh& base, const MaterialModel& mat, const StudyOptions& opt);
StudyTable time_h_study(const Mesh& base, const MaterialModel& mat, const StudyOptions& opt);
StudyTable time_p_study(const Mesh& base, const MaterialModel& mat, const StudyOptions& opt);

// Interior vanishing of the representation built from exterior source-field
// Cauchy data: max |D phi_I - S lambda_I| over interior sample points, one
// value per refinement level.
std::vector<double> null_field_errors(const Mesh& base, int degree, Complex s, int levels);

// ---- scattering run --------------------------------------------------------------

struct TransientScattering {
    double dt = 0.0;
    std::vector<Eigen::VectorXd> steps;  // system dofs per time step
    std::vector<Eigen::VectorXd> field;  // scattered exterior field at the sample points
};

TransientScattering run_plane_pulse(const CoupledSystem& sys, CqRule rule, double dt, int nsteps,
                                    Vec2 direction, const std::vector<Vec2>& field_points,
                                    int threads);

} // namespace thermocq
