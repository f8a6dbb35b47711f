#include "thermocq/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace thermocq {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5E", x);
    return buf;
}

std::string fmt_time_label(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

Eigen::Matrix2d voigt(const std::array<double, 3>& v) {
    Eigen::Matrix2d m;
    m << v[0], v[2], v[2], v[1];
    return m;
}

bool table_is_finite(const StudyTable& t) {
    for (const StudyRow& r : t.rows) {
        for (double e : {r.err_v, r.err_u_l2, r.err_u_h1, r.err_th_l2, r.err_th_h1})
            if (!std::isfinite(e)) return false;
    }
    return true;
}

} // namespace

MaterialModel resolve_material(const RunConfig& cfg) {
    std::string name = cfg.material;
    if (name.empty()) name = cfg.study == StudyKind::Scatter ? "pentagon" : "manufactured";
    MaterialModel mat = material_preset(name);
    const MaterialOverrides& o = cfg.overrides;
    if (o.rho) mat.rho = constant_scalar(*o.rho);
    if (o.lambda) mat.lambda = *o.lambda;
    if (o.mu) mat.mu = *o.mu;
    if (o.rho_f) mat.rho_f = *o.rho_f;
    if (o.c) mat.c = *o.c;
    if (o.zeta) mat.zeta = constant_tensor(voigt(*o.zeta));
    if (o.kappa) mat.kappa = constant_tensor(voigt(*o.kappa));
    if (o.eta) mat.eta = constant_tensor(voigt(*o.eta));
    return mat;
}

std::string resolve_mesh_path(const std::string& mesh) {
    if (mesh == "hexagon" || mesh == "pentagon")
        return std::string(THERMOCQ_DATA_DIR) + "/" + mesh + ".mesh";
    return mesh;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("THERMOCQ_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::string format_report(const StudyTable& table) {
    std::string out = "level,h,dt,ndof,err_v,err_uL2,err_uH1,err_thL2,err_thH1,"
                      "ecr_v,ecr_uL2,ecr_uH1,ecr_thL2,ecr_thH1\n";
    const std::vector<RateRow> rates = convergence_rates(table);
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const StudyRow& r = table.rows[i];
        out += std::to_string(r.level) + "," + fmt(r.h) + "," + fmt(r.dt) + "," +
               std::to_string(r.ndof) + "," + fmt(r.err_v) + "," + fmt(r.err_u_l2) + "," +
               fmt(r.err_u_h1) + "," + fmt(r.err_th_l2) + "," + fmt(r.err_th_h1);
        if (i == 0) {
            out += ",,,,,";
        } else {
            const RateRow& e = rates[i - 1];
            out += "," + fmt(e.v) + "," + fmt(e.u_l2) + "," + fmt(e.u_h1) + "," + fmt(e.th_l2) +
                   "," + fmt(e.th_h1);
        }
        out += "\n";
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int run_scatter(const RunConfig& cfg, const MaterialModel& mat, std::ostream& log) {
    const Mesh base = load_mesh(resolve_mesh_path(cfg.mesh));
    Mesh mesh = base;
    for (int i = 0; i < cfg.refine; ++i) mesh = mesh.refined();
    const FESpace fe(mesh, cfg.degree);
    const BoundaryMesh bm = extract_boundary(mesh);
    const BoundarySpaces sp(bm, cfg.degree);
    const CoupledSystem sys(fe, sp, mat);

    const double T = cfg.final_time();
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.01;
    const int nsteps = std::max(2, static_cast<int>(T / dt + 0.5));
    const CqRule rule = cfg.scheme == "trap" ? CqRule::Trapezoidal : CqRule::BDF2;
    const Vec2 dir = cfg.direction / cfg.direction.norm();

    // acoustic sampling grid: boundary bounding box inflated, interior removed
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const Panel& p : bm.panels) {
        xlo = std::min({xlo, p.a.x, p.b.x});
        xhi = std::max({xhi, p.a.x, p.b.x});
        ylo = std::min({ylo, p.a.y, p.b.y});
        yhi = std::max({yhi, p.a.y, p.b.y});
    }
    const double margin = 0.85;
    xlo -= margin;
    ylo -= margin;
    xhi += margin;
    yhi += margin;
    const int grid_n = 61;
    std::vector<Vec2> field_points;
    for (int iy = 0; iy < grid_n; ++iy)
        for (int ix = 0; ix < grid_n; ++ix) {
            const Vec2 p{xlo + (xhi - xlo) * ix / (grid_n - 1),
                         ylo + (yhi - ylo) * iy / (grid_n - 1)};
            if (inside_solid(bm, p)) continue;
            if (distance_to_boundary(bm, p) < 0.06) continue;
            field_points.push_back(p);
        }

    log << "scatter: ndof=" << sys.size() << " steps=" << nsteps << " dt=" << dt
        << " field points=" << field_points.size() << "\n";
    TransientScattering run =
        run_plane_pulse(sys, rule, dt, nsteps, dir, field_points, resolve_threads(cfg.threads));

    // the data builder uses the unit-preset pulse; solutions scale linearly
    const double scale = cfg.amplitude / 3.0;

    const std::filesystem::path out(cfg.outdir);
    for (double tsnap : cfg.snapshots) {
        if (tsnap > T + 0.5 * dt) {
            log << "snapshot " << tsnap << " beyond t_end, skipped\n";
            continue;
        }
        const int n = std::min(nsteps, std::max(0, static_cast<int>(tsnap / dt + 0.5)));
        const double tn = n * dt;
        const std::string label = fmt_time_label(tsnap);

        std::string snap = "x,y,re,im\n";
        const Eigen::VectorXd& fld = run.field[static_cast<size_t>(n)];
        for (size_t j = 0; j < field_points.size(); ++j) {
            const Vec2& p = field_points[j];
            const double incident = scale * plane_pulse(tn - dot(p, dir));
            const double total = scale * fld(static_cast<Eigen::Index>(j)) + incident;
            snap += fmt(p.x) + "," + fmt(p.y) + "," + fmt(total) + "," + fmt(0.0) + "\n";
        }
        write_file(out / ("snap_" + label + ".csv"), snap);

        std::string solid = "x,y,ux,uy,theta\n";
        const Eigen::VectorXd& u = run.steps[static_cast<size_t>(n)];
        for (int i = 0; i < fe.num_dofs(); ++i) {
            const Vec2 p = fe.dof_point(i);
            solid += fmt(p.x) + "," + fmt(p.y) + "," + fmt(scale * u(2 * i)) + "," +
                     fmt(scale * u(2 * i + 1)) + "," + fmt(scale * u(sys.off_theta() + i)) + "\n";
        }
        write_file(out / ("solid_" + label + ".csv"), solid);
        log << "snapshot t=" << label << " (step " << n << ") written\n";
    }

    StudyTable table;
    StudyRow row;
    row.level = 0;
    row.h = mesh.h();
    row.dt = dt;
    row.ndof = sys.size();
    table.rows.push_back(row);
    write_file(out / "report.csv", format_report(table));
    return 0;
}

} // namespace

int run_study(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(cfg.outdir);
    std::ofstream log(std::filesystem::path(cfg.outdir) / "run.log");
    log << "configuration:\n" << describe(cfg);
    try {
        const MaterialModel mat = resolve_material(cfg);
        int code = 0;
        if (cfg.study == StudyKind::Scatter) {
            code = run_scatter(cfg, mat, log);
        } else {
            const Mesh base = load_mesh(resolve_mesh_path(cfg.mesh));
            StudyOptions opt;
            opt.degree = cfg.degree;
            opt.levels = cfg.levels;
            opt.base_refine = cfg.refine;
            opt.s = cfg.s;
            opt.rule = cfg.scheme == "trap" ? CqRule::Trapezoidal : CqRule::BDF2;
            opt.t_final = cfg.final_time();
            opt.steps0 = cfg.first_level_steps();
            opt.seed = cfg.seed;
            opt.threads = resolve_threads(cfg.threads);

            StudyTable table;
            switch (cfg.study) {
                case StudyKind::FreqH: table = frequency_h_study(base, mat, opt); break;
                case StudyKind::FreqP: table = frequency_p_study(base, mat, opt); break;
                case StudyKind::TimeH: table = time_h_study(base, mat, opt); break;
                case StudyKind::TimeP: table = time_p_study(base, mat, opt); break;
                case StudyKind::Scatter: break;
            }
            for (const StudyRow& r : table.rows)
                log << "level " << r.level << ": h=" << r.h << " dt=" << r.dt
                    << " ndof=" << r.ndof << " err_v=" << r.err_v << " err_uL2=" << r.err_u_l2
                    << " err_uH1=" << r.err_u_h1 << " err_thL2=" << r.err_th_l2
                    << " err_thH1=" << r.err_th_h1 << "\n";
            if (!table_is_finite(table)) {
                log << "non-finite error entries, failing\n";
                code = 3;
            }
            write_file(std::filesystem::path(cfg.outdir) / "report.csv", format_report(table));
        }
        const auto dt = std::chrono::steady_clock::now() - t0;
        log << "wall time "
            << std::chrono::duration_cast<std::chrono::milliseconds>(dt).count() / 1000.0
            << " s\nexit " << code << "\n";
        return code;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\nexit 3\n";
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

void dump_cq_weights(const std::string& scheme, double dt, int n) {
    if (scheme != "bdf2" && scheme != "trap")
        throw ConfigError("cq-weights: scheme must be bdf2 or trap");
    if (dt <= 0.0) throw ConfigError("cq-weights: dt must be positive");
    if (n < 1 || n > 4096) throw ConfigError("cq-weights: n must be in 1..4096");
    const CqRule rule = scheme == "trap" ? CqRule::Trapezoidal : CqRule::BDF2;
    const auto w1 = cq_weights(rule, [](Complex s) { return s; }, n, dt);
    const auto w2 = cq_weights(rule, [](Complex s) { return s * s; }, n, dt);
    std::printf("# %s dt=%g, weights of the symbols s and s^2\n", scheme.c_str(), dt);
    std::printf("%4s %24s %24s\n", "n", "w[s]", "w[s^2]");
    for (int i = 0; i < n; ++i)
        std::printf("%4d %24.15E %24.15E\n", i, w1[static_cast<size_t>(i)].real(),
                    w2[static_cast<size_t>(i)].real());
}

} // namespace thermocq
