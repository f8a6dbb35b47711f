#include "thermocq/bem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thermocq/bessel.hpp"
#include "thermocq/quadrature.hpp"

namespace thermocq {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

using CMat = Eigen::MatrixXcd;

// ---- local polynomial bases -------------------------------------------------

// Lagrange basis coefficients for the given nodes, solved in extended
// precision (coefficients grow quickly with the degree)
std::vector<std::vector<double>> lagrange_coefficients(const std::vector<double>& nodes) {
    const int n = (int)nodes.size();
    std::vector<std::vector<long double>> a(n, std::vector<long double>(2 * n, 0.0L));
    for (int r = 0; r < n; ++r) {
        long double p = 1.0L;
        for (int c = 0; c < n; ++c) {
            a[r][c] = p;
            p *= (long double)nodes[r];
        }
        a[r][n + r] = 1.0L;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs((double)a[r][col]) > std::fabs((double)a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        if (a[col][col] == 0.0L)
            throw std::runtime_error("lagrange_coefficients: singular node set");
        const long double d = a[col][col];
        for (int c = col; c < 2 * n; ++c) a[col][c] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const long double f = a[r][col];
            if (f == 0.0L) continue;
            for (int c = col; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<std::vector<double>> coeff(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) coeff[i][m] = (double)a[m][n + i];
    return coeff;
}

template <class S>
S poly_eval(const std::vector<double>& c, S x) {
    S r(0);
    for (int m = (int)c.size() - 1; m >= 0; --m) r = r * x + S(c[m]);
    return r;
}

// ---- pair geometry ----------------------------------------------------------

double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double den = ab.squared_norm();
    double t = den > 0.0 ? dot(p - a, ab) / den : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + ab * t);
}

double segment_distance(const Panel& A, const Panel& B) {
    return std::min(std::min(point_segment_dist(A.a, B.a, B.b), point_segment_dist(A.b, B.a, B.b)),
                    std::min(point_segment_dist(B.a, A.a, A.b), point_segment_dist(B.b, A.a, A.b)));
}

// ---- quadrature rules on panels ----------------------------------------------

struct QuadPoint {
    double t;  // panel parameter in [0,1]
    double w;  // weight including the arclength jacobian
    Vec2 x;
};

void append_gauss(std::vector<QuadPoint>& out, const Panel& P, double t0, double t1, int n) {
    const Rule1D g = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * g.nodes[i];
        out.push_back({t, (t1 - t0) * g.weights[i] * P.length, P.point(t)});
    }
}

// uniform subdivision count resolving kernel oscillation and mild proximity
int subdivision_count(double panel_len, double dist, Complex zeta, int n, int cap) {
    const double periods = std::abs(zeta) * panel_len / kTwoPi;
    int m = (int)std::ceil(std::max(1.0, 2.5 * periods / n));
    if (dist > 0.0) m = std::max(m, (int)std::ceil(0.8 * panel_len / dist));
    return std::min(m, cap);
}

std::vector<QuadPoint> panel_rule_regular(const Panel& P, double dist, Complex zeta, int n, int cap) {
    const int m = subdivision_count(P.length, dist, zeta, n, cap);
    std::vector<QuadPoint> out;
    out.reserve((size_t)m * n);
    for (int j = 0; j < m; ++j)
        append_gauss(out, P, (double)j / m, (double)(j + 1) / m, n);
    return out;
}

// geometric refinement toward a shared corner; the cell touching the corner
// contributes O(2^-levels) of the pair integral, so the depth targets roundoff
// rather than the kernel concentration scale.  Cells below level 14 carry a
// 2^-14 fraction of the integral, so a 3-point rule suffices there.
std::vector<QuadPoint> panel_rule_graded(const Panel& P, bool corner_at_start, Complex zeta, int n) {
    int levels = std::max(40, (int)std::ceil(std::log2(2.0 + std::abs(zeta) * P.length)) + 3);
    levels = std::min(levels, 48);
    std::vector<QuadPoint> out;
    out.reserve((size_t)levels * n);
    double hi = 1.0;
    for (int j = 0; j < levels; ++j) {
        const double lo = (j == levels - 1) ? 0.0 : hi * 0.5;
        const double a = corner_at_start ? lo : 1.0 - hi;
        const double b = corner_at_start ? hi : 1.0 - lo;
        append_gauss(out, P, a, b, j < 14 ? n : std::min(n, 3));
        hi = lo;
    }
    return out;
}

std::vector<std::vector<double>> tabulate(const std::vector<std::vector<double>>& basis,
                                          const std::vector<QuadPoint>& pts) {
    std::vector<std::vector<double>> v(basis.size(), std::vector<double>(pts.size()));
    for (size_t f = 0; f < basis.size(); ++f)
        for (size_t i = 0; i < pts.size(); ++i) v[f][i] = poly_eval(basis[f], pts[i].t);
    return v;
}

// ---- separated and corner-touching pairs -------------------------------------

struct PairBlocks {
    CMat V, K, Kp, W;
};

PairBlocks integrate_pair(const BoundarySpaces& sp, const Panel& Pp, const Panel& Pq,
                          const std::vector<QuadPoint>& rp, const std::vector<QuadPoint>& rq,
                          Complex zeta, double skip) {
    const int k = sp.degree();
    PairBlocks B;
    B.V = CMat::Zero(k, k);
    B.K = CMat::Zero(k, k + 1);
    B.Kp = CMat::Zero(k + 1, k);
    B.W = CMat::Zero(k + 1, k + 1);
    const auto Xp = tabulate(sp.x_basis(), rp), Xq = tabulate(sp.x_basis(), rq);
    const auto Yp = tabulate(sp.y_basis(), rp), Yq = tabulate(sp.y_basis(), rq);
    const auto Dp = tabulate(sp.dy_basis(), rp), Dq = tabulate(sp.dy_basis(), rq);
    const double nn = dot(Pp.normal, Pq.normal);
    const double inv_h = 1.0 / (Pp.length * Pq.length);
    const Complex z2 = zeta * zeta;
    // point pairs past this separation contribute < e^-skip of the kernel scale;
    // same damping cutoff the caller applies to whole panel pairs
    const double rskip =
        zeta.real() > 0.0 ? skip / zeta.real() : std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rp.size(); ++i) {
        for (size_t j = 0; j < rq.size(); ++j) {
            const Vec2 d = rp[i].x - rq[j].x;
            const double r = d.norm();
            if (r > rskip) continue;
            const BesselK01 kb = bessel_k01(zeta * r);
            const double w = rp[i].w * rq[j].w;
            const Complex e = kb.k0 * (w / kTwoPi);
            const Complex f1 = zeta * kb.k1 * (w / (kTwoPi * r));
            const Complex kker = f1 * dot(d, Pq.normal);    // dE/dn_y
            const Complex kpker = -f1 * dot(d, Pp.normal);  // dE/dn_x
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) B.V(a, b) += e * (Xp[a][i] * Xq[b][j]);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b <= k; ++b) B.K(a, b) += kker * (Xp[a][i] * Yq[b][j]);
            for (int a = 0; a <= k; ++a)
                for (int b = 0; b < k; ++b) B.Kp(a, b) += kpker * (Yp[a][i] * Xq[b][j]);
            for (int a = 0; a <= k; ++a)
                for (int b = 0; b <= k; ++b)
                    B.W(a, b) += e * (Dp[a][i] * Dq[b][j] * inv_h + z2 * nn * (Yp[a][i] * Yq[b][j]));
        }
    }
    return B;
}

// ---- diagonal pairs -----------------------------------------------------------

// B(a,b) += factor * G_ab(w) with G_ab(w) = int_0^{1-w} f_a(p+w) g_b(p) + f_a(p) g_b(p+w) dp.
// w may be complex (rotated contour); the inner rule must be exact for the
// basis product degree.
void accumulate_self(CMat& B, const std::vector<std::vector<double>>& f,
                     const std::vector<std::vector<double>>& g, Complex w, Complex factor,
                     const Rule1D& inner) {
    const int nf = (int)f.size(), ng = (int)g.size();
    const Complex len = Complex(1.0, 0.0) - w;
    std::vector<Complex> fp(nf), fpw(nf), gp(ng), gpw(ng);
    for (size_t m = 0; m < inner.nodes.size(); ++m) {
        const Complex p = len * inner.nodes[m];
        const Complex wm = factor * len * inner.weights[m];
        for (int a = 0; a < nf; ++a) {
            fp[a] = poly_eval(f[a], p);
            fpw[a] = poly_eval(f[a], p + w);
        }
        for (int b = 0; b < ng; ++b) {
            gp[b] = poly_eval(g[b], p);
            gpw[b] = poly_eval(g[b], p + w);
        }
        for (int a = 0; a < nf; ++a)
            for (int b = 0; b < ng; ++b) B(a, b) += wm * (fpw[a] * gp[b] + fp[a] * gpw[b]);
    }
}

// (h^2/2pi) int_0^1 int_0^1 K0(lambda |t-tau|) f_a(t) g_b(tau) dt dtau via the
// difference-variable reduction.  The [0,1] contour in w = |t-tau| is rotated
// onto the ray where lambda w is real (log splitting handles the endpoint)
// plus an arc on |w| = 1 that carries the remaining analytic continuation.
CMat self_weighted_gram(const std::vector<std::vector<double>>& f,
                        const std::vector<std::vector<double>>& g, Complex lambda, double h,
                        int nlog, const Rule1D& inner) {
    CMat B = CMat::Zero((int)f.size(), (int)g.size());
    const double alam = std::abs(lambda);
    const double beta = std::atan2(lambda.imag(), lambda.real());
    const Complex eib = std::exp(Complex(0.0, -beta));
    const double pref = h * h / kTwoPi;

    // singular head of the ray: K0(alam sig) split into -log and entire parts
    const double s1 = std::min(1.0, 4.0 / alam);
    {
        const Rule1D lg = gauss_log(nlog);
        for (size_t i = 0; i < lg.nodes.size(); ++i) {
            const Complex i0 = bessel_i0(Complex(alam * s1 * lg.nodes[i]));
            accumulate_self(B, f, g, eib * (s1 * lg.nodes[i]), pref * eib * s1 * lg.weights[i] * i0,
                            inner);
        }
        const Rule1D gr = gauss_legendre(std::max(12, nlog));
        const double lgs = std::log(alam * s1);
        for (size_t i = 0; i < gr.nodes.size(); ++i) {
            const Complex arg(alam * s1 * gr.nodes[i]);
            const Complex smooth = bessel_k0_smooth(arg) - lgs * bessel_i0(arg);
            accumulate_self(B, f, g, eib * (s1 * gr.nodes[i]),
                            pref * eib * s1 * gr.weights[i] * smooth, inner);
        }
    }

    // decaying tail of the ray on geometrically doubled segments
    if (s1 < 1.0) {
        const double smax = std::min(1.0, 45.0 / alam);
        const Rule1D gr = gauss_legendre(10);
        double lo = s1;
        while (lo < smax * (1.0 - 1e-14)) {
            const double hi2 = std::min(smax, 2.0 * lo);
            for (size_t i = 0; i < gr.nodes.size(); ++i) {
                const double sig = lo + (hi2 - lo) * gr.nodes[i];
                const Complex k0 = bessel_k01(Complex(alam * sig)).k0;
                accumulate_self(B, f, g, eib * sig, pref * eib * (hi2 - lo) * gr.weights[i] * k0,
                                inner);
            }
            lo = hi2;
        }
    }

    // arc w = exp(-i beta fr), fr from 1 to 0, graded toward fr = 0 where the
    // kernel concentrates for large |lambda|
    if (beta != 0.0 && lambda.real() <= 45.0) {
        const int levels = std::clamp((int)std::ceil(std::log2(2.0 + alam)), 2, 24);
        const Rule1D ga = gauss_legendre(10);
        double hi = 1.0;
        for (int j = 0; j < levels; ++j) {
            const double lo = (j == levels - 1) ? 0.0 : hi * 0.5;
            for (size_t i = 0; i < ga.nodes.size(); ++i) {
                const double fr = lo + (hi - lo) * ga.nodes[i];
                const Complex w = std::exp(Complex(0.0, -beta * fr));
                const Complex k0 = bessel_k01(lambda * w).k0;
                const Complex jac = Complex(0.0, 1.0) * w * (beta * (hi - lo) * ga.weights[i]);
                accumulate_self(B, f, g, w, pref * k0 * jac, inner);
            }
            hi = lo;
        }
    }
    return B;
}

int find_shared_vertex(const Panel& A, const Panel& B) {
    if (A.v0 == B.v0 || A.v0 == B.v1) return A.v0;
    if (A.v1 == B.v0 || A.v1 == B.v1) return A.v1;
    return -1;
}

} // namespace

// ---- trace spaces -------------------------------------------------------------

BoundarySpaces::BoundarySpaces(const BoundaryMesh& bm, int degree) : bm_(&bm), k_(degree) {
    if (degree < 1 || degree > 8)
        throw std::invalid_argument("BoundarySpaces: degree must be in [1,8]");
    std::vector<double> ynodes(k_ + 1);
    for (int i = 0; i <= k_; ++i) ynodes[i] = (double)i / k_;
    y_coeff_ = lagrange_coefficients(ynodes);
    dy_coeff_.assign(k_ + 1, std::vector<double>(k_, 0.0));
    for (int i = 0; i <= k_; ++i)
        for (int m = 1; m <= k_; ++m) dy_coeff_[i][m - 1] = m * y_coeff_[i][m];
    const Rule1D gx = gauss_legendre(k_);
    x_coeff_ = lagrange_coefficients(gx.nodes);

    const int np = bm.num_panels();
    y_dofs_.resize(np);
    y_points_.resize((size_t)k_ * np);
    x_points_.resize((size_t)k_ * np);
    for (int l = 0; l < bm.num_loops(); ++l) {
        const int begin = bm.loop_offsets[l], end = bm.loop_offsets[l + 1];
        const int ndl = k_ * (end - begin);
        for (int p = begin; p < end; ++p) {
            y_dofs_[p].resize(k_ + 1);
            for (int i = 0; i <= k_; ++i)
                y_dofs_[p][i] = k_ * begin + ((p - begin) * k_ + i) % ndl;
            for (int i = 0; i < k_; ++i)
                y_points_[y_dofs_[p][i]] = bm.panels[p].point((double)i / k_);
        }
    }
    for (int p = 0; p < np; ++p)
        for (int i = 0; i < k_; ++i) x_points_[(size_t)p * k_ + i] = bm.panels[p].point(gx.nodes[i]);
}

std::vector<int> BoundarySpaces::x_panel_dofs(int p) const {
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) d[i] = p * k_ + i;
    return d;
}

// ---- Galerkin assembly ----------------------------------------------------------

CalderonMatrices assemble_calderon(const BoundarySpaces& sp, Complex zeta,
                                   const BemQuadratureOptions& opt) {
    if (!(zeta.real() >= 0.0) || zeta == Complex(0.0, 0.0))
        throw std::invalid_argument("assemble_calderon: need Re zeta >= 0, zeta != 0");
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    const int np = bm.num_panels();
    const int M1 = sp.num_y_dofs(), M2 = sp.num_x_dofs();
    const int nreg = opt.gauss_regular > 0 ? opt.gauss_regular : k + 4;
    const int nadj = opt.gauss_adjacent > 0 ? opt.gauss_adjacent : k + 3;
    const int nlog = opt.gauss_log > 0 ? opt.gauss_log : std::min(16, k + 8);
    const Rule1D inner = gauss_legendre(k + 1);

    CalderonMatrices M;
    M.V = CMat::Zero(M2, M2);
    M.K = CMat::Zero(M2, M1);
    M.Kp = CMat::Zero(M1, M2);
    M.W = CMat::Zero(M1, M1);

    for (int p = 0; p < np; ++p) {
        const Panel& Pp = bm.panels[p];
        const std::vector<int>& ydp = sp.y_panel_dofs(p);
        for (int q = 0; q < np; ++q) {
            const Panel& Pq = bm.panels[q];
            const std::vector<int>& ydq = sp.y_panel_dofs(q);
            if (p == q) {
                const Complex lam = zeta * Pp.length;
                const CMat Vs = self_weighted_gram(sp.x_basis(), sp.x_basis(), lam, Pp.length, nlog, inner);
                const CMat Wd = self_weighted_gram(sp.dy_basis(), sp.dy_basis(), lam, Pp.length, nlog, inner);
                const CMat Wm = self_weighted_gram(sp.y_basis(), sp.y_basis(), lam, Pp.length, nlog, inner);
                const double inv_h = 1.0 / (Pp.length * Pp.length);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) M.V(p * k + a, q * k + b) += Vs(a, b);
                for (int a = 0; a <= k; ++a)
                    for (int b = 0; b <= k; ++b)
                        M.W(ydp[a], ydq[b]) += Wd(a, b) * inv_h + zeta * zeta * Wm(a, b);
                continue;
            }
            PairBlocks B;
            const int shared = find_shared_vertex(Pp, Pq);
            if (shared >= 0) {
                const auto rp = panel_rule_graded(Pp, shared == Pp.v0, zeta, nadj);
                const auto rq = panel_rule_graded(Pq, shared == Pq.v0, zeta, nadj);
                B = integrate_pair(sp, Pp, Pq, rp, rq, zeta, opt.skip_exponent);
            } else {
                const double d = segment_distance(Pp, Pq);
                if (zeta.real() * d > opt.skip_exponent) continue;
                const auto rp = panel_rule_regular(Pp, d, zeta, nreg, opt.max_subdivision);
                const auto rq = panel_rule_regular(Pq, d, zeta, nreg, opt.max_subdivision);
                B = integrate_pair(sp, Pp, Pq, rp, rq, zeta, opt.skip_exponent);
            }
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) M.V(p * k + a, q * k + b) += B.V(a, b);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b <= k; ++b) M.K(p * k + a, ydq[b]) += B.K(a, b);
            for (int a = 0; a <= k; ++a)
                for (int b = 0; b < k; ++b) M.Kp(ydp[a], q * k + b) += B.Kp(a, b);
            for (int a = 0; a <= k; ++a)
                for (int b = 0; b <= k; ++b) M.W(ydp[a], ydq[b]) += B.W(a, b);
        }
    }
    return M;
}

Eigen::MatrixXd assemble_cross_mass(const BoundarySpaces& sp) {
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(sp.num_y_dofs(), sp.num_x_dofs());
    const Rule1D g = gauss_legendre(k + 2);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const std::vector<int>& yd = sp.y_panel_dofs(p);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i], w = g.weights[i] * P.length;
            for (int a = 0; a <= k; ++a) {
                const double ya = poly_eval(sp.y_basis()[a], t);
                for (int b = 0; b < k; ++b)
                    M(yd[a], p * k + b) += w * ya * poly_eval(sp.x_basis()[b], t);
            }
        }
    }
    return M;
}

Eigen::MatrixXd assemble_y_mass(const BoundarySpaces& sp) {
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(sp.num_y_dofs(), sp.num_y_dofs());
    const Rule1D g = gauss_legendre(k + 2);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const std::vector<int>& yd = sp.y_panel_dofs(p);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i], w = g.weights[i] * P.length;
            for (int a = 0; a <= k; ++a) {
                const double ya = poly_eval(sp.y_basis()[a], t);
                for (int b = 0; b <= k; ++b)
                    M(yd[a], yd[b]) += w * ya * poly_eval(sp.y_basis()[b], t);
            }
        }
    }
    return M;
}

Eigen::VectorXcd project_onto_x(const BoundarySpaces& sp, const std::function<Complex(Vec2)>& f) {
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sp.num_x_dofs());
    const Rule1D g = gauss_legendre(k + 6);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i], w = g.weights[i] * P.length;
            const Complex fv = f(P.point(t));
            for (int b = 0; b < k; ++b)
                v(p * k + b) += w * fv * poly_eval(sp.x_basis()[b], t);
        }
    }
    return v;
}

Eigen::VectorXcd project_onto_y(const BoundarySpaces& sp, const std::function<Complex(Vec2)>& f) {
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sp.num_y_dofs());
    const Rule1D g = gauss_legendre(k + 6);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const std::vector<int>& yd = sp.y_panel_dofs(p);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i], w = g.weights[i] * P.length;
            const Complex fv = f(P.point(t));
            for (int a = 0; a <= k; ++a) v(yd[a]) += w * fv * poly_eval(sp.y_basis()[a], t);
        }
    }
    return v;
}

Eigen::VectorXcd project_onto_y_n(const BoundarySpaces& sp,
                                  const std::function<Complex(Vec2, Vec2)>& f) {
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sp.num_y_dofs());
    const Rule1D g = gauss_legendre(k + 6);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const std::vector<int>& yd = sp.y_panel_dofs(p);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = g.nodes[i], w = g.weights[i] * P.length;
            const Complex fv = f(P.point(t), P.normal);
            for (int a = 0; a <= k; ++a) v(yd[a]) += w * fv * poly_eval(sp.y_basis()[a], t);
        }
    }
    return v;
}

// ---- layer potentials ------------------------------------------------------------

namespace {

template <class Kernel>
Complex eval_layer(const BoundarySpaces& sp, Complex zeta, const Eigen::VectorXcd& density,
                   bool y_space, Vec2 x, Kernel&& kernel) {
    const BoundaryMesh& bm = sp.boundary();
    const int k = sp.degree();
    Complex acc(0.0, 0.0);
    for (int p = 0; p < bm.num_panels(); ++p) {
        const Panel& P = bm.panels[p];
        const double d = point_segment_dist(x, P.a, P.b);
        if (d < 1e-12)
            throw std::invalid_argument("eval_layer: point too close to the boundary");
        if (zeta.real() * d > 45.0) continue;
        std::vector<QuadPoint> r;
        const int m = subdivision_count(P.length, d, zeta, k + 4, 64);
        for (int j = 0; j < m; ++j) append_gauss(r, P, (double)j / m, (double)(j + 1) / m, k + 4);
        for (const QuadPoint& qp : r) {
            Complex dens(0.0, 0.0);
            if (y_space) {
                const std::vector<int>& yd = sp.y_panel_dofs(p);
                for (int a = 0; a <= k; ++a) dens += density(yd[a]) * poly_eval(sp.y_basis()[a], qp.t);
            } else {
                for (int a = 0; a < k; ++a)
                    dens += density(p * k + a) * poly_eval(sp.x_basis()[a], qp.t);
            }
            acc += qp.w * dens * kernel(x, qp.x, P.normal);
        }
    }
    return acc;
}

} // namespace

Complex eval_single_layer(const BoundarySpaces& sp, Complex zeta, const Eigen::VectorXcd& lambda,
                          Vec2 x) {
    return eval_layer(sp, zeta, lambda, false, x, [zeta](Vec2 xp, Vec2 y, Vec2) {
        return bessel_k01(zeta * dist(xp, y)).k0 / kTwoPi;
    });
}

Complex eval_double_layer(const BoundarySpaces& sp, Complex zeta, const Eigen::VectorXcd& phi,
                          Vec2 x) {
    return eval_layer(sp, zeta, phi, true, x, [zeta](Vec2 xp, Vec2 y, Vec2 n) {
        const Vec2 d = xp - y;
        const double r = d.norm();
        return zeta * bessel_k01(zeta * r).k1 * dot(d, n) / (kTwoPi * r);
    });
}

} // namespace thermocq
