#include "thermocq/fem_space.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace thermocq {

namespace {

// monomials x^a y^b with a+b <= k, ordered by total degree then descending a
std::vector<std::array<int, 2>> monomial_exponents(int k) {
    std::vector<std::array<int, 2>> e;
    for (int d = 0; d <= k; ++d)
        for (int a = d; a >= 0; --a) e.push_back({a, d - a});
    return e;
}

std::vector<Vec2> lattice_nodes(int k) {
    std::vector<Vec2> nodes = {{0, 0}, {1, 0}, {0, 1}};
    if (k == 1) return nodes;
    auto frac = [k](int i) { return static_cast<double>(i) / k; };
    for (int i = 1; i < k; ++i) nodes.push_back({frac(i), 0.0});        // v0 -> v1
    for (int i = 1; i < k; ++i) nodes.push_back({frac(k - i), frac(i)}); // v1 -> v2
    for (int i = 1; i < k; ++i) nodes.push_back({0.0, frac(k - i)});     // v2 -> v0
    for (int i = 1; i <= k - 2; ++i)
        for (int j = 1; i + j <= k - 1; ++j) nodes.push_back({frac(i), frac(j)});
    return nodes;
}

// solve V C = I in extended precision; V is small (dim <= 21)
Eigen::MatrixXd invert_long_double(const std::vector<std::vector<long double>>& V) {
    int n = static_cast<int>(V.size());
    std::vector<std::vector<long double>> A(V);
    std::vector<std::vector<long double>> C(
        static_cast<size_t>(n), std::vector<long double>(static_cast<size_t>(n), 0.0L));
    for (int i = 0; i < n; ++i) C[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0L;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
                std::abs(A[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                piv = r;
        std::swap(A[static_cast<size_t>(col)], A[static_cast<size_t>(piv)]);
        std::swap(C[static_cast<size_t>(col)], C[static_cast<size_t>(piv)]);
        long double p = A[static_cast<size_t>(col)][static_cast<size_t>(col)];
        if (p == 0.0L) throw std::runtime_error("singular nodal matrix");
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            long double f = A[static_cast<size_t>(r)][static_cast<size_t>(col)] / p;
            if (f == 0.0L) continue;
            for (int c = 0; c < n; ++c) {
                A[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * A[static_cast<size_t>(col)][static_cast<size_t>(c)];
                C[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * C[static_cast<size_t>(col)][static_cast<size_t>(c)];
            }
        }
    }
    Eigen::MatrixXd M(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            M(r, c) = static_cast<double>(C[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                                          A[static_cast<size_t>(r)][static_cast<size_t>(r)]);
    return M;
}

ReferenceElement build_reference(int k) {
    ReferenceElement re;
    re.degree = k;
    re.nodes = lattice_nodes(k);
    re.dim = static_cast<int>(re.nodes.size());
    auto exps = monomial_exponents(k);
    int n = re.dim;
    std::vector<std::vector<long double>> V(
        static_cast<size_t>(n), std::vector<long double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m) {
            long double x = re.nodes[static_cast<size_t>(i)].x;
            long double y = re.nodes[static_cast<size_t>(i)].y;
            long double v = 1.0L;
            for (int p = 0; p < exps[static_cast<size_t>(m)][0]; ++p) v *= x;
            for (int p = 0; p < exps[static_cast<size_t>(m)][1]; ++p) v *= y;
            V[static_cast<size_t>(i)][static_cast<size_t>(m)] = v;
        }
    // phi_j(node_i) = sum_m coeff(m,j) V(i,m) = delta_ij  =>  coeff = V^{-1}
    re.coeff = invert_long_double(V);
    return re;
}

} // namespace

void ReferenceElement::eval(const Vec2& p, Eigen::VectorXd& values) const {
    auto exps = monomial_exponents(degree);
    Eigen::VectorXd mono(dim);
    for (int m = 0; m < dim; ++m)
        mono(m) = std::pow(p.x, exps[static_cast<size_t>(m)][0]) *
                  std::pow(p.y, exps[static_cast<size_t>(m)][1]);
    values = coeff.transpose() * mono;
}

void ReferenceElement::eval_grad(const Vec2& p, Eigen::MatrixXd& grads) const {
    auto exps = monomial_exponents(degree);
    Eigen::MatrixXd dm(dim, 2);
    for (int m = 0; m < dim; ++m) {
        int a = exps[static_cast<size_t>(m)][0], b = exps[static_cast<size_t>(m)][1];
        dm(m, 0) = a == 0 ? 0.0 : a * std::pow(p.x, a - 1) * std::pow(p.y, b);
        dm(m, 1) = b == 0 ? 0.0 : b * std::pow(p.x, a) * std::pow(p.y, b - 1);
    }
    grads = coeff.transpose() * dm;
}

const ReferenceElement& reference_element(int degree) {
    if (degree < 1 || degree > 5)
        throw std::invalid_argument("reference_element: degree must be 1..5");
    static std::map<int, ReferenceElement> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(degree);
    if (it == cache.end()) it = cache.emplace(degree, build_reference(degree)).first;
    return it->second;
}

FESpace::FESpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
    if (degree < 1 || degree > 5)
        throw std::invalid_argument("FESpace: degree must be 1..5");
    const int k = degree;
    const int nv = mesh.num_vertices();
    const int nt = mesh.num_triangles();
    const int per_edge = k - 1;
    const int per_tri = (k - 1) * (k - 2) / 2;

    std::map<std::pair<int, int>, int> edge_id;
    auto edge_of = [&](int a, int b) {
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = edge_id.find(key);
        if (it != edge_id.end()) return it->second;
        int id = static_cast<int>(edge_id.size());
        edge_id[key] = id;
        edge_key_.push_back({key.first, key.second});
        return id;
    };

    element_dofs_.resize(static_cast<size_t>(nt));
    std::vector<std::array<int, 3>> tri_edge(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        const auto& tr = mesh.triangles[static_cast<size_t>(t)];
        tri_edge[static_cast<size_t>(t)] = {edge_of(tr[0], tr[1]), edge_of(tr[1], tr[2]),
                                            edge_of(tr[2], tr[0])};
    }
    edge_count_ = edge_id.size();
    const int ne = static_cast<int>(edge_count_);
    num_dofs_ = nv + ne * per_edge + nt * per_tri;

    dof_points_.resize(static_cast<size_t>(num_dofs_));
    for (int v = 0; v < nv; ++v) dof_points_[static_cast<size_t>(v)] = mesh.vertex(v);
    for (int e = 0; e < ne; ++e) {
        Vec2 a = mesh.vertex(static_cast<int>(edge_key_[static_cast<size_t>(e)][0]));
        Vec2 b = mesh.vertex(static_cast<int>(edge_key_[static_cast<size_t>(e)][1]));
        for (int j = 1; j <= per_edge; ++j)
            dof_points_[static_cast<size_t>(nv + e * per_edge + (j - 1))] =
                a + (static_cast<double>(j) / k) * (b - a);
    }

    const auto& re = reference_element(k);
    for (int t = 0; t < nt; ++t) {
        const auto& tr = mesh.triangles[static_cast<size_t>(t)];
        auto& dofs = element_dofs_[static_cast<size_t>(t)];
        dofs = {tr[0], tr[1], tr[2]};
        for (int le = 0; le < 3; ++le) {
            int a = tr[static_cast<size_t>(le)], b = tr[static_cast<size_t>((le + 1) % 3)];
            int e = tri_edge[static_cast<size_t>(t)][static_cast<size_t>(le)];
            for (int j = 1; j <= per_edge; ++j) {
                int idx = (a < b) ? (j - 1) : (per_edge - j);
                dofs.push_back(nv + e * per_edge + idx);
            }
        }
        ElementMap em = element_map(t);
        for (int i = 0; i < per_tri; ++i) {
            int local = 3 + 3 * per_edge + i;
            int dof = nv + ne * per_edge + t * per_tri + i;
            dofs.push_back(dof);
            dof_points_[static_cast<size_t>(dof)] =
                em.to_physical(re.nodes[static_cast<size_t>(local)]);
        }
    }

    edge_lookup_.reserve(edge_count_);
    for (int e = 0; e < ne; ++e)
        edge_lookup_.push_back({edge_key_[static_cast<size_t>(e)][0] * nv +
                                    edge_key_[static_cast<size_t>(e)][1],
                                e});
    std::sort(edge_lookup_.begin(), edge_lookup_.end());
}

ElementMap FESpace::element_map(int t) const {
    const auto& tr = mesh_->triangles[static_cast<size_t>(t)];
    Vec2 p0 = mesh_->vertex(tr[0]), p1 = mesh_->vertex(tr[1]), p2 = mesh_->vertex(tr[2]);
    ElementMap m;
    m.v0 = p0;
    m.B[0][0] = p1.x - p0.x;
    m.B[1][0] = p1.y - p0.y;
    m.B[0][1] = p2.x - p0.x;
    m.B[1][1] = p2.y - p0.y;
    m.det = m.B[0][0] * m.B[1][1] - m.B[0][1] * m.B[1][0];
    m.Binv[0][0] = m.B[1][1] / m.det;
    m.Binv[0][1] = -m.B[0][1] / m.det;
    m.Binv[1][0] = -m.B[1][0] / m.det;
    m.Binv[1][1] = m.B[0][0] / m.det;
    return m;
}

int FESpace::find_edge(int a, int b) const {
    long key = static_cast<long>(std::min(a, b)) * mesh_->num_vertices() + std::max(a, b);
    auto it = std::lower_bound(edge_lookup_.begin(), edge_lookup_.end(),
                               std::make_pair(key, -1));
    if (it == edge_lookup_.end() || it->first != key)
        throw std::runtime_error("FESpace: edge not found");
    return it->second;
}

std::vector<int> FESpace::panel_dofs(const Panel& panel) const {
    const int k = degree_;
    std::vector<int> dofs;
    dofs.push_back(panel.v0);
    if (k > 1) {
        int e = find_edge(panel.v0, panel.v1);
        int base = mesh_->num_vertices() + e * (k - 1);
        if (panel.v0 < panel.v1)
            for (int j = 0; j < k - 1; ++j) dofs.push_back(base + j);
        else
            for (int j = k - 2; j >= 0; --j) dofs.push_back(base + j);
    }
    dofs.push_back(panel.v1);
    return dofs;
}

} // namespace thermocq
