#include "thermocq/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace thermocq {

double Mesh::triangle_area(int t) const {
    const auto& tri = triangles[static_cast<size_t>(t)];
    return signed_area(vertex(tri[0]), vertex(tri[1]), vertex(tri[2]));
}

double Mesh::total_area() const {
    double a = 0.0;
    for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
    return a;
}

double Mesh::h() const {
    double hmax = 0.0;
    for (const auto& e : boundary_edges)
        hmax = std::max(hmax, dist(vertex(e[0]), vertex(e[1])));
    return hmax;
}

namespace {

std::string strip_comments(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_comment = false;
    for (char c : text) {
        if (c == '#') in_comment = true;
        if (c == '\n') in_comment = false;
        out.push_back(in_comment ? ' ' : c);
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw std::runtime_error("mesh '" + origin + "': " + msg);
}

// edges of triangle (v0,v1,v2) in orientation order
std::array<std::array<int, 2>, 3> tri_edges(const std::array<int, 3>& t) {
    return {{{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}}};
}

std::vector<std::array<int, 2>> derive_boundary_edges(const Mesh& mesh) {
    // count undirected occurrences; boundary edges occur in exactly one triangle
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : mesh.triangles)
        for (const auto& e : tri_edges(t))
            count[{std::min(e[0], e[1]), std::max(e[0], e[1])}]++;
    std::vector<std::array<int, 2>> edges;
    for (const auto& t : mesh.triangles)
        for (const auto& e : tri_edges(t))
            if (count[{std::min(e[0], e[1]), std::max(e[0], e[1])}] == 1)
                edges.push_back(e); // keep triangle orientation: solid on the left
    return edges;
}

} // namespace

Mesh parse_mesh(const std::string& text, const std::string& origin) {
    std::istringstream in(strip_comments(text));
    long nv = -1, nt = -1, nb = -1;
    if (!(in >> nv >> nt >> nb)) fail(origin, "missing 'nv nt nb' header");
    if (nv < 3 || nt < 1 || nb < 0) fail(origin, "implausible header counts");

    Mesh mesh;
    mesh.vertices.resize(static_cast<size_t>(nv));
    for (long i = 0; i < nv; ++i)
        if (!(in >> mesh.vertices[static_cast<size_t>(i)].x >>
              mesh.vertices[static_cast<size_t>(i)].y))
            fail(origin, "truncated vertex list");

    mesh.triangles.resize(static_cast<size_t>(nt));
    for (long i = 0; i < nt; ++i) {
        auto& t = mesh.triangles[static_cast<size_t>(i)];
        if (!(in >> t[0] >> t[1] >> t[2])) fail(origin, "truncated triangle list");
        for (int v : t)
            if (v < 0 || v >= nv) fail(origin, "triangle vertex index out of range");
        double a = signed_area(mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2]));
        if (a == 0.0) fail(origin, "degenerate triangle " + std::to_string(i));
        if (a < 0.0) {
            std::swap(t[1], t[2]);
            mesh.warnings.push_back("triangle " + std::to_string(i) +
                                    " was clockwise; reoriented");
        }
    }

    std::vector<std::array<int, 2>> listed;
    for (long i = 0; i < nb; ++i) {
        std::array<int, 2> e{};
        if (!(in >> e[0] >> e[1])) fail(origin, "truncated boundary edge list");
        for (int v : e)
            if (v < 0 || v >= nv) fail(origin, "boundary vertex index out of range");
        listed.push_back(e);
    }

    double trailing;
    if (in >> trailing) fail(origin, "trailing data after mesh sections");

    mesh.boundary_edges = derive_boundary_edges(mesh);
    if (!listed.empty()) {
        auto key_set = [](const std::vector<std::array<int, 2>>& v) {
            std::set<std::pair<int, int>> s;
            for (const auto& e : v) s.insert({std::min(e[0], e[1]), std::max(e[0], e[1])});
            return s;
        };
        if (key_set(listed) != key_set(mesh.boundary_edges))
            fail(origin, "listed boundary edges disagree with triangle boundary");
    }
    return mesh;
}

Mesh load_mesh(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("mesh '" + path + "': cannot open file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_mesh(ss.str(), path);
}

Mesh Mesh::refined() const {
    Mesh fine;
    fine.vertices = vertices;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        int id = static_cast<int>(fine.vertices.size());
        fine.vertices.push_back(0.5 * (vertex(a) + vertex(b)));
        midpoint[key] = id;
        return id;
    };
    for (const auto& t : triangles) {
        int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m20 = mid(t[2], t[0]);
        fine.triangles.push_back({t[0], m01, m20});
        fine.triangles.push_back({t[1], m12, m01});
        fine.triangles.push_back({t[2], m20, m12});
        fine.triangles.push_back({m01, m12, m20});
    }
    fine.boundary_edges = derive_boundary_edges(fine);
    return fine;
}

double BoundaryMesh::perimeter() const {
    double p = 0.0;
    for (const auto& panel : panels) p += panel.length;
    return p;
}

int BoundaryMesh::next_panel(int p) const {
    for (size_t l = 0; l + 1 < loop_offsets.size(); ++l) {
        int lo = loop_offsets[l], hi = loop_offsets[l + 1];
        if (p >= lo && p < hi) return lo + (p - lo + 1) % (hi - lo);
    }
    return -1;
}

int BoundaryMesh::prev_panel(int p) const {
    for (size_t l = 0; l + 1 < loop_offsets.size(); ++l) {
        int lo = loop_offsets[l], hi = loop_offsets[l + 1];
        if (p >= lo && p < hi) return lo + (p - lo + hi - lo - 1) % (hi - lo);
    }
    return -1;
}

BoundaryMesh extract_boundary(const Mesh& mesh) {
    // order the oriented edges into loops by walking successor vertices
    std::map<int, int> edge_from; // start vertex -> edge index
    for (size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
        int v0 = mesh.boundary_edges[i][0];
        if (edge_from.count(v0))
            throw std::runtime_error("boundary is not a set of simple loops");
        edge_from[v0] = static_cast<int>(i);
    }

    BoundaryMesh bm;
    std::vector<bool> used(mesh.boundary_edges.size(), false);
    bm.loop_offsets.push_back(0);
    for (size_t start = 0; start < mesh.boundary_edges.size(); ++start) {
        if (used[start]) continue;
        int e = static_cast<int>(start);
        while (!used[static_cast<size_t>(e)]) {
            used[static_cast<size_t>(e)] = true;
            const auto& edge = mesh.boundary_edges[static_cast<size_t>(e)];
            Panel p;
            p.v0 = edge[0];
            p.v1 = edge[1];
            p.a = mesh.vertex(p.v0);
            p.b = mesh.vertex(p.v1);
            p.length = dist(p.a, p.b);
            p.tangent = (p.b - p.a) / p.length;
            p.normal = {p.tangent.y, -p.tangent.x};
            bm.panels.push_back(p);
            auto it = edge_from.find(edge[1]);
            if (it == edge_from.end())
                throw std::runtime_error("boundary loop does not close");
            e = it->second;
        }
        bm.loop_offsets.push_back(static_cast<int>(bm.panels.size()));
    }
    return bm;
}

Mesh make_unit_square_mesh() {
    Mesh m;
    m.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
    m.boundary_edges = derive_boundary_edges(m);
    return m;
}

Mesh make_reference_triangle_mesh() {
    Mesh m;
    m.vertices = {{0, 0}, {1, 0}, {0, 1}};
    m.triangles = {{0, 1, 2}};
    m.boundary_edges = derive_boundary_edges(m);
    return m;
}

Mesh make_regular_polygon_mesh(int sides, double radius, Vec2 center) {
    if (sides < 3) throw std::runtime_error("polygon needs at least 3 sides");
    Mesh m;
    m.vertices.push_back(center);
    for (int i = 0; i < sides; ++i) {
        double a = 2.0 * M_PI * i / sides;
        m.vertices.push_back(center + radius * Vec2{std::cos(a), std::sin(a)});
    }
    for (int i = 0; i < sides; ++i)
        m.triangles.push_back({0, 1 + i, 1 + (i + 1) % sides});
    m.boundary_edges = derive_boundary_edges(m);
    return m;
}

namespace {
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double t = (p - a).dot(ab) / ab.squared_norm();
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + t * ab);
}
} // namespace

double distance_to_boundary(const BoundaryMesh& bm, const Vec2& p) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& panel : bm.panels)
        d = std::min(d, point_segment_distance(p, panel.a, panel.b));
    return d;
}

bool inside_solid(const BoundaryMesh& bm, const Vec2& p) {
    // crossing number against a horizontal ray
    int crossings = 0;
    for (const auto& panel : bm.panels) {
        const Vec2 &a = panel.a, &b = panel.b;
        if ((a.y > p.y) == (b.y > p.y)) continue;
        double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (x_cross > p.x) ++crossings;
    }
    return crossings % 2 == 1;
}

} // namespace thermocq
