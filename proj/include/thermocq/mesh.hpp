#pragma once

#include <array>
#include <string>
#include <vector>

#include "thermocq/geom.hpp"

namespace thermocq {

// Triangle mesh of the solid with an oriented polygonal boundary.
// Triangles are stored counterclockwise; boundary edges are oriented so the
// solid lies to their left (outward normal is the direction rotated by -90deg).
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> boundary_edges;
    std::vector<std::string> warnings; // e.g. reoriented triangles on load

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }

    Vec2 vertex(int i) const { return vertices[static_cast<size_t>(i)]; }
    double triangle_area(int t) const;
    double total_area() const;

    // mesh parameter: maximum boundary panel length
    double h() const;

    // red refinement: every triangle splits into four via edge midpoints
    Mesh refined() const;
};

// Text format: first line "nv nt nb"; nv lines "x y"; nt lines "i j k"
// (0-based); nb lines "i j" (optional, rederived from the triangles when
// absent). '#' starts a comment.
Mesh load_mesh(const std::string& path);
Mesh parse_mesh(const std::string& text, const std::string& origin = "<string>");

// One straight boundary segment of the polygon.
struct Panel {
    int v0 = -1, v1 = -1; // mesh vertex ids, in boundary orientation
    Vec2 a, b;            // endpoint coordinates
    Vec2 normal;          // unit outward normal
    Vec2 tangent;         // unit tangent (a -> b)
    double length = 0.0;
    Vec2 point(double t) const { return a + t * (b - a); } // t in [0,1]

    Vec2 midpoint() const { return 0.5 * (a + b); }
};

// Boundary of a Mesh as an ordered list of panels grouped into closed loops.
struct BoundaryMesh {
    std::vector<Panel> panels;
    std::vector<int> loop_offsets; // loop l = panels[loop_offsets[l] .. loop_offsets[l+1])

    int num_panels() const { return static_cast<int>(panels.size()); }
    int num_loops() const { return static_cast<int>(loop_offsets.size()) - 1; }
    double perimeter() const;
    // index of the next/previous panel along the loop containing p
    int next_panel(int p) const;
    int prev_panel(int p) const;
};

BoundaryMesh extract_boundary(const Mesh& mesh);

// built-in test geometries
Mesh make_unit_square_mesh();            // two triangles on [0,1]^2
Mesh make_reference_triangle_mesh();     // single triangle (0,0),(1,0),(0,1)
Mesh make_regular_polygon_mesh(int sides, double radius = 1.0,
                               Vec2 center = {0.0, 0.0});

// distance from a point to the polygon boundary
double distance_to_boundary(const BoundaryMesh& bm, const Vec2& p);
// point-in-solid test (winding of the boundary loops)
bool inside_solid(const BoundaryMesh& bm, const Vec2& p);

} // namespace thermocq
