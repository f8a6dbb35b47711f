#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "thermocq/mesh.hpp"

namespace thermocq {

// Lagrange basis of degree k on the reference triangle (0,0),(1,0),(0,1),
// nodal at the equispaced lattice. Node order: vertices, then edge nodes
// (edge 0: v0->v1, edge 1: v1->v2, edge 2: v2->v0), then interior nodes.
struct ReferenceElement {
    int degree = 0;
    int dim = 0;
    std::vector<Vec2> nodes;
    Eigen::MatrixXd coeff; // column i: monomial coefficients of basis i

    void eval(const Vec2& p, Eigen::VectorXd& values) const;
    // gradients in reference coordinates, one row per basis function
    void eval_grad(const Vec2& p, Eigen::MatrixXd& grads) const;
};

// cached per degree (1..5)
const ReferenceElement& reference_element(int degree);

// affine map from the reference triangle to triangle t
struct ElementMap {
    Vec2 v0;
    double B[2][2];    // columns v1-v0, v2-v0
    double Binv[2][2]; // inverse, for gradient pushforward
    double det;        // = 2 * area

    Vec2 to_physical(const Vec2& ref) const {
        return {v0.x + B[0][0] * ref.x + B[0][1] * ref.y,
                v0.y + B[1][0] * ref.x + B[1][1] * ref.y};
    }
    // grad_phys = Binv^T grad_ref
    Vec2 push_gradient(const Vec2& g) const {
        return {Binv[0][0] * g.x + Binv[1][0] * g.y,
                Binv[0][1] * g.x + Binv[1][1] * g.y};
    }
};

// Continuous scalar Lagrange space of degree k on a triangle mesh.
// Global dof order: vertices, then (k-1) per edge (edges numbered in order of
// first appearance, nodes running from the lower vertex id to the higher),
// then interior nodes per triangle.
class FESpace {
  public:
    FESpace(const Mesh& mesh, int degree);

    const Mesh& mesh() const { return *mesh_; }
    int degree() const { return degree_; }
    int num_dofs() const { return num_dofs_; }
    int num_edges() const { return static_cast<int>(edge_count_); }

    // global dofs of triangle t in reference node order
    const std::vector<int>& element_dofs(int t) const {
        return element_dofs_[static_cast<size_t>(t)];
    }
    ElementMap element_map(int t) const;

    // physical coordinates of every dof
    Vec2 dof_point(int dof) const { return dof_points_[static_cast<size_t>(dof)]; }

    // the k+1 dofs on a boundary panel, ordered from panel.v0 to panel.v1
    std::vector<int> panel_dofs(const Panel& panel) const;

    // nodal interpolation of a scalar function
    template <class F>
    Eigen::VectorXd interpolate(F&& f) const {
        Eigen::VectorXd v(num_dofs_);
        for (int i = 0; i < num_dofs_; ++i) v(i) = f(dof_point(i));
        return v;
    }

  private:
    const Mesh* mesh_;
    int degree_;
    int num_dofs_;
    size_t edge_count_;
    std::vector<std::vector<int>> element_dofs_;
    std::vector<Vec2> dof_points_;
    std::vector<std::array<long, 2>> edge_key_; // edge id -> (vmin, vmax)
    // lookup: vertex pair -> edge id
    int find_edge(int a, int b) const;
    std::vector<std::pair<long, int>> edge_lookup_; // sorted (key, edge id)
};

} // namespace thermocq
