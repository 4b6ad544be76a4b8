#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "mesh.hpp"

namespace fvgc {

// Finite volume attributes on a cell-centroid graph: per-node cell volume p
// (0 for boundary-face nodes) and per-directed-edge
// q = S ⊕ (c - x_i) ⊕ (c - x_j), with S oriented outward from node i.
struct FvfAttributes {
  std::vector<double> node_p;
  std::vector<std::array<double, 6>> edge_q;
};

FvfAttributes fvf_attributes(const Mesh2D& mesh, const Graph& graph);

// Face-value interpolation from the two adjacent cell centroids, exactly as
// the flux discretization uses it:
//   phi_f = phi_i * |c - x_i| / |x_j - x_i| + phi_j * |c - x_j| / |x_j - x_i|
template <typename T>
T interpolate_face_flux(const T& phi_i, const T& phi_j, const Vec2& x_i, const Vec2& x_j,
                        const Vec2& c) {
  const double base = (x_j - x_i).norm();
  if (base == 0.0) throw Error(ErrorKind::InvalidArgument, "coincident cell centroids");
  const double wi = (c - x_i).norm() / base;
  const double wj = (c - x_j).norm() / base;
  return phi_i * wi + phi_j * wj;
}

// Solves (a + b) / 2 = c and (b - a) = (S_y, -S_x) for the two face endpoints.
std::pair<Vec2, Vec2> face_endpoints_from_fvf(const Vec2& c, const Vec2& S);

// Recovers the one unknown vertex of a cell from its vertex-average centroid
// and the other n-1 vertices: n * x_i - sum(known).
Vec2 missing_node_from_centroid(const Vec2& centroid, const std::vector<Vec2>& known);

// True iff `known` is already the full vertex set of the cell with the given
// vertex-average centroid.
bool is_complete_cell(const Vec2& centroid, const std::vector<Vec2>& known, double tol = 1e-9);

// Rebuilds the mesh (up to a global translation) from a cell-centroid graph
// and its finite volume attributes: propagates centroid positions through the
// edge offsets, recovers face endpoints, deduces farfield corner vertices,
// and closes each farfield cell's face loop.
Mesh2D reconstruct_mesh(const Graph& graph, const FvfAttributes& fvf);

// Max point mismatch between two meshes after aligning their point means;
// +inf when the point counts differ.
double max_translation_error(const Mesh2D& reference, const Mesh2D& candidate);

std::string write_fvf_csv(const FvfAttributes& fvf, const Graph& graph);
FvfAttributes parse_fvf_csv(const std::string& text, const Graph& graph);

}  // namespace fvgc
