#pragma once

#include <utility>
#include <vector>

#include "graph.hpp"
#include "mesh.hpp"

namespace fvgc {

struct Segment {
  Vec2 a;
  Vec2 b;
};

enum class DidWeight { Uniform };

// Angular-segment configuration for the directional integrated distance.
struct DIDConfig {
  std::vector<std::pair<double, double>> segments;  // (theta_j, theta'_j), radians
  DidWeight weight = DidWeight::Uniform;
  double inf_value = 4.0;  // stands in for "no boundary in this direction"
};

// 8 overlapping half-pi arcs centered at quarter-pi intervals, uniform
// weights, inf_value 4.
DIDConfig default_did_config();

void check_did_config(const DIDConfig& config);

// Candidate boundary sample set for SDF/SV/DID: geometry face centroids first
// (face index order), then geometry face endpoints (point index order),
// deduplicated exactly.
std::vector<Vec2> geometry_boundary_nodes(const Mesh2D& mesh);

std::vector<Segment> geometry_boundary_segments(const Mesh2D& mesh);

// Shortest distance to any boundary node. Graph nodes are never inside the
// object, so the sign factor is always +1 (0 on the boundary itself).
std::vector<double> sdf(const std::vector<Vec2>& positions, const std::vector<Vec2>& boundary);

// Displacement from the closest boundary node, x_i - x_b; distance ties break
// toward the lowest boundary index.
std::vector<Vec2> sv(const std::vector<Vec2>& positions, const std::vector<Vec2>& boundary);

// True iff the open segment (x_i, x_k) crosses no geometry boundary face.
// Touching the boundary exactly at x_i or x_k does not obstruct, and neither
// does sliding along a collinear face.
bool unobstructed(const Vec2& x_i, const Vec2& x_k, const std::vector<Segment>& boundary_faces);

// Discrete directional integrated distance of one node: per angular segment,
// the weighted mean of clamped distances to visible boundary nodes, blended
// with inf_value by the covered angular fraction.
std::vector<double> did(const Vec2& node, const std::vector<Vec2>& boundary_nodes,
                        const std::vector<Segment>& boundary_faces, const DIDConfig& config);

// Independent quadrature oracle: casts ray_count equiangular rays per segment
// and averages the exact ray/boundary intersection distances (inf_value on a
// miss). Converges to the continuous directional integrated distance.
std::vector<double> did_oracle(const Vec2& node, const std::vector<Segment>& boundary_faces,
                               const DIDConfig& config, int ray_count);

struct GeomFeatures {
  std::vector<double> sdf;               // per graph node
  std::vector<Vec2> sv;                  // per graph node
  std::vector<std::vector<double>> did;  // per graph node, J values
};

// Per-node features over all graph nodes. Thread count only affects wall
// time; results are identical to the sequential node-order computation.
GeomFeatures compute_geom_features(const Mesh2D& mesh, const Graph& graph,
                                   const DIDConfig& config, int threads = 1);

std::string write_features_csv(const GeomFeatures& features);

}  // namespace fvgc
