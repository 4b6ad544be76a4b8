#pragma once

#include <string>
#include <vector>

#include "mesh.hpp"

namespace fvgc {

enum class GraphMode { MeshNode, CellCentroid };
enum class NodeKind { CellCentroid, BoundaryFaceCentroid, MeshNode };

struct GraphNode {
  Vec2 pos;
  NodeKind kind = NodeKind::MeshNode;
  int origin = -1;  // mesh cell / face / point index, depending on kind
};

// Directed edge with the mesh face it came from. Edges always come in
// bidirectional pairs.
struct GraphEdge {
  int src = -1;
  int dst = -1;
  int face = -1;
};

struct Graph {
  GraphMode mode = GraphMode::MeshNode;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_edges() const { return edges.size(); }
};

// Fig-style mesh-node construction: one node per mesh point, one
// bidirectional edge pair per mesh face.
Graph mesh_node_graph(const Mesh2D& mesh);

// Cell-centroid construction: one node per cell at its vertex-average
// centroid, one node per geometry boundary face at its centroid. Internal
// faces connect owner and neighbor cell nodes; geometry faces connect the
// owner cell node and the face node. Farfield faces induce nothing.
//
// Node order: cells by index, then geometry faces by face index. Edge order:
// faces by index, owner->neighbor before neighbor->owner.
Graph cell_centroid_graph(const Mesh2D& mesh);

std::string write_graph_json(const Graph& graph);
Graph parse_graph(const std::string& json_text);

}  // namespace fvgc
