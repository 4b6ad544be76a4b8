#include "graph.hpp"

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace fvgc {

namespace {

using json = nlohmann::json;

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::CellCentroid: return "cell-centroid";
    case NodeKind::BoundaryFaceCentroid: return "boundary-face-centroid";
    case NodeKind::MeshNode: return "mesh-node";
  }
  return "?";
}

NodeKind kind_from_name(const std::string& s) {
  if (s == "cell-centroid") return NodeKind::CellCentroid;
  if (s == "boundary-face-centroid") return NodeKind::BoundaryFaceCentroid;
  if (s == "mesh-node") return NodeKind::MeshNode;
  throw Error(ErrorKind::Validation, "unknown graph node kind: " + s);
}

}  // namespace

Graph mesh_node_graph(const Mesh2D& mesh) {
  Graph g;
  g.mode = GraphMode::MeshNode;
  g.nodes.reserve(mesh.num_points());
  for (std::size_t i = 0; i < mesh.num_points(); ++i)
    g.nodes.push_back({mesh.points()[i], NodeKind::MeshNode, static_cast<int>(i)});
  g.edges.reserve(2 * mesh.num_faces());
  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& f = mesh.faces()[fi];
    g.edges.push_back({f.a, f.b, static_cast<int>(fi)});
    g.edges.push_back({f.b, f.a, static_cast<int>(fi)});
  }
  return g;
}

Graph cell_centroid_graph(const Mesh2D& mesh) {
  Graph g;
  g.mode = GraphMode::CellCentroid;
  const int nc = static_cast<int>(mesh.num_cells());
  for (int c = 0; c < nc; ++c)
    g.nodes.push_back({mesh.cell_centroid(c), NodeKind::CellCentroid, c});

  // Geometry boundary faces become nodes; farfield faces do not.
  std::vector<int> face_node(mesh.num_faces(), -1);
  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& f = mesh.faces()[fi];
    if (f.kind != FaceKind::Geometry) continue;
    face_node[fi] = static_cast<int>(g.nodes.size());
    g.nodes.push_back(
        {mesh.face_geometry(static_cast<int>(fi)).centroid, NodeKind::BoundaryFaceCentroid,
         static_cast<int>(fi)});
  }

  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi) {
    const Face& f = mesh.faces()[fi];
    if (f.kind == FaceKind::Internal) {
      g.edges.push_back({f.owner, f.neighbor, static_cast<int>(fi)});
      g.edges.push_back({f.neighbor, f.owner, static_cast<int>(fi)});
    } else if (f.kind == FaceKind::Geometry) {
      g.edges.push_back({f.owner, face_node[fi], static_cast<int>(fi)});
      g.edges.push_back({face_node[fi], f.owner, static_cast<int>(fi)});
    }
  }
  return g;
}

std::string write_graph_json(const Graph& graph) {
  json doc;
  doc["mode"] = graph.mode == GraphMode::MeshNode ? "mesh-node" : "cell-centroid";
  doc["nodes"] = json::array();
  for (const GraphNode& n : graph.nodes)
    doc["nodes"].push_back(
        {{"pos", {n.pos.x, n.pos.y}}, {"kind", kind_name(n.kind)}, {"origin", n.origin}});
  doc["edges"] = json::array();
  for (const GraphEdge& e : graph.edges) doc["edges"].push_back({e.src, e.dst, e.face});
  return doc.dump();
}

Graph parse_graph(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, std::string("syntax error: ") + e.what());
  }
  try {
    Graph g;
    const std::string mode = doc.value("mode", "cell-centroid");
    g.mode = mode == "mesh-node" ? GraphMode::MeshNode : GraphMode::CellCentroid;
    for (const auto& n : doc.at("nodes")) {
      GraphNode node;
      node.pos = {n.at("pos").at(0).get<double>(), n.at("pos").at(1).get<double>()};
      node.kind = kind_from_name(n.at("kind").get<std::string>());
      node.origin = n.at("origin").get<int>();
      g.nodes.push_back(node);
    }
    const int nn = static_cast<int>(g.nodes.size());
    for (const auto& e : doc.at("edges")) {
      GraphEdge edge{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()};
      if (edge.src < 0 || edge.src >= nn || edge.dst < 0 || edge.dst >= nn)
        throw Error(ErrorKind::Validation, "graph edge endpoint out of range");
      g.edges.push_back(edge);
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("syntax error: ") + e.what());
  }
}

}  // namespace fvgc
