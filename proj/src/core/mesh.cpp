#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "error.hpp"

namespace fvgc {

namespace {

using json = nlohmann::json;

std::string cell_str(int c) { return "cell " + std::to_string(c); }
std::string face_str(int f) { return "face " + std::to_string(f); }

// Distinct points of a cycle, preserving first-occurrence order.
std::vector<int> distinct_points(const std::vector<int>& cycle) {
  std::vector<int> out;
  for (int p : cycle) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

}  // namespace

double shoelace_area(const std::vector<Vec2>& polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = polygon[i];
    const Vec2& q = polygon[(i + 1) % n];
    twice += cross(p, q);
  }
  return 0.5 * twice;
}

std::size_t Mesh2D::count_faces(FaceKind kind) const {
  std::size_t n = 0;
  for (const Face& f : faces_)
    if (f.kind == kind) ++n;
  return n;
}

Vec2 Mesh2D::cell_centroid(int cell) const {
  if (cell < 0 || static_cast<std::size_t>(cell) >= cells_.size())
    throw Error(ErrorKind::InvalidArgument, "cell index out of range: " + std::to_string(cell));
  const auto& cyc = cells_[cell];
  Vec2 sum;
  for (int p : cyc) sum += points_[p];
  return sum / static_cast<double>(cyc.size());
}

double Mesh2D::cell_volume(int cell) const {
  if (cell < 0 || static_cast<std::size_t>(cell) >= cells_.size())
    throw Error(ErrorKind::InvalidArgument, "cell index out of range: " + std::to_string(cell));
  std::vector<Vec2> poly;
  poly.reserve(cells_[cell].size());
  for (int p : cells_[cell]) poly.push_back(points_[p]);
  return shoelace_area(poly);
}

FaceGeometry Mesh2D::face_geometry(int face) const {
  if (face < 0 || static_cast<std::size_t>(face) >= faces_.size())
    throw Error(ErrorKind::InvalidArgument, "face index out of range: " + std::to_string(face));
  const Face& f = faces_[face];
  const Vec2 a = points_[f.a];
  const Vec2 b = points_[f.b];
  if (a == b) throw Error(ErrorKind::Validation, "degenerate face (a = b): " + face_str(face));
  return FaceGeometry{(a + b) * 0.5, perp_ccw(b - a)};
}

Mesh2D Mesh2D::from_parts(std::vector<Vec2> points, std::vector<std::vector<int>> cells,
                          std::vector<Face> faces) {
  Mesh2D m;
  m.points_ = std::move(points);
  m.cells_ = std::move(cells);
  m.faces_ = std::move(faces);
  m.cell_faces_.assign(m.cells_.size(), {});
  for (std::size_t fi = 0; fi < m.faces_.size(); ++fi) {
    const Face& f = m.faces_[fi];
    if (f.owner >= 0 && static_cast<std::size_t>(f.owner) < m.cells_.size())
      m.cell_faces_[f.owner].push_back(static_cast<int>(fi));
    if (f.neighbor >= 0 && static_cast<std::size_t>(f.neighbor) < m.cells_.size())
      m.cell_faces_[f.neighbor].push_back(static_cast<int>(fi));
  }
  return m;
}

Mesh2D Mesh2D::build(std::vector<Vec2> points, std::vector<std::vector<int>> cells,
                     const std::vector<std::pair<int, int>>& geometry_faces,
                     const std::vector<std::pair<int, int>>& farfield_faces) {
  std::vector<std::string> errors;
  const int np = static_cast<int>(points.size());

  // Duplicate points are rejected outright; downstream identity assumptions
  // (endpoint merging, boundary dedup) rely on distinct coordinates.
  {
    std::map<std::pair<double, double>, int> seen;
    for (int i = 0; i < np; ++i) {
      auto key = std::make_pair(points[i].x, points[i].y);
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted)
        errors.push_back("duplicate point: index " + std::to_string(i) + " repeats index " +
                         std::to_string(it->second));
    }
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cyc = cells[c];
    bool index_ok = true;
    for (int p : cyc) {
      if (p < 0 || p >= np) {
        errors.push_back("point index out of range in " + cell_str(static_cast<int>(c)));
        index_ok = false;
        break;
      }
    }
    if (!index_ok) continue;
    if (distinct_points(cyc).size() < 3 || distinct_points(cyc).size() != cyc.size()) {
      errors.push_back(cell_str(static_cast<int>(c)) + " must be a cycle of >=3 distinct points");
      continue;
    }
    std::vector<Vec2> poly;
    for (int p : cyc) poly.push_back(points[p]);
    const double area = shoelace_area(poly);
    if (!(area > 0.0)) errors.push_back("non-CCW cell: " + cell_str(static_cast<int>(c)));
  }

  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorKind::Validation, msg);
  }

  // Derive faces. Each cell contributes one half-edge per consecutive point
  // pair; an internal face pairs two opposite half-edges. The stored endpoint
  // order is the reverse of the owner's traversal, which puts the owner on the
  // right of a->b and makes perp_ccw(b - a) the owner's outward normal.
  std::vector<Face> faces;
  std::map<std::pair<int, int>, int> face_of;  // key (min,max)
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cyc = cells[c];
    const std::size_t n = cyc.size();
    for (std::size_t k = 0; k < n; ++k) {
      const int p = cyc[k];
      const int q = cyc[(k + 1) % n];
      if (p == q) {
        errors.push_back("zero-length face in " + cell_str(static_cast<int>(c)));
        continue;
      }
      const auto key = std::make_pair(std::min(p, q), std::max(p, q));
      auto it = face_of.find(key);
      if (it == face_of.end()) {
        Face f;
        f.a = q;
        f.b = p;
        f.owner = static_cast<int>(c);
        face_of.emplace(key, static_cast<int>(faces.size()));
        faces.push_back(f);
      } else {
        Face& f = faces[it->second];
        if (f.neighbor >= 0) {
          errors.push_back(face_str(it->second) + " shared by more than two cells");
          continue;
        }
        // The second cell must traverse the segment in the opposite direction;
        // same direction means inconsistent orientation.
        if (f.a != p || f.b != q) {
          errors.push_back("inconsistent orientation across " + face_str(it->second));
          continue;
        }
        f.neighbor = static_cast<int>(c);
      }
    }
  }

  auto classify = [&](const std::vector<std::pair<int, int>>& pairs, FaceKind kind,
                      const char* label) {
    for (const auto& [u, v] : pairs) {
      const auto key = std::make_pair(std::min(u, v), std::max(u, v));
      auto it = face_of.find(key);
      if (it == face_of.end()) {
        errors.push_back(std::string(label) + " boundary entry (" + std::to_string(u) + "," +
                         std::to_string(v) + ") matches no mesh face");
        continue;
      }
      Face& f = faces[it->second];
      if (f.neighbor >= 0) {
        errors.push_back(std::string(label) + " boundary entry (" + std::to_string(u) + "," +
                         std::to_string(v) + ") refers to an internal face");
        continue;
      }
      if (f.kind != FaceKind::Internal) {
        errors.push_back("boundary face (" + std::to_string(u) + "," + std::to_string(v) +
                         ") classified twice");
        continue;
      }
      f.kind = kind;
    }
  };
  classify(geometry_faces, FaceKind::Geometry, "geometry");
  classify(farfield_faces, FaceKind::Farfield, "farfield");

  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    if (f.neighbor < 0 && f.kind == FaceKind::Internal)
      errors.push_back("unclassified boundary face: " + face_str(static_cast<int>(fi)) + " (" +
                       std::to_string(f.a) + "," + std::to_string(f.b) + ")");
  }

  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorKind::Validation, msg);
  }

  Mesh2D mesh = from_parts(std::move(points), std::move(cells), std::move(faces));
  auto report = validate_mesh(mesh);
  if (!report.empty()) {
    std::string msg;
    for (const auto& e : report) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorKind::Validation, msg);
  }
  return mesh;
}

std::vector<std::string> validate_mesh(const Mesh2D& mesh) {
  std::vector<std::string> report;
  const auto& points = mesh.points();
  const auto& cells = mesh.cells();
  const auto& faces = mesh.faces();
  const int np = static_cast<int>(points.size());
  const int nc = static_cast<int>(cells.size());

  {
    std::map<std::pair<double, double>, int> seen;
    for (int i = 0; i < np; ++i) {
      auto [it, inserted] = seen.emplace(std::make_pair(points[i].x, points[i].y), i);
      if (!inserted)
        report.push_back("duplicate point: index " + std::to_string(i) + " repeats index " +
                         std::to_string(it->second));
    }
  }

  for (int c = 0; c < nc; ++c) {
    const auto& cyc = cells[c];
    bool ok = true;
    for (int p : cyc)
      if (p < 0 || p >= np) {
        report.push_back("point index out of range in " + cell_str(c));
        ok = false;
        break;
      }
    if (!ok) continue;
    if (distinct_points(cyc).size() < 3 || distinct_points(cyc).size() != cyc.size()) {
      report.push_back(cell_str(c) + " must be a cycle of >=3 distinct points");
      continue;
    }
    std::vector<Vec2> poly;
    for (int p : cyc) poly.push_back(points[p]);
    if (!(shoelace_area(poly) > 0.0)) report.push_back("non-CCW cell: " + cell_str(c));
  }

  // Face-level checks.
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    if (f.a < 0 || f.a >= np || f.b < 0 || f.b >= np) {
      report.push_back(face_str(static_cast<int>(fi)) + " has invalid endpoints");
      continue;
    }
    if (points[f.a] == points[f.b])
      report.push_back("degenerate face (a = b): " + face_str(static_cast<int>(fi)));
    if (f.owner < 0 || f.owner >= nc) {
      report.push_back(face_str(static_cast<int>(fi)) + " has no valid owner");
      continue;
    }
    if (f.kind == FaceKind::Internal) {
      if (f.neighbor < 0 || f.neighbor >= nc || f.neighbor == f.owner)
        report.push_back("internal " + face_str(static_cast<int>(fi)) +
                         " must have a distinct neighbor cell");
    } else if (f.neighbor >= 0) {
      report.push_back("boundary " + face_str(static_cast<int>(fi)) + " must not have a neighbor");
    }
    // Owner-on-the-right convention: the owner cycle traverses b->a.
    if (f.owner >= 0 && f.owner < nc) {
      const auto& cyc = cells[f.owner];
      bool found = false;
      for (std::size_t k = 0; k < cyc.size(); ++k)
        if (cyc[k] == f.b && cyc[(k + 1) % cyc.size()] == f.a) found = true;
      if (!found)
        report.push_back(face_str(static_cast<int>(fi)) +
                         " endpoint order inconsistent with owner " + cell_str(f.owner));
    }
    if (f.neighbor >= 0 && f.neighbor < nc) {
      const auto& cyc = cells[f.neighbor];
      bool found = false;
      for (std::size_t k = 0; k < cyc.size(); ++k)
        if (cyc[k] == f.a && cyc[(k + 1) % cyc.size()] == f.b) found = true;
      if (!found)
        report.push_back(face_str(static_cast<int>(fi)) +
                         " endpoint order inconsistent with neighbor " + cell_str(f.neighbor));
    }
  }

  // Per-cell loop closure: the faces of each cell must form one closed loop
  // over exactly the cell's points.
  for (int c = 0; c < nc; ++c) {
    const auto& cyc = cells[c];
    const auto& cf = mesh.cell_faces()[c];
    std::set<int> cell_pts(cyc.begin(), cyc.end());
    std::map<int, std::vector<int>> adj;
    bool face_ok = true;
    for (int fi : cf) {
      const Face& f = faces[fi];
      if (!cell_pts.count(f.a) || !cell_pts.count(f.b)) {
        report.push_back(face_str(fi) + " touches points outside " + cell_str(c));
        face_ok = false;
        continue;
      }
      adj[f.a].push_back(f.b);
      adj[f.b].push_back(f.a);
    }
    if (!face_ok) continue;
    if (cf.size() != cyc.size()) {
      report.push_back("open cell loop: " + cell_str(c) + " has " + std::to_string(cf.size()) +
                       " faces for " + std::to_string(cyc.size()) + " points");
      continue;
    }
    bool closed = adj.size() == cell_pts.size();
    for (const auto& [p, nbrs] : adj)
      if (nbrs.size() != 2) closed = false;
    if (closed) {
      // Walk the loop; it must visit every point once.
      std::set<int> visited;
      int start = *cell_pts.begin();
      int prev = -1, cur = start;
      for (std::size_t step = 0; step < cell_pts.size(); ++step) {
        visited.insert(cur);
        const auto& nbrs = adj[cur];
        int nxt = (nbrs[0] != prev) ? nbrs[0] : nbrs[1];
        prev = cur;
        cur = nxt;
      }
      if (cur != start || visited.size() != cell_pts.size()) closed = false;
    }
    if (!closed) report.push_back("open cell loop: " + cell_str(c));
  }

  // Reconstruction-theorem precondition: at most 2 farfield faces per cell.
  for (int c = 0; c < nc; ++c) {
    int n_far = 0;
    for (int fi : mesh.cell_faces()[c])
      if (faces[fi].kind == FaceKind::Farfield) ++n_far;
    if (n_far > 2)
      report.push_back(cell_str(c) + " has " + std::to_string(n_far) +
                       " farfield boundary faces (at most 2 allowed)");
  }

  return report;
}

Mesh2D parse_mesh(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, std::string("syntax error: ") + e.what());
  }

  try {
    std::vector<Vec2> points;
    for (const auto& p : doc.at("points"))
      points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());

    std::vector<std::vector<int>> cells;
    for (const auto& c : doc.at("cells")) cells.push_back(c.get<std::vector<int>>());

    std::vector<std::pair<int, int>> geometry, farfield;
    if (doc.contains("boundary")) {
      const auto& b = doc.at("boundary");
      if (b.contains("geometry"))
        for (const auto& f : b.at("geometry"))
          geometry.emplace_back(f.at(0).get<int>(), f.at(1).get<int>());
      if (b.contains("farfield"))
        for (const auto& f : b.at("farfield"))
          farfield.emplace_back(f.at(0).get<int>(), f.at(1).get<int>());
    }
    return Mesh2D::build(std::move(points), std::move(cells), geometry, farfield);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("syntax error: ") + e.what());
  }
}

std::string write_mesh_json(const Mesh2D& mesh) {
  json doc;
  doc["points"] = json::array();
  for (const Vec2& p : mesh.points()) doc["points"].push_back({p.x, p.y});
  doc["cells"] = json::array();
  for (const auto& c : mesh.cells()) doc["cells"].push_back(c);
  json geometry = json::array();
  json farfield = json::array();
  for (const Face& f : mesh.faces()) {
    if (f.kind == FaceKind::Geometry) geometry.push_back({f.a, f.b});
    if (f.kind == FaceKind::Farfield) farfield.push_back({f.a, f.b});
  }
  doc["boundary"] = {{"geometry", std::move(geometry)}, {"farfield", std::move(farfield)}};
  return doc.dump();
}

}  // namespace fvgc
