#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vec2.hpp"

namespace fvgc {

enum class FaceKind { Internal, Geometry, Farfield };

// One mesh face (a 2D segment). Endpoints are ordered so that the owner cell
// lies to the right of a->b; the outward area normal of the owner is then
// perp_ccw(b - a).
struct Face {
  int a = -1;
  int b = -1;
  int owner = -1;
  int neighbor = -1;  // -1 for boundary faces
  FaceKind kind = FaceKind::Internal;
};

struct FaceGeometry {
  Vec2 centroid;
  Vec2 area_normal;  // |S| = face length, points away from the owner cell
};

// Immutable 2D finite-volume mesh: points, CCW cell cycles, derived faces.
class Mesh2D {
public:
  // Derives faces from the cell cycles and classifies boundary faces from the
  // given endpoint pairs (order-insensitive). Throws Error(Validation) on any
  // violated invariant; inputs are rejected, never repaired.
  static Mesh2D build(std::vector<Vec2> points,
                      std::vector<std::vector<int>> cells,
                      const std::vector<std::pair<int, int>>& geometry_faces,
                      const std::vector<std::pair<int, int>>& farfield_faces);

  // Unchecked assembly from explicit parts. Used by the reconstruction path
  // and by tests that need to build deliberately broken meshes; callers are
  // expected to run validate_mesh afterwards.
  static Mesh2D from_parts(std::vector<Vec2> points,
                           std::vector<std::vector<int>> cells,
                           std::vector<Face> faces);

  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }
  const std::vector<Face>& faces() const { return faces_; }
  // Face indices per cell, in cycle order for built meshes.
  const std::vector<std::vector<int>>& cell_faces() const { return cell_faces_; }

  std::size_t num_points() const { return points_.size(); }
  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  std::size_t count_faces(FaceKind kind) const;

  // Vertex-average centroid (not the area centroid).
  Vec2 cell_centroid(int cell) const;
  // Shoelace area of the cell polygon.
  double cell_volume(int cell) const;
  FaceGeometry face_geometry(int face) const;

private:
  Mesh2D() = default;

  std::vector<Vec2> points_;
  std::vector<std::vector<int>> cells_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> cell_faces_;
};

// Checks every Mesh2D invariant, including both reconstruction-theorem
// preconditions, and returns one message per violation. Empty means valid.
std::vector<std::string> validate_mesh(const Mesh2D& mesh);

// Parses the mesh JSON schema
//   {"points": [[x,y],...], "cells": [[i0,i1,...],...],
//    "boundary": {"geometry": [[a,b],...], "farfield": [[a,b],...]}}
// and returns a validated mesh. Throws Error(Validation) with messages such as
// "syntax error", "duplicate point", "non-CCW cell", "unclassified boundary face".
Mesh2D parse_mesh(const std::string& json_text);

std::string write_mesh_json(const Mesh2D& mesh);

double shoelace_area(const std::vector<Vec2>& polygon);

}  // namespace fvgc
