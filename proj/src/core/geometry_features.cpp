#include "geometry_features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "error.hpp"

namespace fvgc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGeomEps = 1e-12;

// Maps an angle into [0, 2*pi).
double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

// If theta (in [0, 2*pi)) falls strictly inside (lo, hi) after shifting by a
// whole turn, returns the shifted angle; otherwise returns NaN.
double angle_in_segment(double theta, double lo, double hi) {
  for (int m = -1; m <= 1; ++m) {
    const double t = theta + m * kTwoPi;
    if (t > lo && t < hi) return t;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

DIDConfig default_did_config() {
  const double pi = std::numbers::pi;
  DIDConfig c;
  c.segments = {
      {-pi / 4.0, pi / 4.0},        {0.0, pi / 2.0},
      {pi / 4.0, 3.0 * pi / 4.0},   {pi / 2.0, pi},
      {3.0 * pi / 4.0, 5.0 * pi / 4.0}, {pi, 3.0 * pi / 2.0},
      {5.0 * pi / 4.0, 7.0 * pi / 4.0}, {3.0 * pi / 2.0, 2.0 * pi},
  };
  c.weight = DidWeight::Uniform;
  c.inf_value = 4.0;
  return c;
}

void check_did_config(const DIDConfig& config) {
  if (config.segments.empty())
    throw Error(ErrorKind::Validation, "DID config needs at least one segment");
  for (const auto& [lo, hi] : config.segments) {
    const double span = hi - lo;
    if (!(span > 0.0) || span > kTwoPi + kGeomEps)
      throw Error(ErrorKind::Validation, "DID segment span must lie in (0, 2*pi]");
  }
  if (!(config.inf_value > 0.0))
    throw Error(ErrorKind::Validation, "DID inf_value must be positive");
}

std::vector<Vec2> geometry_boundary_nodes(const Mesh2D& mesh) {
  std::vector<Vec2> out;
  std::map<std::pair<double, double>, bool> seen;
  auto push = [&](const Vec2& p) {
    if (seen.emplace(std::make_pair(p.x, p.y), true).second) out.push_back(p);
  };
  for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi)
    if (mesh.faces()[fi].kind == FaceKind::Geometry)
      push(mesh.face_geometry(static_cast<int>(fi)).centroid);
  std::vector<int> pts;
  for (const Face& f : mesh.faces())
    if (f.kind == FaceKind::Geometry) {
      pts.push_back(f.a);
      pts.push_back(f.b);
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (int p : pts) push(mesh.points()[p]);
  return out;
}

std::vector<Segment> geometry_boundary_segments(const Mesh2D& mesh) {
  std::vector<Segment> out;
  for (const Face& f : mesh.faces())
    if (f.kind == FaceKind::Geometry) out.push_back({mesh.points()[f.a], mesh.points()[f.b]});
  return out;
}

std::vector<double> sdf(const std::vector<Vec2>& positions, const std::vector<Vec2>& boundary) {
  if (boundary.empty()) throw Error(ErrorKind::Validation, "empty boundary set");
  std::vector<double> out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& b : boundary) best = std::min(best, distance(positions[i], b));
    out[i] = best;
  }
  return out;
}

std::vector<Vec2> sv(const std::vector<Vec2>& positions, const std::vector<Vec2>& boundary) {
  if (boundary.empty()) throw Error(ErrorKind::Validation, "empty boundary set");
  std::vector<Vec2> out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t k = 0; k < boundary.size(); ++k) {
      const double d = distance(positions[i], boundary[k]);
      if (d < best) {  // strict: ties keep the lowest index
        best = d;
        arg = k;
      }
    }
    out[i] = positions[i] - boundary[arg];
  }
  return out;
}

bool unobstructed(const Vec2& x_i, const Vec2& x_k, const std::vector<Segment>& boundary_faces) {
  const Vec2 d = x_k - x_i;
  for (const Segment& s : boundary_faces) {
    const Vec2 e = s.b - s.a;
    const double d1 = cross(e, x_i - s.a);
    const double d2 = cross(e, x_k - s.a);
    const double d3 = cross(d, s.a - x_i);
    const double d4 = cross(d, s.b - x_i);

    if (std::abs(d1) <= kGeomEps && std::abs(d2) <= kGeomEps) {
      // Sight line collinear with the face: sliding along a wall does not
      // count as crossing it.
      continue;
    }
    const bool straddles_face = (d1 > kGeomEps && d2 < -kGeomEps) || (d1 < -kGeomEps && d2 > kGeomEps);
    const bool touches_face = std::abs(d1) <= kGeomEps || std::abs(d2) <= kGeomEps;
    const bool straddles_ray = (d3 > kGeomEps && d4 < -kGeomEps) || (d3 < -kGeomEps && d4 > kGeomEps);
    const bool touches_ray = std::abs(d3) <= kGeomEps || std::abs(d4) <= kGeomEps;

    if (!(straddles_face || touches_face) || !(straddles_ray || touches_ray)) continue;

    // Candidate contact. Find the contact point to decide whether it is just
    // the permitted graze at x_i or x_k.
    Vec2 contact;
    const double denom = cross(d, e);
    if (std::abs(denom) <= kGeomEps) {
      // Near-parallel touch: the contact is one of the face endpoints.
      contact = std::abs(d3) <= std::abs(d4) ? s.a : s.b;
    } else {
      const double t = cross(s.a - x_i, e) / denom;
      if (t < -kGeomEps || t > 1.0 + kGeomEps) continue;
      contact = x_i + d * t;
    }
    const double scale = std::max({1.0, d.norm(), e.norm()});
    if (distance(contact, x_k) <= 1e-9 * scale) continue;
    if (distance(contact, x_i) <= 1e-9 * scale) continue;
    // Confirm the contact actually lies on both segments.
    const double t_ray = dot(contact - x_i, d) / std::max(d.norm2(), kGeomEps);
    const double t_face = dot(contact - s.a, e) / std::max(e.norm2(), kGeomEps);
    if (t_ray < -kGeomEps || t_ray > 1.0 + kGeomEps) continue;
    if (t_face < -kGeomEps || t_face > 1.0 + kGeomEps) continue;
    return false;
  }
  return true;
}

std::vector<double> did(const Vec2& node, const std::vector<Vec2>& boundary_nodes,
                        const std::vector<Segment>& boundary_faces, const DIDConfig& config) {
  check_did_config(config);
  const std::size_t J = config.segments.size();

  // Angle, clamped distance and visibility are segment-independent; compute
  // them once per boundary node.
  struct Sample {
    double angle;
    double dist;
  };
  std::vector<Sample> visible;
  visible.reserve(boundary_nodes.size());
  for (const Vec2& bk : boundary_nodes) {
    const Vec2 d = bk - node;
    const double r = d.norm();
    if (r <= kGeomEps) continue;  // the node itself lies on the boundary here
    if (!unobstructed(node, bk, boundary_faces)) continue;
    visible.push_back({wrap_angle(std::atan2(d.y, d.x)), std::min(r, config.inf_value)});
  }

  std::vector<double> out(J, config.inf_value);
  for (std::size_t j = 0; j < J; ++j) {
    const auto [lo, hi] = config.segments[j];
    double weight_sum = 0.0;
    double dist_sum = 0.0;
    double theta_min = hi;
    double theta_max = lo;
    for (const Sample& s : visible) {
      const double t = angle_in_segment(s.angle, lo, hi);
      if (std::isnan(t)) continue;
      const double w = 1.0 / (hi - lo);  // uniform weight over the segment
      dist_sum += w * s.dist;
      weight_sum += w;
      theta_min = std::min(theta_min, t);
      theta_max = std::max(theta_max, t);
    }
    if (weight_sum <= 0.0) continue;  // nothing collected: stays at inf_value
    const double mean_dist = dist_sum / weight_sum;
    const double w_theta = (theta_max - theta_min) / (hi - lo);
    out[j] = w_theta * mean_dist + (1.0 - w_theta) * config.inf_value;
  }
  return out;
}

std::vector<double> did_oracle(const Vec2& node, const std::vector<Segment>& boundary_faces,
                               const DIDConfig& config, int ray_count) {
  check_did_config(config);
  if (ray_count < 1000)
    throw Error(ErrorKind::InvalidArgument, "did_oracle needs at least 1000 rays");

  auto ray_distance = [&](double theta) {
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& s : boundary_faces) {
      const Vec2 e = s.b - s.a;
      const double denom = cross(dir, e);
      if (std::abs(denom) <= kGeomEps) {
        // Parallel. If collinear, the nearest endpoint ahead is a hit.
        if (std::abs(cross(s.a - node, dir)) <= kGeomEps) {
          const double ta = dot(s.a - node, dir);
          const double tb = dot(s.b - node, dir);
          if (ta > kGeomEps) best = std::min(best, ta);
          if (tb > kGeomEps) best = std::min(best, tb);
        }
        continue;
      }
      const double t = cross(s.a - node, e) / denom;
      const double u = cross(s.a - node, dir) / denom;
      if (t > kGeomEps && u >= -kGeomEps && u <= 1.0 + kGeomEps) best = std::min(best, t);
    }
    return best;
  };

  std::vector<double> out(config.segments.size());
  for (std::size_t j = 0; j < config.segments.size(); ++j) {
    const auto [lo, hi] = config.segments[j];
    const double h = (hi - lo) / ray_count;
    double acc = 0.0;
    for (int m = 0; m < ray_count; ++m) {
      const double theta = lo + (m + 0.5) * h;
      const double g = ray_distance(theta);
      acc += std::isfinite(g) ? std::min(g, config.inf_value) : config.inf_value;
    }
    out[j] = acc / ray_count;  // uniform weight: plain angular mean
  }
  return out;
}

GeomFeatures compute_geom_features(const Mesh2D& mesh, const Graph& graph,
                                   const DIDConfig& config, int threads) {
  check_did_config(config);
  const std::vector<Vec2> boundary = geometry_boundary_nodes(mesh);
  if (boundary.empty())
    throw Error(ErrorKind::Validation,
                "mesh has no geometry boundary faces; features are undefined");
  const std::vector<Segment> segments = geometry_boundary_segments(mesh);

  std::vector<Vec2> positions;
  positions.reserve(graph.num_nodes());
  for (const GraphNode& n : graph.nodes) positions.push_back(n.pos);

  GeomFeatures out;
  out.sdf = sdf(positions, boundary);
  out.sv = sv(positions, boundary);
  out.did.assign(positions.size(), {});

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out.did[i] = did(positions[i], boundary, segments, config);
  };

  const std::size_t n = positions.size();
  if (threads <= 1 || n < 2) {
    worker(0, n);
  } else {
    const std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string write_features_csv(const GeomFeatures& features) {
  std::ostringstream os;
  os.precision(17);
  const std::size_t J = features.did.empty() ? 0 : features.did.front().size();
  os << "node_id,sdf,sv_x,sv_y";
  for (std::size_t j = 0; j < J; ++j) os << ",did_" << j;
  os << "\n";
  for (std::size_t i = 0; i < features.sdf.size(); ++i) {
    os << i << ',' << features.sdf[i] << ',' << features.sv[i].x << ',' << features.sv[i].y;
    for (double v : features.did[i]) os << ',' << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace fvgc
