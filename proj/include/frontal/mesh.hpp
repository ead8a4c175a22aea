#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "frontal/frontal.hpp"

namespace frontal {

struct ObjGroup {
  std::string name;                         // "f", "nr", "c1", "c2"
  std::vector<std::array<int, 3>> faces;    // 0-based vertex indices
  std::vector<std::vector<int>> lines;      // polylines, 0-based
  int holes = 0;                            // grid quads skipped because a corner was masked
};

struct ObjMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<ObjGroup> groups;
  std::size_t face_count() const;
  std::size_t line_count() const;
};

struct MeshOptions {
  int nu = 41, nv = 41;
  double w_lo = -1.0, w_hi = 1.0;  // ruling parameter range for nr
  int trace_lines = 101;            // grid lines for tracing singular curves of c1, c2
  bool trace = true;
  // Excluded band |q| < exclude around the axis (internal chart); 0 keeps everything.
  double exclude = 0.0;
};

// Row-major grid over the user chart: vertex (i, j) has index i * nv + j with
// i along u_range and j along v_range. Masked vertices are written as the
// origin and every quad touching one is skipped.
ObjGroup mesh_surface(const SurfaceDef& s, const std::string& which, const MeshOptions& opt, const Settings& st,
                      ObjMesh& out);

void write_obj(std::ostream& os, const ObjMesh& m, const std::string& header = {});
// Minimal reader for what write_obj emits (v, f, l, g, comments).
ObjMesh read_obj(std::istream& is);

// Chains an unordered point set into polylines by nearest neighbour,
// breaking where the gap exceeds max_gap.
std::vector<std::vector<int>> chain_points(const std::vector<Eigen::Vector2d>& pts, double max_gap);

}  // namespace frontal
