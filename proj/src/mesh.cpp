#include "frontal/mesh.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "frontal/derived.hpp"
#include "frontal/parallel.hpp"

namespace frontal {

std::size_t ObjMesh::face_count() const {
  std::size_t n = 0;
  for (const ObjGroup& g : groups) n += g.faces.size();
  return n;
}

std::size_t ObjMesh::line_count() const {
  std::size_t n = 0;
  for (const ObjGroup& g : groups) n += g.lines.size();
  return n;
}

std::vector<std::vector<int>> chain_points(const std::vector<Eigen::Vector2d>& pts, double max_gap) {
  std::vector<std::vector<int>> out;
  std::vector<bool> used(pts.size(), false);
  auto nearest = [&](int from) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (used[k]) continue;
      const double d = (pts[k] - pts[static_cast<std::size_t>(from)]).norm();
      if (d < bd) {
        bd = d;
        best = static_cast<int>(k);
      }
    }
    return std::make_pair(best, bd);
  };
  for (std::size_t start = 0; start < pts.size(); ++start) {
    if (used[start]) continue;
    // grow in both directions from the seed
    std::vector<int> fwd{static_cast<int>(start)};
    used[start] = true;
    for (;;) {
      auto [k, d] = nearest(fwd.back());
      if (k < 0 || d > max_gap) break;
      used[static_cast<std::size_t>(k)] = true;
      fwd.push_back(k);
    }
    std::vector<int> bwd;
    for (int tail = fwd.front();;) {
      auto [k, d] = nearest(tail);
      if (k < 0 || d > max_gap) break;
      used[static_cast<std::size_t>(k)] = true;
      bwd.push_back(k);
      tail = k;
    }
    std::vector<int> line(bwd.rbegin(), bwd.rend());
    line.insert(line.end(), fwd.begin(), fwd.end());
    if (line.size() >= 2) out.push_back(std::move(line));
  }
  return out;
}

namespace {

double lerp(const Interval& I, int i, int n) { return n == 1 ? I.lo : I.lo + I.width() * i / (n - 1); }

struct GridSample {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  bool ok = false;
};

void add_faces(ObjGroup& g, const std::vector<GridSample>& grid, int base, int nu, int nv) {
  for (int i = 0; i + 1 < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      const int a = i * nv + j, b = (i + 1) * nv + j, c = (i + 1) * nv + j + 1, d = i * nv + j + 1;
      if (!grid[a].ok || !grid[b].ok || !grid[c].ok || !grid[d].ok) {
        ++g.holes;
        continue;
      }
      g.faces.push_back({base + a, base + b, base + c});
      g.faces.push_back({base + a, base + c, base + d});
    }
  }
}

// Appends vertices for a traced curve given as points already mapped to R^3.
void add_polylines(ObjGroup& g, ObjMesh& out, const std::vector<Eigen::Vector2d>& params,
                   const std::vector<Eigen::Vector3d>& pts, double max_gap) {
  for (const std::vector<int>& chain : chain_points(params, max_gap)) {
    std::vector<int> line;
    for (int k : chain) {
      line.push_back(static_cast<int>(out.vertices.size()));
      out.vertices.push_back(pts[static_cast<std::size_t>(k)]);
    }
    g.lines.push_back(std::move(line));
  }
}

}  // namespace

ObjGroup mesh_surface(const SurfaceDef& s, const std::string& which, const MeshOptions& opt, const Settings& st,
                      ObjMesh& out) {
  if (opt.nu < 2 || opt.nv < 2) throw InputError("mesh grid resolutions must be >= 2 (got " +
                                                  std::to_string(opt.nu) + " x " + std::to_string(opt.nv) + ")");
  if (which != "f" && which != "nr" && which != "c1" && which != "c2") {
    throw InputError("unknown surface '" + which + "' (expected f, nr, c1 or c2)");
  }
  ObjGroup g;
  g.name = which;
  const int nu = opt.nu, nv = opt.nv;
  std::vector<GridSample> grid(static_cast<std::size_t>(nu) * nv);
  const int base = static_cast<int>(out.vertices.size());

  if (which == "nr") {
    const AxisModel m = surface_axis_model(s, st);
    const Interval U = s.axis_range();
    const Interval W{opt.w_lo, opt.w_hi};
    parallel_for(static_cast<std::size_t>(nu), [&](std::size_t i) {
      AxisFrame fr;
      bool ok = true;
      try {
        fr = m.frame(lerp(U, static_cast<int>(i), nu));
      } catch (const NumericalError&) {
        ok = false;
      }
      for (int j = 0; j < nv; ++j) {
        GridSample& gs = grid[i * static_cast<std::size_t>(nv) + static_cast<std::size_t>(j)];
        if (!ok) continue;
        gs.x = fr.gamma + lerp(W, j, nv) * fr.nu;
        gs.ok = true;
      }
    });
    for (const GridSample& gs : grid) out.vertices.push_back(gs.x);
    add_faces(g, grid, base, nu, nv);
    if (opt.trace) {
      try {
        const SingularCurveTrace tr = nr_singular_points(m, st);
        std::vector<Eigen::Vector2d> params;
        for (const Point2& p : tr.params) params.emplace_back(p.u, p.v);
        add_polylines(g, out, params, tr.points, 3.0 * U.width() / (nu - 1));
      } catch (const NumericalError&) {
        // cylindrical or singular at infinity: nothing to draw
      }
    }
    return g;
  }

  const int j_focal = which == "c1" ? 1 : which == "c2" ? 2 : 0;
  parallel_for(grid.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k) / nv, j = static_cast<int>(k) % nv;
    const Point2 user{lerp(s.u_range, i, nu), lerp(s.v_range, j, nv)};
    const Point2 p = s.to_internal(user);
    GridSample& gs = grid[k];
    if (opt.exclude > 0 && std::abs(p.v) < opt.exclude) return;
    if (j_focal == 0) {
      gs.x = s.point(p.u, p.v);
      gs.ok = gs.x.allFinite();
      if (!gs.ok) gs.x.setZero();
      return;
    }
    try {
      const FrontalPoint fp = evaluate_point(s, p, st);
      const double kj = fp.kappa[j_focal - 1];
      if (std::abs(kj) < st.kappa_tol) return;
      gs.x = fp.f + fp.nu / kj;
      gs.ok = gs.x.allFinite();
      if (!gs.ok) gs.x.setZero();
    } catch (const NumericalError&) {
      // masked
    }
  });
  for (const GridSample& gs : grid) out.vertices.push_back(gs.x);
  add_faces(g, grid, base, nu, nv);
  if (!opt.trace) return g;

  const Interval A = s.axis_range();
  if (j_focal == 0) {
    // the singular set is the axis; reuse a grid line when it is one
    const int nt = s.transverse == Transverse::V ? nv : nu;
    int hit = -1;
    for (int k = 0; k < nt; ++k) {
      if (std::abs(lerp(s.transverse == Transverse::V ? s.v_range : s.u_range, k, nt) - s.singular_value) < 1e-12) {
        hit = k;
      }
    }
    std::vector<int> line;
    if (hit >= 0) {
      const int na = s.transverse == Transverse::V ? nu : nv;
      for (int a = 0; a < na; ++a) {
        const int idx = s.transverse == Transverse::V ? a * nv + hit : hit * nv + a;
        if (grid[static_cast<std::size_t>(idx)].ok) line.push_back(base + idx);
      }
    } else {
      const int na = std::max(nu, nv);
      for (int a = 0; a < na; ++a) {
        line.push_back(static_cast<int>(out.vertices.size()));
        out.vertices.push_back(s.point(lerp(A, a, na), 0.0));
      }
    }
    if (line.size() >= 2) g.lines.push_back(std::move(line));
    return g;
  }

  ScanOptions so;
  so.lines = opt.trace_lines;
  const SingularCurveTrace tr = focal_singular_trace(s, j_focal, st, so);
  std::vector<Eigen::Vector2d> params;
  for (const Point2& p : tr.params) params.emplace_back(p.u, p.v);
  const double cell = std::max(A.width(), s.transverse_range().width()) / (so.lines - 1);
  add_polylines(g, out, params, tr.points, 3.0 * cell);
  return g;
}

void write_obj(std::ostream& os, const ObjMesh& m, const std::string& header) {
  os.precision(17);
  if (!header.empty()) {
    std::istringstream hs(header);
    for (std::string line; std::getline(hs, line);) os << "# " << line << '\n';
  }
  for (const Eigen::Vector3d& v : m.vertices) os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const ObjGroup& g : m.groups) {
    os << "g " << g.name << '\n';
    os << "# holes " << g.holes << '\n';
    for (const auto& f : g.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    for (const auto& l : g.lines) {
      os << 'l';
      for (int k : l) os << ' ' << k + 1;
      os << '\n';
    }
  }
}

ObjMesh read_obj(std::istream& is) {
  ObjMesh m;
  auto group = [&]() -> ObjGroup& {
    if (m.groups.empty()) {
      m.groups.push_back({});
      m.groups.back().name = "default";
    }
    return m.groups.back();
  };
  auto index = [&](const std::string& tok, int line_no) {
    // accepts "i", "i/t", "i/t/n", "i//n"
    const int k = std::stoi(tok.substr(0, tok.find('/')));
    const int n = static_cast<int>(m.vertices.size());
    const int idx = k > 0 ? k - 1 : n + k;
    if (idx < 0 || idx >= n) throw InputError("OBJ line " + std::to_string(line_no) + ": vertex index out of range");
    return idx;
  };
  std::string line;
  for (int line_no = 1; std::getline(is, line); ++line_no) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v.x() >> v.y() >> v.z())) throw InputError("OBJ line " + std::to_string(line_no) + ": bad vertex");
      m.vertices.push_back(v);
    } else if (tag == "g" || tag == "o") {
      std::string name;
      ls >> name;
      m.groups.push_back({});
      m.groups.back().name = name;
    } else if (tag == "#") {
      std::string key;
      int holes = 0;
      if (!m.groups.empty() && (ls >> key >> holes) && key == "holes") m.groups.back().holes = holes;
    } else if (tag == "f") {
      std::vector<int> poly;
      for (std::string tok; ls >> tok;) poly.push_back(index(tok, line_no));
      if (poly.size() < 3) throw InputError("OBJ line " + std::to_string(line_no) + ": face with fewer than 3 vertices");
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) group().faces.push_back({poly[0], poly[k], poly[k + 1]});
    } else if (tag == "l") {
      std::vector<int> l;
      for (std::string tok; ls >> tok;) l.push_back(index(tok, line_no));
      group().lines.push_back(std::move(l));
    }
  }
  return m;
}

}  // namespace frontal
