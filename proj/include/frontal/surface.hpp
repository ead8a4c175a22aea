#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "frontal/expr.hpp"
#include "frontal/jet.hpp"

namespace frontal {

enum class Transverse { U, V };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// A parametrization f(u,v) as written by the user, plus the chart metadata
// that turns it into the internal pre-adapted chart: singular set {v = 0},
// null direction d/dv. Internally (p, q) maps to user (u, v) = (p, q + s)
// for transverse v and to (q + s, p) for transverse u.
struct SurfaceDef {
  std::string name;
  std::array<std::string, 3> text;
  std::array<Expr, 3> components;
  Transverse transverse = Transverse::V;
  double singular_value = 0.0;
  Interval u_range;
  Interval v_range;

  Interval axis_range() const;      // internal u
  Interval transverse_range() const;  // internal v
  Point2 to_internal(Point2 user) const;
  Point2 to_user(Point2 internal) const;

  Eigen::Vector3d point(double p, double q) const;
  JetVec3 jet(Point2 internal, int order) const;

  template <class T>
  std::array<T, 3> eval_internal(const T& p, const T& q) const {
    const T shifted = q + singular_value;
    Bindings<T> b;
    if (transverse == Transverse::V) {
      b.u = &p;
      b.v = &shifted;
    } else {
      b.u = &shifted;
      b.v = &p;
    }
    return {eval_expression(components[0], b), eval_expression(components[1], b),
            eval_expression(components[2], b)};
  }
};

SurfaceDef make_surface(std::string name, const std::string& x, const std::string& y,
                        const std::string& z, Transverse t = Transverse::V, double singular_value = 0.0,
                        Interval u_range = {-0.5, 0.5}, Interval v_range = {-0.5, 0.5});

SurfaceDef parse_surface_text(const std::string& text, const std::string& default_name);
SurfaceDef parse_surface_file(const std::filesystem::path& path);
std::string format_surface(const SurfaceDef& s);

// Built-in examples. Every entry is run through validate_frontal on load.
const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);
SurfaceDef builtin(const std::string& name);

}  // namespace frontal
