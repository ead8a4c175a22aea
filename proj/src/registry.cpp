#include <map>
#include <mutex>

#include "frontal/frontal.hpp"
#include "frontal/surface.hpp"

namespace frontal {

namespace {

struct Entry {
  const char* name;
  const char* x;
  const char* y;
  const char* z;
  Transverse t;
  double singular;
  Interval u, v;
};

// Germ fixtures use the unit box; the helicoid is entered in the log chart
// w = log u so that the singular level sits at w = 0.
const Entry kEntries[] = {
    {"paper-52", "u", "u^2 + v^2/2", "u*v^2 + v^5/5", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"helicoid", "-cosh(u)*sin(v)", "cosh(u)*cos(v)", "v", Transverse::U, 0.0, {-1.0, 1.0}, {-1.5, 1.5}},
    {"cuspidal-edge", "u", "v^2", "v^3", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"ccr", "u", "v^2", "u*v^3", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"s1-plus", "u", "v^2", "v^3*(u^2 + v^2)", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"s1-minus", "u", "v^2", "v^3*(u^2 - v^2)", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"52-germ", "u", "v^2", "v^5", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"fold", "u", "v^2", "0", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"72-ccr", "u", "v^2", "u*v^5", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
    {"ridge", "u", "u^2 + v^2/2", "u*v^2", Transverse::V, 0.0, {-0.5, 0.5}, {-0.5, 0.5}},
};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> r;
    for (const Entry& e : kEntries) r.emplace_back(e.name);
    return r;
  }();
  return names;
}

bool is_builtin(const std::string& name) {
  for (const Entry& e : kEntries) {
    if (name == e.name) return true;
  }
  return false;
}

SurfaceDef builtin(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, SurfaceDef> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  for (const Entry& e : kEntries) {
    if (name != e.name) continue;
    SurfaceDef s = make_surface(e.name, e.x, e.y, e.z, e.t, e.singular, e.u, e.v);
    validate_frontal(s);
    return cache.emplace(name, s).first->second;
  }
  throw InputError("unknown example '" + name + "' (run 'frontal-lab examples' for the list)");
}

}  // namespace frontal
