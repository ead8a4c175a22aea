#include "frontal/surface.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace frontal {

Interval SurfaceDef::axis_range() const {
  return transverse == Transverse::V ? u_range : v_range;
}

Interval SurfaceDef::transverse_range() const {
  const Interval r = transverse == Transverse::V ? v_range : u_range;
  return {r.lo - singular_value, r.hi - singular_value};
}

Point2 SurfaceDef::to_internal(Point2 user) const {
  if (transverse == Transverse::V) return {user.u, user.v - singular_value};
  return {user.v, user.u - singular_value};
}

Point2 SurfaceDef::to_user(Point2 in) const {
  if (transverse == Transverse::V) return {in.u, in.v + singular_value};
  return {in.v + singular_value, in.u};
}

Eigen::Vector3d SurfaceDef::point(double p, double q) const {
  auto r = eval_internal(p, q);
  return {r[0], r[1], r[2]};
}

JetVec3 SurfaceDef::jet(Point2 in, int order) const {
  const Jet2 p = Jet2::lift(Var::U, in, order);
  const Jet2 q = Jet2::lift(Var::V, in, order);
  auto r = eval_internal(p, q);
  return {r[0], r[1], r[2]};
}

SurfaceDef make_surface(std::string name, const std::string& x, const std::string& y,
                        const std::string& z, Transverse t, double singular_value, Interval u_range,
                        Interval v_range) {
  SurfaceDef s;
  s.name = std::move(name);
  s.text = {x, y, z};
  const char* keys[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    try {
      s.components[static_cast<std::size_t>(i)] = parse_expression(s.text[static_cast<std::size_t>(i)]);
    } catch (const InputError& e) {
      throw InputError(std::string("component ") + keys[i] + ": " + e.what());
    }
  }
  s.transverse = t;
  s.singular_value = singular_value;
  s.u_range = u_range;
  s.v_range = v_range;
  return s;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drop a trailing # comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& raw, const std::string& key, int line) {
  const std::string t = trim(raw);
  double x = 0.0;
  const char* b = t.data();
  const char* e = t.data() + t.size();
  if (!t.empty() && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  if (t.empty() || ec != std::errc() || p != e) {
    throw InputError("line " + std::to_string(line) + ": malformed number for '" + key + "': " + t);
  }
  return x;
}

std::string parse_string(const std::string& raw, const std::string& key, int line) {
  const std::string t = trim(raw);
  if (t.size() < 2 || t.front() != '"' || t.back() != '"') {
    throw InputError("line " + std::to_string(line) + ": value of '" + key + "' must be a quoted string");
  }
  return t.substr(1, t.size() - 2);
}

Interval parse_interval(const std::string& raw, const std::string& key, int line) {
  const std::string t = trim(raw);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw InputError("line " + std::to_string(line) + ": value of '" + key + "' must be [lo, hi]");
  }
  const std::string body = t.substr(1, t.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string::npos) {
    throw InputError("line " + std::to_string(line) + ": value of '" + key + "' must be [lo, hi]");
  }
  Interval r{parse_number(body.substr(0, comma), key, line), parse_number(body.substr(comma + 1), key, line)};
  if (!(r.lo < r.hi)) throw InputError("line " + std::to_string(line) + ": empty interval for '" + key + "'");
  return r;
}

}  // namespace

SurfaceDef parse_surface_text(const std::string& text, const std::string& default_name) {
  static const char* known[] = {"name", "x", "y", "z", "transverse_param", "singular_value", "u_range", "v_range"};
  std::map<std::string, std::pair<std::string, int>> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string l = trim(strip_comment(line));
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(l.substr(0, eq));
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw InputError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = {l.substr(eq + 1), lineno};
  }
  for (const char* k : known) {
    if (std::string(k) != "name" && !kv.count(k)) throw InputError(std::string("missing key '") + k + "'");
  }
  auto str = [&](const char* k) { return parse_string(kv[k].first, k, kv[k].second); };
  const std::string tp = str("transverse_param");
  if (tp != "u" && tp != "v") throw InputError("transverse_param must be \"u\" or \"v\"");
  return make_surface(kv.count("name") ? str("name") : default_name, str("x"), str("y"), str("z"),
                      tp == "u" ? Transverse::U : Transverse::V,
                      parse_number(kv["singular_value"].first, "singular_value", kv["singular_value"].second),
                      parse_interval(kv["u_range"].first, "u_range", kv["u_range"].second),
                      parse_interval(kv["v_range"].first, "v_range", kv["v_range"].second));
}

SurfaceDef parse_surface_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open surface file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_surface_text(ss.str(), path.stem().string());
}

std::string format_surface(const SurfaceDef& s) {
  std::ostringstream os;
  os.precision(17);
  os << "name = \"" << s.name << "\"\n"
     << "x = \"" << s.text[0] << "\"\n"
     << "y = \"" << s.text[1] << "\"\n"
     << "z = \"" << s.text[2] << "\"\n"
     << "transverse_param = \"" << (s.transverse == Transverse::U ? "u" : "v") << "\"\n"
     << "singular_value = " << s.singular_value << "\n"
     << "u_range = [" << s.u_range.lo << ", " << s.u_range.hi << "]\n"
     << "v_range = [" << s.v_range.lo << ", " << s.v_range.hi << "]\n";
  return os.str();
}

}  // namespace frontal
