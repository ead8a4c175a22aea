#include <doctest.h>

#include <sstream>

#include "frontal/mesh.hpp"
#include "frontal/report.hpp"

using namespace frontal;

namespace {

RunConfig config_for(const std::string& input, std::vector<double> at) {
  RunConfig c;
  c.command = "analyze";
  c.input = input;
  c.at = std::move(at);
  resolve_config(c);
  return c;
}

}  // namespace

TEST_CASE("analyze reports are identical apart from the timestamp") {
  const RunConfig c = config_for("paper-52", {0.0, 0.1});
  const SurfaceDef s = load_surface(c);
  const AnalyzeResult a = analyze(c, s, "T");
  const AnalyzeResult b = analyze(c, s, "T");
  CHECK(a.report.dump() == b.report.dump());
  CHECK_FALSE(a.numerical_failure);
  const AnalyzeResult t = analyze(c, s, "other");
  CHECK(t.report.dump() != a.report.dump());
  CHECK(a.report.dump().find("NaN") == std::string::npos);
  CHECK(a.report.contains("config"));
  CHECK(a.report["config"]["resolved_input"] == "builtin:paper-52");
}

TEST_CASE("config resolution") {
  CHECK_THROWS_AS(config_for("no-such-surface", {}), InputError);
  RunConfig c = config_for(std::string(FRONTAL_DATA_DIR) + "/surfaces/paper-52.surf", {});
  CHECK(c.resolved_input.front() == '/');
  CHECK(load_surface(c).name == "paper-52-example");
}

TEST_CASE("CSV field quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  const std::vector<CheckRow> rows{check_close("x.1", "anchor, with comma", 1.0, 1.0, 1e-9)};
  const std::string csv = rows_csv(rows);
  CHECK(csv.find("\"anchor, with comma\"") != std::string::npos);
}

TEST_CASE("profile CSV has one row per sample and a constant column count") {
  RunConfig c = config_for("ridge", {});
  c.format = "csv";
  const std::string csv = profile_csv(c, load_surface(c));
  std::istringstream is(csv);
  std::string line;
  int rows = 0;
  std::size_t cols = 0;
  while (std::getline(is, line)) {
    std::size_t n = 1;
    for (char ch : line) n += ch == ',';
    if (rows == 0) cols = n;
    CHECK(n == cols);
    ++rows;
  }
  CHECK(rows == c.settings.profile_samples + 1);
}

TEST_CASE("OBJ round trip preserves counts and coordinates") {
  const SurfaceDef s = builtin("helicoid");
  const Settings st;
  MeshOptions mo;
  mo.nu = 11;
  mo.nv = 9;
  mo.trace_lines = 41;
  ObjMesh m;
  for (const char* which : {"f", "c1", "nr"}) m.groups.push_back(mesh_surface(s, which, mo, st, m));
  std::stringstream ss;
  write_obj(ss, m, "test header");
  const ObjMesh back = read_obj(ss);
  CHECK(back.vertices.size() == m.vertices.size());
  CHECK(back.face_count() == m.face_count());
  CHECK(back.line_count() == m.line_count());
  REQUIRE(back.groups.size() == m.groups.size());
  for (std::size_t g = 0; g < m.groups.size(); ++g) {
    CHECK(back.groups[g].name == m.groups[g].name);
    CHECK(back.groups[g].holes == m.groups[g].holes);
    CHECK(back.groups[g].faces == m.groups[g].faces);
  }
  double worst = 0;
  for (std::size_t k = 0; k < m.vertices.size(); ++k)
    worst = std::max(worst, (back.vertices[k] - m.vertices[k]).norm());
  CHECK(worst < 1e-12);
  // the f grid is complete: 2 triangles per quad
  CHECK(m.groups[0].faces.size() == static_cast<std::size_t>(2 * (mo.nu - 1) * (mo.nv - 1)));
}

TEST_CASE("OBJ reader accepts polygon and slash forms") {
  std::istringstream is("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\ng quad\nf 1/1/1 2/2/2 3/3/3 4/4/4\nl 1 3\n");
  const ObjMesh m = read_obj(is);
  CHECK(m.vertices.size() == 4);
  CHECK(m.face_count() == 2);
  CHECK(m.line_count() == 1);
}

TEST_CASE("chain_points links neighbours and breaks at gaps") {
  std::vector<Eigen::Vector2d> pts;
  for (int k : {3, 0, 2, 1}) pts.emplace_back(0.1 * k, 0.0);
  for (int k : {1, 0}) pts.emplace_back(5.0 + 0.1 * k, 0.0);
  const auto chains = chain_points(pts, 0.5);
  REQUIRE(chains.size() == 2);
  std::size_t total = 0;
  for (const auto& c : chains) total += c.size();
  CHECK(total == pts.size());
  for (const auto& c : chains)
    for (std::size_t k = 1; k < c.size(); ++k)
      CHECK((pts[static_cast<std::size_t>(c[k])] - pts[static_cast<std::size_t>(c[k - 1])]).norm() < 0.15);
}
