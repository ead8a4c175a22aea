// frontal-lab: analyze, mesh and verify frontal surfaces from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "frontal/mesh.hpp"
#include "frontal/parallel.hpp"
#include "frontal/report.hpp"
#include "frontal/verify.hpp"

using namespace frontal;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kNumerical = 3, kVerifyFailed = 4 };

std::vector<double> parse_at(const std::vector<std::string>& specs) {
  std::vector<double> out;
  for (const std::string& raw : specs) {
    std::string s = raw;
    if (s.rfind("u=", 0) == 0) s = s.substr(2);
    std::stringstream parts(s);
    for (std::string tok; std::getline(parts, tok, ',');) {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != tok.size()) throw InputError("--at expects u=<number>, got '" + raw + "'");
      out.push_back(x);
    }
  }
  return out;
}

std::vector<std::string> split_surfaces(const std::vector<std::string>& specs) {
  std::vector<std::string> out;
  for (const std::string& raw : specs) {
    std::stringstream parts(raw);
    for (std::string tok; std::getline(parts, tok, ',');) {
      if (tok != "f" && tok != "nr" && tok != "c1" && tok != "c2") {
        throw InputError("--surface expects f, nr, c1 or c2, got '" + tok + "'");
      }
      out.push_back(tok);
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

struct Options {
  std::string input;
  std::vector<std::string> at, surfaces;
  int nu = 41, nv = 41;
  int order = 0;
  double tol = 0;
  std::string out, format, suite = "default";
};

RunConfig make_config(const std::string& command, const Options& o) {
  RunConfig c;
  c.command = command;
  c.input = o.input;
  c.at = parse_at(o.at);
  if (!o.surfaces.empty()) c.surfaces = split_surfaces(o.surfaces);
  if (o.nu < 2 || o.nv < 2) throw InputError("grid resolutions must be >= 2");
  c.nu = o.nu;
  c.nv = o.nv;
  if (o.order != 0) {
    if (o.order < 5 || o.order > 20) throw InputError("--order must be between 5 and 20");
    c.settings.order = o.order;
  }
  if (o.tol != 0) {
    if (!(o.tol > 0)) throw InputError("--tol must be positive");
    // base threshold for values; derivative thresholds keep their default ratio
    c.classify.deriv_tol = c.classify.deriv_tol / c.classify.value_tol * o.tol;
    c.classify.value_tol = o.tol;
  }
  if (!o.format.empty() && o.format != "json" && o.format != "csv") {
    throw InputError("--format must be json or csv");
  }
  c.format = o.format.empty() ? "json" : o.format;
  c.out = o.out;
  c.suite = o.suite;
  c.threads = worker_count();
  resolve_config(c);
  return c;
}

int cmd_analyze(const Options& o) {
  RunConfig c = make_config("analyze", o);
  if (c.input.empty()) throw InputError("analyze needs an input (builtin name or surface file)");
  const SurfaceDef s = load_surface(c);
  if (c.at.empty()) c.at.push_back(0.5 * (s.axis_range().lo + s.axis_range().hi));
  if (c.format == "csv") {
    emit(profile_csv(c, s), c.out);
    return kOk;
  }
  const AnalyzeResult r = analyze(c, s, utc_timestamp());
  emit(r.report.dump(2) + "\n", c.out);
  if (!r.report["errors"].empty()) {
    for (const auto& e : r.report["errors"]) {
      std::cerr << "warning: " << e["section"].get<std::string>() << " at u = " << e["at"].get<double>() << ": "
                << e["message"].get<std::string>() << " (" << e["hint"].get<std::string>() << ")\n";
    }
  }
  return r.numerical_failure ? kNumerical : kOk;
}

int cmd_mesh(const Options& o) {
  RunConfig c = make_config("mesh", o);
  if (c.input.empty()) throw InputError("mesh needs an input (builtin name or surface file)");
  const SurfaceDef s = load_surface(c);
  MeshOptions mo;
  mo.nu = c.nu;
  mo.nv = c.nv;
  ObjMesh mesh;
  for (const std::string& which : c.surfaces) mesh.groups.push_back(mesh_surface(s, which, mo, c.settings, mesh));
  if (c.out.empty()) c.out = s.name + ".obj";
  std::ostringstream os;
  write_obj(os, mesh, "frontal-lab mesh\nconfig " + config_json(c).dump());
  emit(os.str(), c.out);
  int holes = 0;
  for (const ObjGroup& g : mesh.groups) holes += g.holes;
  std::cout << c.out << ": " << mesh.vertices.size() << " vertices, " << mesh.face_count() << " faces, "
            << mesh.line_count() << " polylines, " << holes << " masked quads\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  Options v = o;
  if (v.input.empty()) v.input = "all";
  RunConfig c = make_config("verify", v);
  const std::vector<CheckRow> rows = verify_rows(c.input, c.suite);
  int passed = 0;
  for (const CheckRow& r : rows) passed += r.pass ? 1 : 0;
  if (o.format.empty()) {
    std::cout << rows_table(rows);
    std::cout << passed << "/" << rows.size() << " rows pass\n";
    if (!c.out.empty()) emit(rows_json(c, rows, utc_timestamp()).dump(2) + "\n", c.out);
  } else if (c.format == "csv") {
    emit(rows_csv(rows), c.out);
  } else {
    emit(rows_json(c, rows, utc_timestamp()).dump(2) + "\n", c.out);
  }
  return passed == static_cast<int>(rows.size()) ? kOk : kVerifyFailed;
}

int cmd_examples(const Options& o) {
  Json list = Json::array();
  for (const std::string& name : builtin_names()) list.push_back(surface_json(builtin(name)));
  if (o.format == "json") {
    emit(list.dump(2) + "\n", o.out);
    return kOk;
  }
  std::ostringstream os;
  for (const auto& e : list) {
    os << e["name"].get<std::string>() << "  (" << e["x"].get<std::string>() << ", " << e["y"].get<std::string>()
       << ", " << e["z"].get<std::string>() << ")  singular set " << e["transverse_param"].get<std::string>()
       << " = " << e["singular_value"].get<double>() << "\n";
  }
  emit(os.str(), o.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frontal-lab: invariants, focal surfaces and normal ruled surfaces of frontals"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("input", o.input, "builtin example name or surface file");
    sub->add_option("--at", o.at, "axis parameter(s), u=<val> (internal chart)");
    sub->add_option("--surface", o.surfaces, "f, nr, c1, c2 (repeatable or comma separated)");
    sub->add_option("--nu", o.nu, "grid points along u");
    sub->add_option("--nv", o.nv, "grid points along v");
    sub->add_option("--order", o.order, "jet order K");
    sub->add_option("--tol", o.tol, "base classification threshold");
    sub->add_option("--out", o.out, "output path (default: stdout, or <name>.obj for mesh)");
    sub->add_option("--format", o.format, "json or csv");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "invariants, classifications and profiles at axis points");
  common(analyze, true);
  CLI::App* mesh = app.add_subcommand("mesh", "OBJ meshes of f, NR, C1, C2 with singular curves");
  common(mesh, true);
  CLI::App* verify = app.add_subcommand("verify", "run the verification table");
  common(verify, true);
  verify->add_option("--suite", o.suite, "default, classifiers, structure, jet, ccr, all");
  CLI::App* examples = app.add_subcommand("examples", "list the builtin examples");
  common(examples, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*mesh) return cmd_mesh(o);
    if (*verify) return cmd_verify(o);
    if (*examples) return cmd_examples(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical precondition failed: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
