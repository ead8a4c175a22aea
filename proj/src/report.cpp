#include "frontal/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "frontal/derived.hpp"

namespace frontal {

namespace {

Json vec(const Eigen::Vector3d& x) { return Json::array({x.x(), x.y(), x.z()}); }
Json vec2(const Eigen::Vector2d& x) { return Json::array({x.x(), x.y()}); }

// NaN and inf have no JSON spelling
Json num(double x) { return std::isfinite(x) ? Json(x == 0.0 ? 0.0 : x) : Json(nullptr); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string hint_for(const std::exception& e) {
  if (dynamic_cast<const DeflationError*>(&e)) {
    return "the chart must be pre-adapted (singular set at the singular_value level of transverse_param, "
           "null direction along it) and the point pure-frontal";
  }
  if (dynamic_cast<const DomainError*>(&e)) return "an expression left its domain; shrink u_range/v_range";
  if (dynamic_cast<const InputError*>(&e)) return "check the surface file and command-line values";
  return "precondition failed at this point; try another --at value or adjust --tol";
}

std::string kind_of(const std::exception& e) {
  if (dynamic_cast<const DeflationError*>(&e)) return "deflation";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical";
  if (dynamic_cast<const InputError*>(&e)) return "input";
  return "internal";
}

Json invariants_json(const InvariantSample& I) {
  return Json{{"u", I.u},           {"kappa_s", num(I.kappa_s)}, {"kappa_nu", num(I.kappa_nu)},
              {"kappa_t", num(I.kappa_t)}, {"kappa_c", num(I.kappa_c)}, {"r_b", num(I.r_b)},
              {"r_c", num(I.r_c)},   {"adaptedness", num(I.adaptedness)}};
}

Json derivative_json(const Derivative& d) { return Json{{"value", num(d.value)}, {"error", num(d.error)}}; }

Json point_json(const FrontalPoint& P) {
  return Json{{"u", P.p.u},
              {"v", P.p.v},
              {"f", vec(P.f)},
              {"f_u", vec(P.f_u)},
              {"h", vec(P.h)},
              {"nu", vec(P.nu)},
              {"lambda", num(P.lambda)},
              {"E", num(P.E)},
              {"F", num(P.F)},
              {"G", num(P.G)},
              {"L", num(P.L)},
              {"M", num(P.M)},
              {"N", num(P.N)},
              {"N1", num(P.N1)},
              {"K", num(P.K)},
              {"H", num(P.H)},
              {"Gamma", num(P.Gamma)},
              {"kappa_1", num(P.kappa[0])},
              {"kappa_2", num(P.kappa[1])},
              {"V_1", vec2(P.V[0])},
              {"V_2", vec2(P.V[1])},
              {"x_1", vec(P.x[0])},
              {"x_2", vec(P.x[1])}};
}

Json criteria_json(const SingularityReport& r) {
  Json out = Json::array();
  for (const Criterion& c : r.criteria) {
    out.push_back(Json{{"name", c.name}, {"value", num(c.value)}, {"threshold", num(c.threshold)},
                       {"state", to_string(c.state)}});
  }
  return out;
}

Json report_json(const SingularityReport& r) {
  return Json{{"surface", r.surface},
              {"location", Json::array({r.location.u, num(r.location.v)})},
              {"verdict", to_string(r.verdict)},
              {"margin", num(r.margin)},
              {"criteria", criteria_json(r)},
              {"note", r.note}};
}

Json focal_json(const FocalReport& r) {
  Json j = report_json(r);
  j["j"] = r.j;
  j["ridge_order"] = r.ridge_order;
  if (r.verdict == Verdict::CuspidalCrossCap || r.verdict == Verdict::NotCuspidalCrossCap ||
      r.verdict == Verdict::FirstKind) {
    j["ccr_lhs"] = num(r.lhs);
    j["ccr_rhs"] = num(r.rhs);
    j["rho_hat_prime_trace"] = num(r.rho_hat1_trace);
    j["rho_hat_prime_jet"] = num(r.rho_hat1_jet);
    j["psi_slope"] = num(r.psi_slope);
  }
  return j;
}

struct Sections {
  Json errors = Json::array();
  bool numerical = false;

  template <class F>
  Json run(const std::string& section, double u0, F&& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      errors.push_back(Json{{"section", section}, {"at", u0}, {"type", kind_of(e)}, {"message", e.what()},
                            {"hint", hint_for(e)}});
      if (section == "frontal_point" || section == "invariants") numerical = true;
      return Json(nullptr);
    }
  }
};

Json nr_json(const SurfaceDef& s, double u0, const RunConfig& c, Sections& sec) {
  const Settings& st = c.settings;
  return sec.run("nr", u0, [&] {
    const AxisModel m = surface_axis_model(s, st);
    const DevelopableEvidence ev = nr_developable_test(m, st);
    Json j{{"developable", ev.developable},
           {"max_abs_kappa_t", num(ev.max_kappa_t)},
           {"max_det_mismatch", num(ev.max_mismatch)}};
    const InvariantSample I = m.invariants.sample(u0);
    if (std::abs(I.kappa_nu) < st.kappa_tol) {
      j["classification"] = nullptr;
      j["note"] = "kappa_nu(" + fmt(u0) + ") = 0: the ruling through u0 has no finite singular point";
      return j;
    }
    if (ev.developable) {
      j["classification"] = report_json(classify_nr_developable(m, u0, st, c.classify));
    } else if (std::abs(I.kappa_t) <= c.classify.value_tol) {
      j["classification"] = report_json(classify_nr_nondevelopable(m, u0, 1.0 / I.kappa_nu, st, c.classify));
      const PhiOracle ph = phi_oracle(m, u0, 1.0 / I.kappa_nu, st);
      j["phi"] = Json{{"phi", num(ph.phi)},           {"phi_w", num(ph.phi_w)},
                      {"hessian", num(ph.hessian)},   {"hessian_closed", num(ph.hessian_closed)},
                      {"phi_frame", num(ph.phi_frame)}, {"phi_w_frame", num(ph.phi_w_frame)}};
    } else {
      j["classification"] = nullptr;
      j["note"] = "kappa_t(" + fmt(u0) + ") != 0: no singular point of NR on this ruling";
    }
    return j;
  });
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void resolve_config(RunConfig& c) {
  if (c.input.empty()) return;
  if (c.command == "verify" && c.input == "all") {
    c.resolved_input = "all";
    return;
  }
  if (is_builtin(c.input)) {
    c.resolved_input = "builtin:" + c.input;
    return;
  }
  const std::filesystem::path p(c.input);
  if (!std::filesystem::exists(p)) {
    throw InputError("'" + c.input + "' is neither a builtin example nor an existing file (see 'frontal-lab examples')");
  }
  c.resolved_input = std::filesystem::absolute(p).lexically_normal().string();
}

SurfaceDef load_surface(const RunConfig& c) {
  if (c.resolved_input.rfind("builtin:", 0) == 0) return builtin(c.resolved_input.substr(8));
  SurfaceDef s = parse_surface_file(c.resolved_input);
  validate_frontal(s, c.settings);
  return s;
}

Json config_json(const RunConfig& c) {
  const Settings& st = c.settings;
  Json at = Json::array();
  for (double u : c.at) at.push_back(u);
  return Json{{"command", c.command},
              {"input", c.input},
              {"resolved_input", c.resolved_input},
              {"at", at},
              {"surfaces", c.surfaces},
              {"nu", c.nu},
              {"nv", c.nv},
              {"format", c.format},
              {"out", c.out},
              {"suite", c.suite},
              {"threads", c.threads},
              {"settings",
               Json{{"order", st.order},
                    {"zero_tol", st.zero_tol},
                    {"gamma_tol", st.gamma_tol},
                    {"psi_tol", st.psi_tol},
                    {"psi_kmax", st.psi_kmax},
                    {"near_axis", st.near_axis},
                    {"umbilic_tol", st.umbilic_tol},
                    {"kappa_tol", st.kappa_tol},
                    {"ridge_tol", st.ridge_tol},
                    {"fd_step_rel", st.fd_step_rel},
                    {"profile_samples", st.profile_samples}}},
              {"classify",
               Json{{"value_tol", c.classify.value_tol},
                    {"deriv_tol", c.classify.deriv_tol},
                    {"band", c.classify.band},
                    {"scale", c.classify.scale}}}};
}

Json surface_json(const SurfaceDef& s) {
  return Json{{"name", s.name},
              {"x", s.text[0]},
              {"y", s.text[1]},
              {"z", s.text[2]},
              {"transverse_param", s.transverse == Transverse::U ? "u" : "v"},
              {"singular_value", s.singular_value},
              {"u_range", Json::array({s.u_range.lo, s.u_range.hi})},
              {"v_range", Json::array({s.v_range.lo, s.v_range.hi})}};
}

AnalyzeResult analyze(const RunConfig& c, const SurfaceDef& s, const std::string& timestamp) {
  const Settings& st = c.settings;
  Sections sec;
  Json points = Json::array();
  for (double u0 : c.at) {
    Json p;
    p["u"] = u0;
    p["frontal_point"] = sec.run("frontal_point", u0, [&] { return point_json(evaluate_point(s, {u0, 0.0}, st)); });
    p["invariants"] = sec.run("invariants", u0, [&] { return invariants_json(invariants_at(s, u0, st)); });
    p["invariant_derivatives"] = sec.run("invariant_derivatives", u0, [&] {
      const InvariantDerivatives d = invariant_derivatives(surface_invariant_source(s, st), u0);
      return Json{{"kappa_s'", derivative_json(d.kappa_s1)},   {"kappa_s''", derivative_json(d.kappa_s2)},
                  {"kappa_nu'", derivative_json(d.kappa_nu1)}, {"kappa_nu''", derivative_json(d.kappa_nu2)},
                  {"kappa_t'", derivative_json(d.kappa_t1)},   {"kappa_t''", derivative_json(d.kappa_t2)},
                  {"r_b'", derivative_json(d.r_b1)},           {"r_c'", derivative_json(d.r_c1)}};
    });
    p["front_class"] = sec.run("front_class", u0, [&] {
      const FrontClass fc = classify_front(s, u0, st);
      Json d = Json::array();
      for (double x : fc.derivatives) d.push_back(num(x));
      return Json{{"tag", to_string(fc.tag)},
                  {"k", fc.k},
                  {"psi_derivatives", d},
                  {"max_abs_psi_profile", num(fc.max_abs_profile)},
                  {"threshold", num(fc.threshold)}};
    });
    Json ridges = Json::array();
    Json focal = Json::array();
    std::vector<Verdict> verdicts;
    for (int j : {1, 2}) {
      ridges.push_back(sec.run("ridge", u0, [&] {
        const RidgeReport r = ridge_report(s, u0, j, st);
        return Json{{"j", j},
                    {"order", r.order},
                    {"V_kappa", num(r.V_kappa)},
                    {"second_order", num(r.second_order)},
                    {"VV_kappa", num(r.VV_kappa)},
                    {"V_kappa_other", num(r.V_kappa_other)},
                    {"sub_parabolic", r.sub_parabolic}};
      }));
      focal.push_back(sec.run("focal", u0, [&] {
        const FocalReport r = classify_focal_point(s, j, u0, st, c.classify);
        verdicts.push_back(r.verdict);
        Json fj = focal_json(r);
        if (r.verdict != Verdict::Regular) {
          // S(C_j) through the axis: report psi_{C_j} there and whether it vanishes along the axis
          const PurePropagationReport pp = pure_propagation_check(s, j, st);
          fj["pure_propagation"] = Json{{"hypotheses_met", pp.hypotheses_met},
                                        {"note", pp.note},
                                        {"singular_set_is_axis", pp.hypotheses_met && pp.trace_distance < 1e-8},
                                        {"trace_distance", num(pp.trace_distance)},
                                        {"max_abs_psi", num(pp.max_abs_psi)},
                                        {"psi_vanishes", pp.hypotheses_met && pp.max_abs_psi < 1e-8}};
        }
        return fj;
      }));
    }
    p["ridge"] = ridges;
    p["focal"] = focal;
    if (verdicts.size() == 2 && verdicts[0] == Verdict::Regular && verdicts[1] == Verdict::Regular) {
      p["focal_summary"] = "C1, C2 regular at " + fmt(u0);
    } else {
      std::string summary = verdicts.empty() ? "focal surfaces unavailable (see errors)" : "";
      for (std::size_t k = 0; k < verdicts.size(); ++k) {
        if (!summary.empty()) summary += "; ";
        summary += "C" + std::to_string(k + 1) + " " + to_string(verdicts[k]);
      }
      p["focal_summary"] = summary;
    }
    p["nr"] = nr_json(s, u0, c, sec);
    points.push_back(std::move(p));
  }

  Json profile = sec.run("profile", c.at.empty() ? 0.0 : c.at.front(), [&] {
    const Interval A = s.axis_range();
    Json rows = Json::array();
    const int n = st.profile_samples;
    for (int k = 0; k < n; ++k) {
      const double u = A.lo + A.width() * k / (n - 1);
      rows.push_back(invariants_json(invariants_at(s, u, st)));
    }
    return rows;
  });

  AnalyzeResult r;
  r.report = Json{{"tool", "frontal-lab"},
                  {"timestamp", timestamp},
                  {"config", config_json(c)},
                  {"surface", surface_json(s)},
                  {"points", points},
                  {"profile", profile},
                  {"errors", sec.errors}};
  r.numerical_failure = sec.numerical;
  return r;
}

std::string profile_csv(const RunConfig& c, const SurfaceDef& s) {
  const Settings& st = c.settings;
  std::ostringstream os;
  os.precision(17);
  os << "u,kappa_s,kappa_nu,kappa_t,kappa_c,r_b,r_c,kappa_1,kappa_2,K,H,psi,"
        "order,zero_tol,gamma_tol,psi_tol,value_tol,deriv_tol,band\n";
  const Interval A = s.axis_range();
  const int n = st.profile_samples;
  std::vector<double> us;
  for (int k = 0; k < n; ++k) us.push_back(A.lo + A.width() * k / (n - 1));
  const auto psi = psi_profile(s, us, st);
  // shortest round-trip text; -0 prints as 0
  auto cell = [](double x) {
    if (!std::isfinite(x)) return std::string();
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
    return std::string(buf, r.ptr);
  };
  for (int k = 0; k < n; ++k) {
    const double u = us[static_cast<std::size_t>(k)];
    InvariantSample I;
    FrontalPoint P;
    bool ok = true;
    try {
      I = invariants_at(s, u, st);
      P = evaluate_point(s, {u, 0.0}, st);
    } catch (const NumericalError&) {
      ok = false;
    }
    const double nan = std::nan("");
    os << cell(u);
    for (double x : {I.kappa_s, I.kappa_nu, I.kappa_t, I.kappa_c, I.r_b, I.r_c, P.kappa[0], P.kappa[1], P.K, P.H}) {
      os << ',' << cell(ok ? x : nan);
    }
    os << ',' << cell(psi[static_cast<std::size_t>(k)].second);
    os << ',' << st.order << ',' << cell(st.zero_tol) << ',' << cell(st.gamma_tol) << ',' << cell(st.psi_tol) << ','
       << cell(c.classify.value_tol) << ',' << cell(c.classify.deriv_tol) << ',' << cell(c.classify.band) << '\n';
  }
  return os.str();
}

Json rows_json(const RunConfig& c, const std::vector<CheckRow>& rows, const std::string& timestamp) {
  Json arr = Json::array();
  int passed = 0;
  for (const CheckRow& r : rows) {
    passed += r.pass ? 1 : 0;
    arr.push_back(Json{{"id", r.id},
                       {"anchor", r.anchor},
                       {"computed", num(r.computed)},
                       {"expected", num(r.expected)},
                       {"tolerance", num(r.tol)},
                       {"verdict", r.pass ? "pass" : "fail"},
                       {"note", r.note}});
  }
  return Json{{"tool", "frontal-lab"},
              {"timestamp", timestamp},
              {"config", config_json(c)},
              {"passed", passed},
              {"total", rows.size()},
              {"rows", arr}};
}

std::string rows_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "id,anchor,computed,expected,tolerance,verdict,note\n";
  for (const CheckRow& r : rows) {
    os << csv_field(r.id) << ',' << csv_field(r.anchor) << ',' << r.computed << ',' << r.expected << ',' << r.tol
       << ',' << (r.pass ? "pass" : "fail") << ',' << csv_field(r.note) << '\n';
  }
  return os.str();
}

std::string rows_table(const std::vector<CheckRow>& rows) {
  std::size_t wid = 2, wan = 6;
  for (const CheckRow& r : rows) {
    wid = std::max(wid, r.id.size());
    wan = std::max(wan, r.anchor.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(wid)) << "id" << "  " << std::setw(static_cast<int>(wan)) << "anchor"
     << "  " << std::setw(22) << "computed" << std::setw(22) << "expected" << std::setw(10) << "tol"
     << "verdict\n";
  for (const CheckRow& r : rows) {
    std::ostringstream comp, exp, tol;
    comp.precision(14);
    exp.precision(14);
    tol.precision(3);
    comp << r.computed;
    exp << r.expected;
    tol << r.tol;
    os << std::setw(static_cast<int>(wid)) << r.id << "  " << std::setw(static_cast<int>(wan)) << r.anchor << "  "
       << std::setw(22) << comp.str() << std::setw(22) << exp.str() << std::setw(10) << tol.str()
       << (r.pass ? "pass" : "FAIL");
    if (!r.note.empty()) os << "  " << r.note;
    os << '\n';
  }
  return os.str();
}

}  // namespace frontal
