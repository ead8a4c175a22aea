#pragma once

#include <functional>
#include <string>
#include <vector>

#include "frontal/classify.hpp"

namespace frontal {

struct CheckRow {
  std::string id;      // e.g. "1.kappa_s"
  std::string anchor;  // what the check reproduces
  double computed = 0;
  double expected = 0;
  double tol = 0;
  bool pass = false;
  std::string note;
};

// |computed - expected| <= tol
CheckRow check_close(std::string id, std::string anchor, double computed, double expected, double tol,
                     std::string note = {});
// computed <= bound
CheckRow check_below(std::string id, std::string anchor, double computed, double bound, std::string note = {});
CheckRow check_true(std::string id, std::string anchor, bool ok, std::string note = {});

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckRow> rows;
  bool pass() const;
  double seconds = 0;
  std::string error;  // set when the check itself threw
};

// Acceptance criteria 1..13. Criterion 9 here covers verdict agreement and
// the phi-oracle signs; the test layer adds the AB product on top.
constexpr int kCriterionCount = 13;
CriterionResult run_criterion(int id);
std::string criterion_title(int id);

// ---- synthesized classifier suite ------------------------------------------

struct SuiteCase {
  std::string name;
  bool developable = true;
  ScalarFn ks, kn, kt;
  // prescribed derivatives at u0, used only by oracles
  double u0 = 0;
  Verdict expected = Verdict::Unclassified;
};
std::vector<SuiteCase> synthesized_suite();

struct SuiteOutcome {
  SuiteCase c;
  AxisModel model;
  SingularityReport report;
  bool has_phi = false;
  PhiOracle phi;
  double w0 = 0;
};
SuiteOutcome run_suite_case(const SuiteCase& c);

// Normal-form surfaces with r_c(0) = 0, r_c'(0) != 0 and a first-order ridge.
std::vector<SurfaceDef> ccr_suite();

// Expression corpus for the jet engine check: expression text and a base point.
struct CorpusEntry {
  std::string text;
  Point2 base;
};
const std::vector<CorpusEntry>& jet_corpus();

// Rows for `verify <target> --suite <suite>`. target: a builtin name, "all",
// or a surface file; suite: "default", "classifiers", "structure", "jet",
// "ccr", "all".
std::vector<CheckRow> verify_rows(const std::string& target, const std::string& suite);

}  // namespace frontal
