// Acceptance run: one line per criterion, failing rows listed afterwards.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "frontal/verify.hpp"
#include "oracles.hpp"

using namespace frontal;

namespace {

// AB > 0 whenever the cuspidal S1+ branch fires, with B taken from the
// sampled frame and A from the prescribed invariants.
void add_ab_rows(CriterionResult& r) {
  const oracle::Poly kn_list[][2] = {{{0, 0, 1}, {1, 1}}, {{0, 0, -1}, {1, -2}}, {{0, 0, 3, 1}, {2, 1}}};
  int k = 0;
  for (const SuiteCase& c : synthesized_suite()) {
    if (c.expected != Verdict::CuspidalS1Plus) continue;
    const SuiteOutcome o = run_suite_case(c);
    if (o.report.verdict != Verdict::CuspidalS1Plus || k >= 3) continue;
    const oracle::Poly& ks = kn_list[k][0];
    const oracle::Poly& kn = kn_list[k][1];
    ++k;
    const oracle::Fingerprint fp = oracle::developable_fingerprint(o.model, ks, kn, c.u0);
    r.rows.push_back(check_true("9." + c.name + ".AB", "AB > 0 at a cuspidal S1+", fp.A * fp.B > 0,
                                "A " + std::to_string(fp.A) + ", B " + std::to_string(fp.B)));
    r.rows.push_back(check_close("9." + c.name + ".B", "psi''(u0) from the frame vs -ks'' kn' / kn^2", fp.B,
                                 fp.B_closed, 1e-4));
  }
  if (k != 3) r.rows.push_back(check_true("9.AB.coverage", "three cuspidal S1+ cases", false));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CriterionResult> results;
  int failed = 0;
  for (int id = 1; id <= kCriterionCount; ++id) {
    CriterionResult r = run_criterion(id);
    if (id == 9 && r.error.empty()) {
      try {
        add_ab_rows(r);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
    int ok = 0;
    for (const CheckRow& row : r.rows) ok += row.pass ? 1 : 0;
    std::printf("[%s] criterion %2d  %-36s %3d/%-3zu rows  %6.2f s\n", r.pass() ? "PASS" : "FAIL", id,
                r.title.c_str(), ok, r.rows.size(), r.seconds);
    std::fflush(stdout);
    if (!r.pass()) ++failed;
    results.push_back(std::move(r));
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%d criteria passed in %.2f s\n", kCriterionCount - failed, kCriterionCount, total);
  for (const CriterionResult& r : results) {
    if (r.pass()) continue;
    std::printf("\ncriterion %d (%s):\n", r.id, r.title.c_str());
    if (!r.error.empty()) std::printf("  error: %s\n", r.error.c_str());
    for (const CheckRow& row : r.rows) {
      if (row.pass) continue;
      std::printf("  %-28s computed %.12g expected %.12g tol %.3g  %s\n", row.id.c_str(), row.computed,
                  row.expected, row.tol, row.note.c_str());
    }
  }
  return failed == 0 ? 0 : 1;
}
