// Acceptance suite: runs every top-level verification with pinned grids and
// tolerances and prints one PASS/FAIL line per criterion. Exit code 0 iff
// all criteria pass. A JSON report with all underlying records is written
// next to the binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "qou/report.hpp"
#include "qou/suites.hpp"

namespace {

struct Criterion {
  std::string label;
  std::string suite;
  std::set<std::string> names;  // empty: all records of the suite
  double time_limit_s;
};

}  // namespace

int main() {
  setenv("OPENBLAS_NUM_THREADS", "1", 0);

  qou::SuiteConfig cfg;
  cfg.suite = "all";
  cfg.beta_grid = {0.5, 1.0, 2.0};
  cfg.p_grid = {2.0, 3.0, 4.0, 8.0, 16.0};
  cfg.dim = 64;
  cfg.degree_cap = 4;
  cfg.seed = 20250808ULL;
  cfg.samples_structure = 1000;
  cfg.samples_lemma = 10000;
  cfg.samples_sharpness = 1000;
  cfg.samples_schatten = 1000;
  cfg.samples_bcl = 1000;
  cfg.budget = 1000;
  cfg.ascent = 16;
  cfg.with_timestamp = true;

  std::vector<qou::CheckRecord> records;
  auto append = [&](std::vector<qou::CheckRecord> recs) {
    records.insert(records.end(), recs.begin(), recs.end());
  };
  append(qou::suite_meixner(cfg));
  append(qou::suite_bounds(cfg));
  append(qou::suite_sequences(cfg));
  append(qou::suite_schatten(cfg));
  append(qou::suite_semigroup(cfg));
  {
    qou::SuiteConfig hc = cfg;
    hc.p_grid = {3.0, 4.0, 8.0};
    append(qou::suite_hypercontractivity(hc));
  }

  const std::vector<Criterion> criteria = {
      {"Meixner orthogonality", "meixner", {"orthogonality"}, 5.0},
      {"pointwise bound and Stirling sandwiches", "bounds", {}, 5.0},
      {"F-structure identities", "sequences", {"f-structure"}, 10.0},
      {"weighted-norm theorem and sharpness",
       "sequences",
       {"main-lemma", "band-lemma", "sharpness", "induction-prefactor"},
       60.0},
      {"cross-module norm oracle", "schatten", {"norm-oracle"}, 30.0},
      {"Schatten sandwich", "schatten", {"sandwich"}, 30.0},
      {"semigroup structure", "semigroup", {}, 120.0},
      {"hypercontractivity certificates", "hypercontractivity", {}, 300.0},
      {"Ball-Carlen-Lieb", "schatten", {"bcl"}, 60.0},
  };

  bool all_ok = true;
  int idx = 0;
  for (const auto& cr : criteria) {
    ++idx;
    bool ok = true;
    double wall_ms = 0.0;
    double worst_slack = std::numeric_limits<double>::infinity();
    int n_checks = 0;
    for (const auto& rec : records) {
      if (rec.suite != cr.suite) continue;
      if (!cr.names.empty() && !cr.names.count(rec.name)) continue;
      ++n_checks;
      ok = ok && rec.passed;
      wall_ms += rec.wall_ms;
      worst_slack = std::min(worst_slack, rec.slack);
    }
    const bool in_time = wall_ms / 1000.0 < cr.time_limit_s;
    ok = ok && in_time && n_checks > 0;
    all_ok = all_ok && ok;
    std::printf("[%d/9] %s  %s: %d checks, worst slack %.3e, %.1f s (limit %.0f s)%s\n",
                idx, ok ? "PASS" : "FAIL", cr.label.c_str(), n_checks,
                worst_slack, wall_ms / 1000.0, cr.time_limit_s,
                in_time ? "" : " [over time]");
  }

  qou::RunReport rep;
  rep.config = cfg.to_json();
  rep.with_timestamp = true;
  rep.timestamp = qou::current_timestamp();
  rep.checks = records;
  std::ofstream os("acceptance_report.json");
  os << rep.to_json().dump(2) << "\n";

  std::printf("%s\n", all_ok ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all_ok ? 0 : 1;
}
