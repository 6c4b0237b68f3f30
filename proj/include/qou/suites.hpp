#ifndef QOU_SUITES_HPP
#define QOU_SUITES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qou/report.hpp"

namespace qou {

struct SuiteConfig {
  std::string suite = "all";
  std::vector<double> beta_grid{0.5, 1.0, 2.0};
  std::vector<double> p_grid{2.0, 3.0, 4.0, 8.0, 16.0};
  int dim = 64;
  int degree_cap = 4;
  uint64_t seed = 12345;
  std::map<std::string, double> tol_override;
  std::string output_path;
  std::string format = "json";
  int jobs = 0;
  bool with_timestamp = true;

  // sample budgets (tests may scale them down; the acceptance suite pins
  // the criterion values)
  int samples_structure = 1000;
  int samples_lemma = 10000;
  int samples_sharpness = 1000;
  int samples_schatten = 1000;
  int samples_bcl = 1000;
  int budget = 1000;
  int ascent = 50;

  void validate() const;
  double tol(const std::string& name, double dflt) const;
  json to_json() const;
};

std::vector<CheckRecord> suite_meixner(const SuiteConfig& cfg);
std::vector<CheckRecord> suite_bounds(const SuiteConfig& cfg);
std::vector<CheckRecord> suite_sequences(const SuiteConfig& cfg);
std::vector<CheckRecord> suite_schatten(const SuiteConfig& cfg);
std::vector<CheckRecord> suite_semigroup(const SuiteConfig& cfg);
std::vector<CheckRecord> suite_hypercontractivity(const SuiteConfig& cfg);

RunReport run_suite(const SuiteConfig& cfg);

}  // namespace qou

#endif
