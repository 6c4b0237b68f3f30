#ifndef QOU_REPORT_HPP
#define QOU_REPORT_HPP

#include <json.hpp>
#include <string>
#include <vector>

namespace qou {

using json = nlohmann::ordered_json;

// One verification record; every numeric check carries its tolerance and
// slack, never a bare pass/fail.
struct CheckRecord {
  std::string suite;
  std::string name;
  json params = json::object();
  double value = 0.0;
  double lower = std::numeric_limits<double>::quiet_NaN();
  double upper = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;
  double slack = 0.0;
  bool passed = false;
  double wall_ms = 0.0;

  json to_json() const;
};

struct RunReport {
  json config = json::object();
  std::vector<CheckRecord> checks;
  double wall_time_s = 0.0;
  bool with_timestamp = true;
  std::string timestamp;

  int n_passed() const;
  int n_failed() const;
  json to_json() const;
  std::string to_csv() const;

  static RunReport from_json(const json& j);
  static RunReport merge(const std::vector<RunReport>& parts);
};

std::string current_timestamp();

}  // namespace qou

#endif
