#include "qou/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace qou {

namespace {

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

json CheckRecord::to_json() const {
  json j = json::object();
  j["suite"] = suite;
  j["name"] = name;
  j["params"] = params;
  j["value"] = number_or_null(value);
  j["lower"] = number_or_null(lower);
  j["upper"] = number_or_null(upper);
  j["tol"] = tol;
  j["slack"] = slack;
  j["passed"] = passed;
  j["wall_ms"] = wall_ms;
  return j;
}

int RunReport::n_passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.passed ? 1 : 0;
  return n;
}

int RunReport::n_failed() const {
  return static_cast<int>(checks.size()) - n_passed();
}

json RunReport::to_json() const {
  // byte-stable mode (no timestamp) also zeroes the wall-time fields so
  // identical configs produce identical bytes
  json j = json::object();
  j["config"] = config;
  if (with_timestamp) j["timestamp"] = timestamp;
  json arr = json::array();
  for (const auto& c : checks) {
    json cj = c.to_json();
    if (!with_timestamp) cj["wall_ms"] = 0.0;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  j["summary"] = {{"passed", n_passed()},
                  {"failed", n_failed()},
                  {"wall_time", with_timestamp ? wall_time_s : 0.0}};
  return j;
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "suite,name,params,value,lower,upper,tol,slack,passed,wall_ms\n";
  auto num = [](double v) {
    if (std::isnan(v)) return std::string();
    std::ostringstream t;
    t.precision(17);
    t << v;
    return t.str();
  };
  for (const auto& c : checks) {
    std::string params = c.params.dump();
    for (auto& ch : params)
      if (ch == ',') ch = ';';
    os << c.suite << ',' << c.name << ',' << '"' << params << '"' << ','
       << num(c.value) << ',' << num(c.lower) << ',' << num(c.upper) << ','
       << num(c.tol) << ',' << num(c.slack) << ',' << (c.passed ? 1 : 0)
       << ',' << num(with_timestamp ? c.wall_ms : 0.0) << '\n';
  }
  return os.str();
}

RunReport RunReport::from_json(const json& j) {
  RunReport r;
  r.config = j.value("config", json::object());
  r.with_timestamp = j.contains("timestamp");
  if (r.with_timestamp) r.timestamp = j["timestamp"].get<std::string>();
  if (j.contains("summary"))
    r.wall_time_s = j["summary"].value("wall_time", 0.0);
  for (const auto& cj : j.value("checks", json::array())) {
    CheckRecord c;
    c.suite = cj.value("suite", "");
    c.name = cj.value("name", "");
    c.params = cj.value("params", json::object());
    auto get_num = [&](const char* key) {
      if (!cj.contains(key) || cj[key].is_null())
        return std::numeric_limits<double>::quiet_NaN();
      return cj[key].get<double>();
    };
    c.value = get_num("value");
    c.lower = get_num("lower");
    c.upper = get_num("upper");
    c.tol = cj.value("tol", 0.0);
    c.slack = cj.value("slack", 0.0);
    c.passed = cj.value("passed", false);
    c.wall_ms = cj.value("wall_ms", 0.0);
    r.checks.push_back(std::move(c));
  }
  return r;
}

RunReport RunReport::merge(const std::vector<RunReport>& parts) {
  RunReport out;
  json cfgs = json::array();
  for (const auto& p : parts) {
    cfgs.push_back(p.config);
    out.checks.insert(out.checks.end(), p.checks.begin(), p.checks.end());
    out.wall_time_s += p.wall_time_s;
  }
  out.config = {{"merged", cfgs}};
  out.with_timestamp = false;
  return out;
}

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::tm tmv{};
  gmtime_r(&tt, &tmv);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tmv);
  return buf;
}

}  // namespace qou
