#include "atomscope/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "atomscope/common.hpp"
#include "json.hpp"

namespace atomscope::report {

bool ScanReport::all_asserted_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const Row& r) { return r.flag != Flag::fail; });
}

std::string config_hash(const std::map<std::string, std::string>& kv) {
  // std::map iterates key-sorted, so the serialization is canonical
  std::string s;
  for (const auto& [k, v] : kv) {
    s += k;
    s += '=';
    s += v;
    s += '\n';
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string flag_to_string(Flag f) {
  switch (f) {
    case Flag::pass: return "pass";
    case Flag::fail: return "fail";
    default: return "report-only";
  }
}

Flag flag_from_string(const std::string& s) {
  if (s == "pass") return Flag::pass;
  if (s == "fail") return Flag::fail;
  if (s == "report-only") return Flag::report_only;
  throw param_error("unknown pass flag: " + s);
}

void emit_report(const ScanReport& rep, bool csv, bool json,
                 const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("emit_report: cannot create " + out_dir);
  const std::string base = out_dir + "/" + rep.experiment;
  if (csv) {
    std::ofstream out(base + ".csv");
    if (!out) throw std::runtime_error("emit_report: cannot open " + base + ".csv");
    out << "Z,N,alpha,observable,value,bound,pass,runtime_s\n";
    char buf[256];
    for (const auto& r : rep.rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%.17g,%.17g,%s,%.3f\n",
                    r.Z, r.N, r.alpha, r.observable.c_str(), r.value, r.bound,
                    flag_to_string(r.flag).c_str(), r.runtime_s);
      out << buf;
    }
  }
  if (json) {
    nlohmann::ordered_json j;
    j["experiment"] = rep.experiment;
    j["version"] = rep.version;
    j["config_hash"] = rep.config_hash;
    j["date"] = rep.date;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
      j["rows"].push_back({{"Z", r.Z},
                           {"N", r.N},
                           {"alpha", r.alpha},
                           {"observable", r.observable},
                           {"value", r.value},
                           {"bound", r.bound},
                           {"pass", flag_to_string(r.flag)},
                           {"runtime_s", r.runtime_s}});
    }
    std::ofstream out(base + ".json");
    if (!out) throw std::runtime_error("emit_report: cannot open " + base + ".json");
    out << j.dump(2) << "\n";
  }
  for (const auto& c : rep.curves) {
    std::ofstream out(out_dir + "/" + c.name + ".csv");
    if (!out)
      throw std::runtime_error("emit_report: cannot open curve " + c.name);
    out << "x,value\n";
    char buf[96];
    for (const auto& [x, v] : c.points) {
      std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", x, v);
      out << buf;
    }
  }
}

ScanReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_report_json: cannot open " + path);
  nlohmann::json j;
  in >> j;
  ScanReport rep;
  rep.experiment = j.value("experiment", "");
  rep.version = j.value("version", "");
  rep.config_hash = j.value("config_hash", "");
  rep.date = j.value("date", "");
  for (const auto& rj : j["rows"]) {
    Row r;
    r.Z = rj.value("Z", 0.0);
    r.N = rj.value("N", 0.0);
    r.alpha = rj.value("alpha", 0.0);
    r.observable = rj.value("observable", "");
    r.value = rj.value("value", 0.0);
    r.bound = rj.value("bound", 0.0);
    r.flag = flag_from_string(rj.value("pass", "report-only"));
    r.runtime_s = rj.value("runtime_s", 0.0);
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace atomscope::report
