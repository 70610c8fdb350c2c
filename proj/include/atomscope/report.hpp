#pragma once

#include <map>
#include <string>
#include <vector>

namespace atomscope::report {

enum class Flag { pass, fail, report_only };

struct Row {
  double Z = 0.0, N = 0.0, alpha = 0.0;
  std::string observable;
  double value = 0.0, bound = 0.0;
  Flag flag = Flag::report_only;
  double runtime_s = 0.0;
};

struct Curve {
  std::string name;  // written as <name>.csv with columns x,value
  std::vector<std::pair<double, double>> points;
};

struct ScanReport {
  std::string experiment;
  std::string version = "atomscope 1.0";
  std::string config_hash;
  std::string date;
  std::vector<Row> rows;
  std::vector<Curve> curves;

  bool all_asserted_pass() const;
};

// FNV-1a over the canonical (key-sorted) "k=v\n" serialization.
std::string config_hash(const std::map<std::string, std::string>& kv);

std::string flag_to_string(Flag f);
Flag flag_from_string(const std::string& s);

// CSV column order: Z,N,alpha,observable,value,bound,pass,runtime_s.
// JSON carries the full metadata.  Comparison curves go to <name>.csv.
void emit_report(const ScanReport& rep, bool csv, bool json,
                 const std::string& out_dir);

ScanReport load_report_json(const std::string& path);

}  // namespace atomscope::report
