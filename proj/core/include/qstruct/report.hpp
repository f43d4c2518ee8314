#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qstruct {

enum class CheckStatus { Pass, Fail, NotFinitelyTestable };

const char* to_string(CheckStatus s);

/// One labelled witness: e.g. {"N", "(structure ...)"}, {"A", "(0 2)"}.
using Witness = std::vector<std::pair<std::string, std::string>>;

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<Witness> witnesses;  // capped; `failures` counts all of them
  std::size_t failures = 0;
  std::string note;

  void count(const std::string& key, std::size_t n = 1);
  /// Records a failure; keeps the first few witnesses.
  void fail(Witness w);
  /// Adds the counts, failures and (capped) witnesses of `part`.
  void merge(const CheckResult& part);
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> caps;
  std::vector<CheckResult> checks;

  bool passed() const;
  CheckResult& add(std::string name);
  const CheckResult* find(const std::string& name) const;
};

inline constexpr std::size_t kMaxWitnesses = 5;
inline constexpr const char* kReportSchema = "qstruct-report/1";

/// Line-delimited JSON: a header record, one record per check, a summary.
/// Wall time is included only when `seconds` is non-negative.
std::string to_json_lines(const Report& r, double seconds = -1.0);

}  // namespace qstruct
