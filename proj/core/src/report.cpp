#include "qstruct/report.hpp"

#include <json.hpp>

namespace qstruct {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::NotFinitelyTestable:
      return "not-finitely-testable";
  }
  return "fail";
}

void CheckResult::count(const std::string& key, std::size_t n) {
  for (auto& [k, v] : counts)
    if (k == key) {
      v += n;
      return;
    }
  counts.emplace_back(key, n);
}

void CheckResult::fail(Witness w) {
  status = CheckStatus::Fail;
  ++failures;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

void CheckResult::merge(const CheckResult& part) {
  for (const auto& [k, v] : part.counts) count(k, v);
  if (part.status == CheckStatus::Fail) status = CheckStatus::Fail;
  failures += part.failures;
  for (const auto& w : part.witnesses)
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

CheckResult& Report::add(std::string name) {
  checks.emplace_back();
  checks.back().name = std::move(name);
  return checks.back();
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string to_json_lines(const Report& r, double seconds) {
  using json = nlohmann::ordered_json;
  std::string out;
  json header;
  header["schema"] = kReportSchema;
  header["record"] = "header";
  header["command"] = r.command;
  json caps = json::object();
  for (const auto& [k, v] : r.caps) caps[k] = v;
  header["caps"] = caps;
  out += header.dump() + "\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    json rec;
    rec["schema"] = kReportSchema;
    rec["record"] = "check";
    rec["name"] = c.name;
    rec["status"] = to_string(c.status);
    json counts = json::object();
    for (const auto& [k, v] : c.counts) counts[k] = v;
    rec["counts"] = counts;
    rec["failures"] = c.failures;
    json ws = json::array();
    for (const auto& w : c.witnesses) {
      json obj = json::object();
      for (const auto& [k, v] : w) obj[k] = v;
      ws.push_back(obj);
    }
    rec["witnesses"] = ws;
    if (!c.note.empty()) rec["note"] = c.note;
    out += rec.dump() + "\n";
    if (c.status == CheckStatus::Fail) ++failed;
  }
  json summary;
  summary["schema"] = kReportSchema;
  summary["record"] = "summary";
  summary["checks"] = r.checks.size();
  summary["failed"] = failed;
  summary["result"] = failed == 0 ? "pass" : "fail";
  if (seconds >= 0) summary["wall_seconds"] = seconds;
  out += summary.dump() + "\n";
  return out;
}

}  // namespace qstruct
