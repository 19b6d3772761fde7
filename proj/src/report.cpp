#include "wickfock/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace wickfock {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inapplicable: return "inapplicable";
  }
  return "unknown";
}

CheckStatus judge(double residual, double tolerance, bool applicable) {
  if (!applicable) return CheckStatus::inapplicable;
  return residual <= tolerance ? CheckStatus::pass : CheckStatus::fail;
}

Report::Report(std::string command, nlohmann::ordered_json provenance)
    : command_(std::move(command)), provenance_(std::move(provenance)) {}

CheckStatus Report::overall() const {
  for (const auto& c : checks_)
    if (c.status == CheckStatus::fail) return CheckStatus::fail;
  return CheckStatus::pass;
}

nlohmann::ordered_json Report::to_json(bool timestamps) const {
  nlohmann::ordered_json out;
  out["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  out["command"] = command_;
  out["spec"] = provenance_;
  if (timestamps) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream os;
    os << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    out["generated_at"] = os.str();
  }
  auto list = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json rec;
    rec["name"] = c.name;
    rec["params"] = c.params;
    rec["values"] = c.values;
    rec["tolerance"] = c.tolerance;
    rec["status"] = to_string(c.status);
    if (!c.note.empty()) rec["note"] = c.note;
    list.push_back(std::move(rec));
  }
  out["checks"] = std::move(list);
  out["overall"] = to_string(overall());
  return out;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << "[" << to_string(c.status) << "] " << c.name;
    if (!c.params.empty()) os << " " << c.params.dump();
    if (!c.note.empty()) os << " (" << c.note << ")";
    os << "\n";
  }
  os << command_ << ": " << to_string(overall()) << "\n";
  return os.str();
}

}  // namespace wickfock
