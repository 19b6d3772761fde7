#ifndef WICKFOCK_REPORT_HPP
#define WICKFOCK_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace wickfock {

inline constexpr const char* kToolName = "wickfock";
inline constexpr const char* kToolVersion = "1.0.0";

enum class CheckStatus { pass, fail, inapplicable };
std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string note;
};

/// Pass/fail from a residual, or inapplicable when the hypotheses fail.
CheckStatus judge(double residual, double tolerance, bool applicable = true);

class Report {
 public:
  Report(std::string command, nlohmann::ordered_json provenance);

  void add(CheckRecord record) { checks_.push_back(std::move(record)); }
  const std::vector<CheckRecord>& checks() const noexcept { return checks_; }

  /// fail if any applicable check fails, pass otherwise.
  CheckStatus overall() const;
  int exit_code() const { return overall() == CheckStatus::fail ? 1 : 0; }

  nlohmann::ordered_json to_json(bool timestamps = false) const;
  /// One line per check, for standard error.
  std::string summary() const;

 private:
  std::string command_;
  nlohmann::ordered_json provenance_;
  std::vector<CheckRecord> checks_;
};

}  // namespace wickfock

#endif  // WICKFOCK_REPORT_HPP
