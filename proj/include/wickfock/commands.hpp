#ifndef WICKFOCK_COMMANDS_HPP
#define WICKFOCK_COMMANDS_HPP

// Verification suites behind the wickfock command line. Each command loads
// nothing itself; it takes a parsed spec and returns a Report.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wickfock/model.hpp"
#include "wickfock/report.hpp"

namespace wickfock {

struct CommandOptions {
  double tol = 1e-8;
  double rank_tol = 1e-8;
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_max;
  std::string method = "recursive";
  std::uint64_t seed = 42;
  std::string x;
  std::string y;
};

/// Largest operator side a command will build (d^n).
inline constexpr std::size_t kMaxOperatorSize = 4096;

const std::vector<std::string>& command_names();

/// Runs the named command. Throws InputError for unknown commands or
/// unusable parameters.
Report run_command(const std::string& name, const WickSpec& spec, const CommandOptions& opt,
                   nlohmann::ordered_json provenance = nlohmann::ordered_json::object());

Report cmd_check(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});
Report cmd_pn(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});
Report cmd_kernel_theorem(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});
Report cmd_coxeter(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});
Report cmd_positivity(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});
Report cmd_inner(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});
Report cmd_full(const WickSpec& spec, const CommandOptions& opt, nlohmann::ordered_json provenance = {});

}  // namespace wickfock

#endif  // WICKFOCK_COMMANDS_HPP
