// wickfock <command> --spec FILE [flags]
// Exit codes: 0 all checks pass, 1 a check failed, 2 input error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wickfock/commands.hpp"

namespace {

constexpr int kExitInput = 2;

struct Flags {
  std::string spec_path;
  std::string out_path;
  bool timestamps = false;
  wickfock::CommandOptions opt;
  std::size_t n = 0;
  std::size_t n_max = 0;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--spec", f.spec_path, "Spec JSON file")->required();
  sub->add_option("--tol", f.opt.tol, "Residual tolerance")->capture_default_str();
  sub->add_option("--rank-tol", f.opt.rank_tol, "Relative rank threshold")->capture_default_str();
  sub->add_option("--n", f.n, "Level or rank parameter");
  sub->add_option("--n-max", f.n_max, "Largest level");
  sub->add_option("--method", f.opt.method, "P_n method: recursive or coxeter")
      ->check(CLI::IsMember({"recursive", "coxeter"}))
      ->capture_default_str();
  sub->add_option("--out", f.out_path, "Report path (default stdout)");
  sub->add_option("--seed", f.opt.seed, "Seed for random suites")->capture_default_str();
  sub->add_flag("--timestamps", f.timestamps, "Add a generation timestamp");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wick algebra and Fock representation checks"};
  app.set_version_flag("--version", std::string(wickfock::kToolVersion));
  app.require_subcommand(1);

  Flags f;
  std::string command;
  const std::map<std::string, std::string> about = {
      {"check", "hermiticity, norm and braid relation of T"},
      {"pn", "P_n by the recursive or Coxeter method"},
      {"kernel-theorem", "ker P_{n+1} against the sum of ker(1 + T_k)"},
      {"coxeter", "group sum, parabolic factorizations and Euler-Solomon identities"},
      {"positivity", "spectrum and definiteness of P_n"},
      {"inner", "Fock inner product of two creation expressions"},
      {"full", "every check up to --n-max"},
  };
  for (const auto& name : wickfock::command_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    add_common(sub, f);
    if (name == "inner") {
      sub->add_option("--x", f.opt.x, "Creation-only word or JSON combination")->required();
      sub->add_option("--y", f.opt.y, "Creation-only word or JSON combination")->required();
    }
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  // Level-range commands also accept --n as the largest level.
  for (const auto* sub : app.get_subcommands()) {
    if (sub->count("--n")) f.opt.n = f.n;
    if (sub->count("--n-max")) f.opt.n_max = f.n_max;
    else if (sub->count("--n") && command != "pn" && command != "coxeter") f.opt.n_max = f.n;
  }

  try {
    const auto spec = wickfock::load_spec_file(f.spec_path);
    nlohmann::ordered_json provenance = {{"path", f.spec_path}};
    const auto report = wickfock::run_command(command, spec, f.opt, provenance);
    const std::string body = report.to_json(f.timestamps).dump(2) + "\n";
    if (f.out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(f.out_path);
      if (!out) throw wickfock::InputError("cannot write " + f.out_path);
      out << body;
    }
    std::cerr << report.summary();
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "wickfock: error: " << e.what() << "\n";
    return kExitInput;
  }
}
