#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "misq/runner.hpp"

namespace {

int write_artifacts(const misq::RunOutput& out, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  for (const auto& [name, content] : out.artifacts) {
    const auto path = std::filesystem::path(outdir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << path.string() << "\n";
      return 1;
    }
    f << content;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modulated infinite-server queue simulation and large-deviations toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string outdir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool ci = std::getenv("MISQ_CI") != nullptr;
  int threads = 0;
  std::vector<std::string> overrides;

  for (const auto& name : misq::known_commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "experiment config file")->required();
    sub->add_option("--out", outdir, "output directory for CSV artifacts");
    sub->add_option("--seed", seed, "master seed; all randomness derives from it")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", threads, "worker cap (0 = hardware)");
    sub->add_flag("--ci", ci, "CI mode: a missing --seed is an error");
    sub->add_option("--set", overrides, "override a config entry, e.g. --set replicas=100");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    misq::Config cfg = misq::Config::parse_file(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value, got '" << kv << "'\n";
        return 1;
      }
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    misq::RunOptions opts;
    opts.seed = seed;
    opts.seed_set = seed_given;
    opts.ci = ci;
    opts.threads = threads;

    const misq::RunOutput out = misq::run_command(command, cfg, opts);
    if (const int rc = write_artifacts(out, outdir); rc != 0) return rc;
    std::cout << out.report;
    return out.exit_code;
  } catch (const misq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
