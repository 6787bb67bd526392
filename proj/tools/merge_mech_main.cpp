#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mergemech/errors.hpp"
#include "mergemech/runner.hpp"

namespace {

int write_output(const std::string& csv, const std::string& path) {
  if (path.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  out << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merging-mechanism experiment runner"};
  app.require_subcommand(1);

  std::string config_path, output_override;
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--output", output_override, "CSV output path (overrides config)");
    sub->add_option("--seed", seed_override, "seed override")
        ->each([&](const std::string&) { has_seed_override = true; });
  };
  CLI::App* compare = app.add_subcommand("compare", "objective / revenue / upper-bound table");
  CLI::App* audit = app.add_subcommand("audit", "property audits per mechanism");
  CLI::App* ratio = app.add_subcommand("ratio", "theorem-bound checks");
  add_common(compare);
  add_common(audit);
  add_common(ratio);

  CLI11_PARSE(app, argc, argv);

  try {
    mergemech::RunConfig cfg = mergemech::parse_config(config_path);
    if (has_seed_override) cfg.seed = seed_override;
    if (!output_override.empty()) cfg.output = output_override;

    if (compare->parsed()) return write_output(mergemech::run_compare(cfg), cfg.output);
    if (audit->parsed()) {
      mergemech::AuditRun run = mergemech::run_audit(cfg);
      int rc = write_output(run.csv, cfg.output);
      if (rc != 0) return rc;
      if (run.hard_gate_failed) {
        std::cerr << "audit: hard-gate property violated\n";
        return 4;
      }
      return 0;
    }
    if (ratio->parsed()) return write_output(mergemech::run_ratio(cfg), cfg.output);
    return 1;
  } catch (const mergemech::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mergemech::GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
