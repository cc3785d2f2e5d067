#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <erdlab/commands.hpp>

namespace {

using CommandFn = std::function<void(const erdlab::ExperimentConfig&, erdlab::RunRecorder&)>;

const std::map<std::string, CommandFn> kCommands = {
    {"train", erdlab::cmd_train}, {"bayes", erdlab::cmd_bayes},     {"phase", erdlab::cmd_phase},
    {"ntk", erdlab::cmd_ntk},     {"pca", erdlab::cmd_pca},         {"compare", erdlab::cmd_compare},
    {"all", erdlab::cmd_all}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recoverability-weighted diffusion training laboratory"};
  app.set_version_flag("--version", erdlab::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;
  bool plot = false;
  bool oracle_only = false;

  const std::map<std::string, std::string> descriptions = {
      {"train", "train the global and piecewise models, write checkpoints and loss curves"},
      {"bayes", "bayes floors for all targets, plus model excess when a checkpoint exists"},
      {"phase", "per-sample signal/noise decomposition across diffusion time"},
      {"ntk", "fixed-noise tangent-kernel spectra and joint heatmaps"},
      {"pca", "hidden-feature pca projections across diffusion time"},
      {"compare", "train one model per weight rule and compare excess"},
      {"all", "run every stage and write the full report tree"}};
  for (const auto& [name, description] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--out", out_override, "override out_dir from the config");
    sub->add_option("--seed", seed_override, "override seed from the config");
    sub->add_flag("--plot", plot, "emit one SVG per CSV family");
    sub->add_flag("--oracle-only", oracle_only, "bayes: floors only, no checkpoint needed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    erdlab::ExperimentConfig config = erdlab::load_config(config_path);
    if (sub->count("--out") > 0) config.out_dir = out_override;
    if (sub->count("--seed") > 0) config.seed = seed_override;
    if (plot) config.plot = true;
    if (oracle_only) config.oracle_only = true;
    erdlab::validate(config);

    std::filesystem::create_directories(config.out_dir);
    erdlab::RunRecorder recorder(config.out_dir);
    try {
      erdlab::timed_step(recorder, name, [&] { kCommands.at(name)(config, recorder); });
      recorder.write_manifest(config, name, "complete");
    } catch (const std::exception& e) {
      try {
        recorder.write_manifest(config, name, "failed", e.what());
      } catch (...) {
        // The partial manifest is best effort; report the original failure.
      }
      throw;
    }
    return 0;
  } catch (const erdlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
