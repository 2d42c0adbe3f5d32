#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "config.hpp"
#include "pipeline.hpp"

namespace {

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eigenscat::cli;
  CLI::App app{"Transmission-eigenvalue inverse scattering pipeline"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;

  for (const char* name : {"synthesize", "scan", "modes", "image", "oracle", "all"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides [output] directory)");
    sub->add_option("--seed", seed, "Noise seed (overrides [forward] seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "eigenscat: error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  const WarningSink warn = [](const std::string& w) { std::cerr << "eigenscat: warning: " << one_line(w) << '\n'; };
  try {
    const RunConfig cfg = load_config(config_path, seed);
    const Layout layout{out_dir.empty() ? cfg.output : std::filesystem::path(out_dir)};
    run(subcommand, cfg, layout, warn);
  } catch (const std::exception& e) {
    const auto [category, code] = classify(e);
    std::cerr << "eigenscat: error: " << category << ": " << one_line(e.what()) << '\n';
    return code;
  }
  return 0;
}
