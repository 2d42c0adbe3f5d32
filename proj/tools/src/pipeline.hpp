#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "config.hpp"

namespace eigenscat::cli {

/// Artifact of another config (or stage) handed to a downstream stage.
class HashMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningSink = std::function<void(const std::string&)>;

struct Layout {
  std::filesystem::path root;

  std::filesystem::path dataset() const { return root / "dataset"; }
  std::filesystem::path scan() const { return root / "scan"; }
  std::filesystem::path modes() const { return root / "modes"; }
  std::filesystem::path image() const { return root / "image"; }
  std::filesystem::path oracle() const { return root / "oracle.csv"; }
};

void run_synthesize(const RunConfig& cfg, const Layout& out, const WarningSink& warn);
void run_scan(const RunConfig& cfg, const Layout& out, const WarningSink& warn);
void run_modes(const RunConfig& cfg, const Layout& out, const WarningSink& warn);
void run_image(const RunConfig& cfg, const Layout& out, const WarningSink& warn);
void run_oracle(const RunConfig& cfg, const Layout& out, const WarningSink& warn);
/// synthesize, scan, modes, image.
void run_all(const RunConfig& cfg, const Layout& out, const WarningSink& warn);

/// Dispatch by subcommand name; throws ConfigError for an unknown name.
void run(const std::string& subcommand, const RunConfig& cfg, const Layout& out, const WarningSink& warn);

/// Maps an exception to (category, exit code).
std::pair<std::string, int> classify(const std::exception& e);

}  // namespace eigenscat::cli
