#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigenscat/forward.hpp"
#include "eigenscat/herglotz.hpp"
#include "eigenscat/lsm.hpp"
#include "eigenscat/media.hpp"
#include "eigenscat/modes.hpp"

namespace eigenscat::cli {

/// Config problem: unknown key, unparsable value or violated precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  double k_min = 1.0;
  double k_max = 2.0;
  int count = 41;

  std::vector<double> wavenumbers() const;
};

struct ForwardConfig {
  forward::SolverKind solver = forward::SolverKind::automatic;
  double noise = 0.0;
  std::uint64_t seed = 1;
  forward::LsOptions ls;
};

struct ModesConfig {
  modes::ModeRecoveryConfig recovery;
  /// Use at most this many scan peaks, lowest k first; 0 keeps all.
  int max_peaks = 0;
};

struct OracleConfig {
  std::string geometry = "sphere";  // sphere | disk
  double radius = 1.0;
  double index = 16.0;
  double k_min = 0.5;
  double k_max = 2.0;
  int max_order = 6;
};

struct RunConfig {
  std::optional<media::MediumScene> scene;  // absent for oracle-only configs
  SweepConfig sweep;
  int observation_directions = 64;
  int incident_directions = 64;
  ForwardConfig forward;
  lsm::TikhonovConfig lsm;
  ModesConfig modes;
  media::SamplingRegion region;
  OracleConfig oracle;
  std::filesystem::path output = "out";
  std::vector<std::string> stage_text;  // canonical text per stage, see stage_hash

  const media::MediumScene& require_scene() const;
};

enum class Stage { synthesize = 0, scan = 1, modes = 2, image = 3, oracle = 4 };

/// Parses an INI file. Throws ConfigError.
RunConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = {});
RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override = {});

/// Hex FNV-1a of the canonical settings of every stage up to and including `stage`.
std::string stage_hash(const RunConfig& cfg, Stage stage);

/// FNV-1a 64-bit.
std::uint64_t fnv1a(const std::string& text);

}  // namespace eigenscat::cli
