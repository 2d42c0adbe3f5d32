#include "pipeline.hpp"

#include <algorithm>

#include "eigenscat/errors.hpp"
#include "eigenscat/forward.hpp"
#include "eigenscat/format.hpp"
#include "eigenscat/imaging.hpp"
#include "eigenscat/io.hpp"
#include "eigenscat/lsm.hpp"
#include "eigenscat/modes.hpp"
#include "eigenscat/oracle.hpp"

namespace eigenscat::cli {
namespace {

void expect_hash(const std::string& found, const std::string& wanted, const std::string& what) {
  if (found != wanted) {
    throw HashMismatch(what + " has config hash " + (found.empty() ? "<none>" : found) + ", expected " + wanted);
  }
}

forward::FarFieldDataset load_dataset(const RunConfig& cfg, const Layout& out) {
  forward::FarFieldDataset data = io::read_dataset(out.dataset());
  expect_hash(data.config_hash, stage_hash(cfg, Stage::synthesize), "dataset");
  return data;
}

}  // namespace

void run_synthesize(const RunConfig& cfg, const Layout& out, const WarningSink& warn) {
  const forward::DirectionSet obs(cfg.observation_directions);
  const forward::DirectionSet inc(cfg.incident_directions);
  forward::SynthesisOptions opts{cfg.forward.solver, cfg.forward.ls};
  forward::FarFieldDataset data = forward::synthesize(cfg.require_scene(), cfg.sweep.wavenumbers(), obs, inc,
                                                      cfg.forward.noise, cfg.forward.seed, opts);
  data.config_hash = stage_hash(cfg, Stage::synthesize);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.matrices[i]) warn("synthesize: k=" + format_double(data.wavenumbers[i]) + " failed: " + data.status[i]);
  }
  io::write_dataset(out.dataset(), data);
}

void run_scan(const RunConfig& cfg, const Layout& out, const WarningSink& warn) {
  const forward::FarFieldDataset data = load_dataset(cfg, out);
  const lsm::ScanResult result = lsm::scan(data, cfg.lsm);
  for (const auto& w : result.warnings) warn("scan: " + w);
  io::write_scan(out.scan(), result, stage_hash(cfg, Stage::scan));
}

void run_modes(const RunConfig& cfg, const Layout& out, const WarningSink& warn) {
  const forward::FarFieldDataset data = load_dataset(cfg, out);
  std::string hash;
  const lsm::ScanResult scan = io::read_scan(out.scan(), &hash);
  expect_hash(hash, stage_hash(cfg, Stage::scan), "scan");
  std::vector<lsm::Peak> peaks = scan.peaks;
  if (cfg.modes.max_peaks > 0 && peaks.size() > static_cast<std::size_t>(cfg.modes.max_peaks)) {
    peaks.resize(static_cast<std::size_t>(cfg.modes.max_peaks));
  }
  if (peaks.empty()) warn("modes: scan found no peaks");
  std::vector<modes::RecoveredMode> recovered;
  for (const auto& p : peaks) {
    for (auto& m : modes::recover_modes(data, p.k, cfg.modes.recovery)) {
      if (!m.warning.empty()) warn("modes: k=" + format_double(m.k) + ": " + m.warning);
      recovered.push_back(std::move(m));
    }
  }
  io::write_modes(out.modes(), recovered, stage_hash(cfg, Stage::modes));
}

void run_image(const RunConfig& cfg, const Layout& out, const WarningSink&) {
  std::string hash;
  const std::vector<modes::RecoveredMode> list = io::read_modes(out.modes(), &hash);
  expect_hash(hash, stage_hash(cfg, Stage::modes), "modes");
  if (list.empty()) throw InputError("image: no recovered modes to image");
  const imaging::ImagingGrid grid = imaging::render(list, cfg.region);
  io::write_image(out.image(), grid, stage_hash(cfg, Stage::image));
}

void run_oracle(const RunConfig& cfg, const Layout& out, const WarningSink&) {
  const auto& oc = cfg.oracle;
  const oracle::EigenvalueList list =
      oc.geometry == "sphere" ? oracle::sphere_maxwell_tev(oc.radius, oc.index, oc.k_min, oc.k_max, oc.max_order)
                              : oracle::disk_tev(oc.radius, oc.index, oc.k_min, oc.k_max, oc.max_order);
  io::write_oracle(out.oracle(), list, stage_hash(cfg, Stage::oracle));
}

void run_all(const RunConfig& cfg, const Layout& out, const WarningSink& warn) {
  run_synthesize(cfg, out, warn);
  run_scan(cfg, out, warn);
  run_modes(cfg, out, warn);
  run_image(cfg, out, warn);
}

void run(const std::string& subcommand, const RunConfig& cfg, const Layout& out, const WarningSink& warn) {
  if (subcommand == "synthesize") return run_synthesize(cfg, out, warn);
  if (subcommand == "scan") return run_scan(cfg, out, warn);
  if (subcommand == "modes") return run_modes(cfg, out, warn);
  if (subcommand == "image") return run_image(cfg, out, warn);
  if (subcommand == "oracle") return run_oracle(cfg, out, warn);
  if (subcommand == "all") return run_all(cfg, out, warn);
  throw ConfigError("unknown subcommand '" + subcommand + "'");
}

std::pair<std::string, int> classify(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return {"config", 2};
  if (dynamic_cast<const HashMismatch*>(&e)) return {"hash_mismatch", 3};
  if (dynamic_cast<const InputError*>(&e)) return {"input", 3};
  if (dynamic_cast<const DomainError*>(&e)) return {"domain", 4};
  if (dynamic_cast<const SolverError*>(&e)) return {"solver", 4};
  if (dynamic_cast<const ResolutionError*>(&e)) return {"resolution", 4};
  if (dynamic_cast<const BracketError*>(&e)) return {"bracket", 4};
  if (dynamic_cast<const NumericalError*>(&e)) return {"numerical", 4};
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return {"io", 3};
  return {"internal", 1};
}

}  // namespace eigenscat::cli
