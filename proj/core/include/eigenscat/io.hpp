#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eigenscat/forward.hpp"
#include "eigenscat/imaging.hpp"
#include "eigenscat/lsm.hpp"
#include "eigenscat/modes.hpp"
#include "eigenscat/oracle.hpp"

namespace eigenscat::io {

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

/// CSV file with a leading "# config_hash=<hash>" line and CRLF row endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& config_hash,
            const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::filesystem::path path_;
  std::string buffer_;
};

struct CsvTable {
  std::string config_hash;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws InputError when the column is absent.
  std::size_t column(const std::string& name) const;
};

/// Throws InputError on a missing file or malformed content.
CsvTable read_csv(const std::filesystem::path& path);

/// manifest.json plus k_<index>.csv per available wavenumber.
void write_dataset(const std::filesystem::path& dir, const forward::FarFieldDataset& data);
/// Missing per-k files leave the matrix empty and a status note.
forward::FarFieldDataset read_dataset(const std::filesystem::path& dir);

/// scan.csv and peaks.csv.
void write_scan(const std::filesystem::path& dir, const lsm::ScanResult& scan, const std::string& config_hash);
lsm::ScanResult read_scan(const std::filesystem::path& dir, std::string* config_hash = nullptr);

/// modes.csv metadata plus mode_<index>.csv kernel samples.
void write_modes(const std::filesystem::path& dir, const std::vector<modes::RecoveredMode>& modes,
                 const std::string& config_hash);
std::vector<modes::RecoveredMode> read_modes(const std::filesystem::path& dir, std::string* config_hash = nullptr);

/// image.csv (x, y, value) and image.pgm.
void write_image(const std::filesystem::path& dir, const imaging::ImagingGrid& grid, const std::string& config_hash);
/// Binary P5, min-max normalised to 0..255, top row is the largest y.
std::string encode_pgm(const imaging::ImagingGrid& grid, const std::string& config_hash);

void write_oracle(const std::filesystem::path& path, const oracle::EigenvalueList& list,
                  const std::string& config_hash);

}  // namespace eigenscat::io
