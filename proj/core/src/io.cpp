#include "eigenscat/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eigenscat/errors.hpp"
#include "eigenscat/format.hpp"

namespace eigenscat::io {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kHashPrefix = "# config_hash=";

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double parse_double(const std::string& s, const fs::path& where) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw InputError("bad number '" + s + "' in " + where.string());
  return v;
}

long long parse_int(const std::string& s, const fs::path& where) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) throw InputError("bad integer '" + s + "' in " + where.string());
  return v;
}

std::string index_name(const std::string& stem, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%03zu.csv", stem.c_str(), i);
  return buf;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(const fs::path& path, const std::string& config_hash, const std::vector<std::string>& columns)
    : path_(path) {
  buffer_ = kHashPrefix + config_hash + "\r\n";
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += csv_field(fields[i]);
  }
  buffer_ += "\r\n";
}

void CsvWriter::close() { write_file(path_, buffer_); }

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InputError("csv: missing column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable read_csv(const fs::path& path) {
  const std::string text = read_file(path);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t i = 0;
  CsvTable table;
  if (text.rfind("#", 0) == 0) {
    const std::size_t eol = text.find('\n');
    std::string line = text.substr(0, eol);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind(kHashPrefix, 0) == 0) table.config_hash = line.substr(std::string(kHashPrefix).size());
    i = (eol == std::string::npos) ? text.size() : eol + 1;
  }
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw InputError("csv: unterminated quote in " + path.string());
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw InputError("csv: no header row in " + path.string());
  table.columns = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.columns.size()) throw InputError("csv: ragged row in " + path.string());
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

void write_dataset(const fs::path& dir, const forward::FarFieldDataset& data) {
  fs::create_directories(dir);
  ordered_json manifest;
  manifest["config_hash"] = data.config_hash;
  manifest["format"] = "eigenscat-dataset";
  manifest["version"] = 1;
  manifest["scene"] = data.scene;
  manifest["observation_directions"] = data.obs.count();
  manifest["incident_directions"] = data.inc.count();
  manifest["noise_level"] = data.noise_level;
  manifest["seed"] = data.seed;
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < data.size(); ++i) {
    ordered_json e;
    e["index"] = i;
    e["k"] = data.wavenumbers[i];
    if (data.matrices[i]) {
      const std::string name = index_name("k", i);
      e["file"] = name;
      CsvWriter csv(dir / name, data.config_hash, {"i", "j", "re", "im"});
      const CMatrix& a = *data.matrices[i];
      for (Eigen::Index col = 0; col < a.cols(); ++col) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
          csv.row({std::to_string(r), std::to_string(col), format_double(a(r, col).real()),
                   format_double(a(r, col).imag())});
        }
      }
      csv.close();
    } else {
      e["file"] = nullptr;
    }
    e["status"] = data.status[i];
    entries.push_back(std::move(e));
  }
  manifest["wavenumbers"] = std::move(entries);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

forward::FarFieldDataset read_dataset(const fs::path& dir) {
  ordered_json manifest;
  try {
    manifest = ordered_json::parse(read_file(dir / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("dataset manifest: " + std::string(e.what()));
  }
  try {
    forward::FarFieldDataset data;
    data.config_hash = manifest.at("config_hash").get<std::string>();
    data.scene = manifest.at("scene").get<std::string>();
    data.obs = forward::DirectionSet(manifest.at("observation_directions").get<int>());
    data.inc = forward::DirectionSet(manifest.at("incident_directions").get<int>());
    data.noise_level = manifest.at("noise_level").get<double>();
    data.seed = manifest.at("seed").get<std::uint64_t>();
    for (const auto& e : manifest.at("wavenumbers")) {
      data.wavenumbers.push_back(e.at("k").get<double>());
      std::string status = e.value("status", std::string{});
      std::optional<CMatrix> matrix;
      if (!e.at("file").is_null()) {
        const fs::path file = dir / e.at("file").get<std::string>();
        if (!fs::exists(file)) {
          status = "missing file " + file.filename().string();
        } else {
          const CsvTable t = read_csv(file);
          if (t.config_hash != data.config_hash) throw InputError("config hash mismatch in " + file.string());
          CMatrix a = CMatrix::Constant(data.obs.count(), data.inc.count(), cplx{NAN, NAN});
          const std::size_t ci = t.column("i"), cj = t.column("j"), cr = t.column("re"), cm = t.column("im");
          for (const auto& row : t.rows) {
            const long long r = parse_int(row[ci], file);
            const long long c = parse_int(row[cj], file);
            if (r < 0 || r >= a.rows() || c < 0 || c >= a.cols()) throw InputError("index out of range in " + file.string());
            a(r, c) = {parse_double(row[cr], file), parse_double(row[cm], file)};
          }
          if (!a.allFinite()) throw InputError("incomplete matrix in " + file.string());
          matrix = std::move(a);
        }
      }
      data.matrices.push_back(std::move(matrix));
      data.status.push_back(std::move(status));
    }
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("dataset manifest: " + std::string(e.what()));
  }
}

void write_scan(const fs::path& dir, const lsm::ScanResult& scan, const std::string& config_hash) {
  CsvWriter curve(dir / "scan.csv", config_hash, {"k", "indicator"});
  for (std::size_t i = 0; i < scan.wavenumbers.size(); ++i) {
    curve.row({format_double(scan.wavenumbers[i]), format_double(scan.indicator[i])});
  }
  curve.close();
  CsvWriter peaks(dir / "peaks.csv", config_hash, {"index", "k", "prominence"});
  for (const auto& p : scan.peaks) peaks.row({std::to_string(p.index), format_double(p.k), format_double(p.prominence)});
  peaks.close();
}

lsm::ScanResult read_scan(const fs::path& dir, std::string* config_hash) {
  const CsvTable curve = read_csv(dir / "scan.csv");
  const CsvTable peaks = read_csv(dir / "peaks.csv");
  if (curve.config_hash != peaks.config_hash) throw InputError("scan: config hash differs between scan.csv and peaks.csv");
  lsm::ScanResult s;
  const std::size_t ck = curve.column("k"), ci = curve.column("indicator");
  for (const auto& r : curve.rows) {
    s.wavenumbers.push_back(parse_double(r[ck], dir / "scan.csv"));
    s.indicator.push_back(parse_double(r[ci], dir / "scan.csv"));
  }
  const std::size_t pi_ = peaks.column("index"), pk = peaks.column("k"), pp = peaks.column("prominence");
  for (const auto& r : peaks.rows) {
    s.peaks.push_back({static_cast<std::size_t>(parse_int(r[pi_], dir / "peaks.csv")),
                       parse_double(r[pk], dir / "peaks.csv"), parse_double(r[pp], dir / "peaks.csv")});
  }
  if (config_hash) *config_hash = curve.config_hash;
  return s;
}

void write_modes(const fs::path& dir, const std::vector<modes::RecoveredMode>& list, const std::string& config_hash) {
  CsvWriter meta(dir / "modes.csv", config_hash,
                 {"mode", "k", "residual", "constraint_value", "eigenvalue", "directions", "file", "warning"});
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& m = list[i];
    const std::string name = index_name("mode", i);
    meta.row({std::to_string(i), format_double(m.k), format_double(m.residual), format_double(m.constraint_value),
              format_double(m.eigenvalue), std::to_string(m.kernel.directions().count()), name, m.warning});
    CsvWriter kernel(dir / name, config_hash, {"j", "theta", "re", "im"});
    const auto& dirs = m.kernel.directions();
    for (int j = 0; j < dirs.count(); ++j) {
      const cplx g = m.kernel.samples()(j);
      kernel.row({std::to_string(j), format_double(dirs.angle(j)), format_double(g.real()), format_double(g.imag())});
    }
    kernel.close();
  }
  meta.close();
}

std::vector<modes::RecoveredMode> read_modes(const fs::path& dir, std::string* config_hash) {
  const CsvTable meta = read_csv(dir / "modes.csv");
  std::vector<modes::RecoveredMode> out;
  const std::size_t ck = meta.column("k"), cr = meta.column("residual"), cc = meta.column("constraint_value"),
                    ce = meta.column("eigenvalue"), cd = meta.column("directions"), cf = meta.column("file"),
                    cw = meta.column("warning");
  for (const auto& r : meta.rows) {
    const fs::path file = dir / r[cf];
    const CsvTable t = read_csv(file);
    if (t.config_hash != meta.config_hash) throw InputError("config hash mismatch in " + file.string());
    const forward::DirectionSet dirs(static_cast<int>(parse_int(r[cd], file)));
    CVector g(dirs.count());
    if (static_cast<int>(t.rows.size()) != dirs.count()) throw InputError("kernel length mismatch in " + file.string());
    const std::size_t cj = t.column("j"), cre = t.column("re"), cim = t.column("im");
    for (const auto& row : t.rows) {
      const long long j = parse_int(row[cj], file);
      if (j < 0 || j >= dirs.count()) throw InputError("kernel index out of range in " + file.string());
      g(j) = {parse_double(row[cre], file), parse_double(row[cim], file)};
    }
    const double k = parse_double(r[ck], dir / "modes.csv");
    out.push_back({k, herglotz::HerglotzKernel(k, dirs, g), parse_double(r[cr], file), parse_double(r[cc], file),
                   parse_double(r[ce], file), r[cw]});
  }
  if (config_hash) *config_hash = meta.config_hash;
  return out;
}

std::string encode_pgm(const imaging::ImagingGrid& grid, const std::string& config_hash) {
  const int res = grid.region.resolution;
  const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
  const double span = *hi - *lo;
  std::string out = "P5\n# config_hash=" + config_hash + "\n" + std::to_string(res) + " " + std::to_string(res) +
                    "\n255\n";
  for (int iy = res - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < res; ++ix) {
      const double t = span > 0.0 ? (grid.at(ix, iy) - *lo) / span : 0.0;
      out += static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t)));
    }
  }
  return out;
}

void write_image(const fs::path& dir, const imaging::ImagingGrid& grid, const std::string& config_hash) {
  CsvWriter csv(dir / "image.csv", config_hash, {"x", "y", "value"});
  const int res = grid.region.resolution;
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      const Point p = grid.region.point(ix, iy);
      csv.row({format_double(p.x), format_double(p.y), format_double(grid.at(ix, iy))});
    }
  }
  csv.close();
  write_file(dir / "image.pgm", encode_pgm(grid, config_hash));
}

void write_oracle(const fs::path& path, const oracle::EigenvalueList& list, const std::string& config_hash) {
  CsvWriter csv(path, config_hash, {"family", "index", "k", "bracket"});
  for (const auto& e : list) {
    csv.row({oracle::family_name(e.family), std::to_string(e.index), format_double(e.k), format_double(e.bracket)});
  }
  csv.close();
}

}  // namespace eigenscat::io
