#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eigenscat/errors.hpp"
#include "eigenscat/io.hpp"

using namespace eigenscat;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eigenscat_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

forward::FarFieldDataset small_dataset() {
  const media::MediumScene disk(media::Disk{{0, 0}, 1.0, 16.0});
  const forward::DirectionSet d(8);
  auto data = forward::synthesize(disk, {1.0, 1.25, 1.5}, d, d, 0.02, 4);
  data.config_hash = "0123456789abcdef";
  return data;
}

}  // namespace

TEST(Io, CsvFieldQuoting) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(io::csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Io, CsvRoundTrip) {
  const fs::path dir = fresh_dir("csv");
  io::CsvWriter w(dir / "t.csv", "abc", {"name", "note"});
  w.row({"x", "has, comma"});
  w.row({"y", "quote \" and\r\nbreak"});
  w.close();
  const std::string raw = slurp(dir / "t.csv");
  EXPECT_EQ(raw.rfind("# config_hash=abc\r\nname,note\r\n", 0), 0u);
  const auto t = io::read_csv(dir / "t.csv");
  EXPECT_EQ(t.config_hash, "abc");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "has, comma");
  EXPECT_EQ(t.rows[1][1], "quote \" and\r\nbreak");
  EXPECT_EQ(t.column("note"), 1u);
  EXPECT_THROW(t.column("missing"), InputError);
  EXPECT_THROW(io::read_csv(dir / "absent.csv"), InputError);
}

TEST(Io, DatasetRoundTripIsExact) {
  const fs::path dir = fresh_dir("dataset");
  const auto data = small_dataset();
  io::write_dataset(dir, data);
  const auto back = io::read_dataset(dir);
  EXPECT_EQ(back.config_hash, data.config_hash);
  EXPECT_EQ(back.wavenumbers, data.wavenumbers);
  EXPECT_EQ(back.obs, data.obs);
  EXPECT_EQ(back.noise_level, data.noise_level);
  EXPECT_EQ(back.seed, data.seed);
  EXPECT_EQ(back.scene, data.scene);
  for (std::size_t i = 0; i < data.size(); ++i) {
    ASSERT_TRUE(back.matrices[i].has_value());
    EXPECT_EQ(*back.matrices[i], *data.matrices[i]);
  }
  const std::string manifest = slurp(dir / "manifest.json");
  EXPECT_NE(manifest.find("\"config_hash\""), std::string::npos);
  const std::string k0 = slurp(dir / "k_000.csv");
  EXPECT_EQ(k0.rfind("# config_hash=0123456789abcdef\r\ni,j,re,im\r\n", 0), 0u);
}

TEST(Io, DatasetMissingFileAndMismatch) {
  const fs::path dir = fresh_dir("dataset_missing");
  io::write_dataset(dir, small_dataset());
  fs::remove(dir / "k_001.csv");
  const auto back = io::read_dataset(dir);
  EXPECT_TRUE(back.matrices[0].has_value());
  EXPECT_FALSE(back.matrices[1].has_value());
  EXPECT_FALSE(back.status[1].empty());

  auto other = small_dataset();
  other.config_hash = "ffffffffffffffff";
  const fs::path odir = fresh_dir("dataset_other");
  io::write_dataset(odir, other);
  fs::copy_file(odir / "k_001.csv", dir / "k_001.csv");
  EXPECT_THROW(io::read_dataset(dir), InputError);
}

TEST(Io, ScanRoundTrip) {
  const fs::path dir = fresh_dir("scan");
  lsm::ScanResult s;
  s.wavenumbers = {1.0, 1.1, 1.2};
  s.indicator = {0.5, 3.25, 0.125};
  s.peaks = {{1, 1.1, 0.9}};
  io::write_scan(dir, s, "h1");
  std::string hash;
  const auto back = io::read_scan(dir, &hash);
  EXPECT_EQ(hash, "h1");
  EXPECT_EQ(back.wavenumbers, s.wavenumbers);
  EXPECT_EQ(back.indicator, s.indicator);
  ASSERT_EQ(back.peaks.size(), 1u);
  EXPECT_EQ(back.peaks[0].index, 1u);
  EXPECT_EQ(back.peaks[0].k, 1.1);
}

TEST(Io, ModesRoundTrip) {
  const fs::path dir = fresh_dir("modes");
  const forward::DirectionSet d(16);
  CVector g(16);
  for (int j = 0; j < 16; ++j) g(j) = cplx(std::sin(j + 0.3), std::cos(2.0 * j)) / 3.0;
  std::vector<modes::RecoveredMode> list{{1.25, herglotz::HerglotzKernel(1.25, d, g), 0.01, 1.0, 2e-5, "note, with comma"}};
  io::write_modes(dir, list, "h2");
  std::string hash;
  const auto back = io::read_modes(dir, &hash);
  EXPECT_EQ(hash, "h2");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].k, 1.25);
  EXPECT_EQ(back[0].kernel.samples(), g);
  EXPECT_EQ(back[0].kernel.directions(), d);
  EXPECT_EQ(back[0].residual, 0.01);
  EXPECT_EQ(back[0].warning, "note, with comma");
}

TEST(Io, ImageFiles) {
  const fs::path dir = fresh_dir("image");
  imaging::ImagingGrid grid{{{{-1, -1}, {1, 1}}, 16}, std::vector<double>(256, 0.0)};
  grid.values[5] = 2.0;
  io::write_image(dir, grid, "h3");
  const auto t = io::read_csv(dir / "image.csv");
  EXPECT_EQ(t.config_hash, "h3");
  EXPECT_EQ(t.rows.size(), 256u);
  EXPECT_EQ(slurp(dir / "image.pgm"), io::encode_pgm(grid, "h3"));
}
