#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "eigenscat/errors.hpp"
#include "eigenscat/format.hpp"

namespace eigenscat::cli {
namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scene",
       {"type", "center_x", "center_y", "radius", "index", "half_width", "vertices", "radius_inner",
        "index_inner", "index_outer", "scale", "thickness", "index_layer", "index_core"}},
      {"sweep", {"k_min", "k_max", "count"}},
      {"directions", {"observation", "incident"}},
      {"forward", {"solver", "noise", "seed", "cells", "points_per_wavelength", "richardson", "tolerance"}},
      {"lsm", {"delta", "probes", "min_prominence"}},
      {"modes", {"method", "truncation", "beta", "noise_floor", "ball_center_x", "ball_center_y", "ball_radius",
                 "max_peaks"}},
      {"imaging", {"x_min", "x_max", "y_min", "y_max", "resolution"}},
      {"oracle", {"geometry", "radius", "index", "k_min", "k_max", "max_order"}},
      {"output", {"directory"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  bool has_section(const std::string& s) const { return tree_.get_child_optional(s).has_value(); }
  bool has(const std::string& s, const std::string& k) const { return raw(s, k).has_value(); }

  std::optional<std::string> raw(const std::string& s, const std::string& k) const {
    auto sec = tree_.get_child_optional(s);
    if (!sec) return std::nullopt;
    auto v = sec->get_child_optional(pt::ptree::path_type(k, '\0'));
    if (!v) return std::nullopt;
    return v->data();
  }

  std::string str(const std::string& s, const std::string& k, const std::string& def) const {
    return raw(s, k).value_or(def);
  }

  double num(const std::string& s, const std::string& k, double def) const {
    auto v = raw(s, k);
    if (!v) return def;
    return parse_number(*v, s + "." + k);
  }

  long long integer(const std::string& s, const std::string& k, long long def) const {
    auto v = raw(s, k);
    if (!v) return def;
    long long out = 0;
    const char* b = v->data();
    const char* e = b + v->size();
    auto r = std::from_chars(b, e, out);
    if (r.ec != std::errc{} || r.ptr != e) throw ConfigError(s + "." + k + ": expected an integer, got '" + *v + "'");
    return out;
  }

  bool flag(const std::string& s, const std::string& k, bool def) const {
    auto v = raw(s, k);
    if (!v) return def;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw ConfigError(s + "." + k + ": expected a boolean, got '" + *v + "'");
  }

  static double parse_number(const std::string& text, const std::string& what) {
    double out = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto r = std::from_chars(b, e, out);
    if (r.ec != std::errc{} || r.ptr != e || !std::isfinite(out)) {
      throw ConfigError(what + ": expected a finite number, got '" + text + "'");
    }
    return out;
  }

 private:
  const pt::ptree& tree_;
};

// "x0 y0; x1 y1; ..."
std::vector<Point> parse_points(const std::string& text, const std::string& what) {
  std::vector<Point> pts;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ';')) {
    std::stringstream xy(item);
    std::string a, b, extra;
    if (!(xy >> a)) continue;
    if (!(xy >> b) || (xy >> extra)) throw ConfigError(what + ": expected 'x y' pairs separated by ';'");
    pts.push_back({Reader::parse_number(a, what), Reader::parse_number(b, what)});
  }
  if (pts.empty()) throw ConfigError(what + ": no points given");
  return pts;
}

std::string points_text(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ';';
    out += format_double(pts[i].x) + ' ' + format_double(pts[i].y);
  }
  return out;
}

media::Shape parse_shape(const Reader& r) {
  const std::string type = r.str("scene", "type", "");
  const Point c{r.num("scene", "center_x", 0.0), r.num("scene", "center_y", 0.0)};
  if (type == "disk") return media::Disk{c, r.num("scene", "radius", 1.0), r.num("scene", "index", 16.0)};
  if (type == "square") return media::Square{c, r.num("scene", "half_width", 1.0), r.num("scene", "index", 0.25)};
  if (type == "polygon") {
    auto v = r.raw("scene", "vertices");
    if (!v) throw ConfigError("scene.vertices: required for polygon scenes");
    return media::Polygon{parse_points(*v, "scene.vertices"), r.num("scene", "index", 0.25)};
  }
  if (type == "layered_disk") {
    return media::LayeredDisk{c, r.num("scene", "radius", 1.0), r.num("scene", "radius_inner", 0.5),
                              r.num("scene", "index_outer", 16.0), r.num("scene", "index_inner", 4.0)};
  }
  if (type == "layered_kite") {
    return media::LayeredKite{c, r.num("scene", "scale", 1.0), r.num("scene", "thickness", 0.1),
                              r.num("scene", "index_layer", 16.0), r.num("scene", "index_core", 4.0)};
  }
  throw ConfigError("scene.type: expected disk, square, polygon, layered_disk or layered_kite, got '" + type + "'");
}

forward::SolverKind parse_solver(const std::string& s) {
  if (s == "auto") return forward::SolverKind::automatic;
  if (s == "series") return forward::SolverKind::series;
  if (s == "ls") return forward::SolverKind::lippmann_schwinger;
  throw ConfigError("forward.solver: expected auto, series or ls, got '" + s + "'");
}

std::string solver_name(forward::SolverKind s) {
  switch (s) {
    case forward::SolverKind::automatic: return "auto";
    case forward::SolverKind::series: return "series";
    case forward::SolverKind::lippmann_schwinger: return "ls";
  }
  return "auto";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::string line(const std::string& key, const std::string& value) { return key + '=' + value + '\n'; }
std::string line(const std::string& key, double value) { return line(key, format_double(value)); }
std::string line_int(const std::string& key, long long value) { return line(key, std::to_string(value)); }

}  // namespace

std::vector<double> SweepConfig::wavenumbers() const {
  std::vector<double> ks(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ks[i] = k_min + (k_max - k_min) * i / (count - 1);
  ks.back() = k_max;
  return ks;
}

const media::MediumScene& RunConfig::require_scene() const {
  if (!scene) throw ConfigError("scene: section required for this subcommand");
  return *scene;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string stage_hash(const RunConfig& cfg, Stage stage) {
  std::string text;
  if (stage == Stage::oracle) {
    text = cfg.stage_text[static_cast<std::size_t>(Stage::oracle)];
  } else {
    for (int s = 0; s <= static_cast<int>(stage); ++s) text += cfg.stage_text[static_cast<std::size_t>(s)];
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), seed_override);
}

RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("malformed INI at line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside a section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown key " + section + "." + key);
    }
  }

  const Reader r(tree);
  RunConfig cfg;
  std::string scene_text;
  if (r.has_section("scene")) {
    try {
      cfg.scene.emplace(parse_shape(r));
    } catch (const InputError& e) {
      throw ConfigError(std::string("scene: ") + e.what());
    }
    scene_text = cfg.scene->describe();
  }

  cfg.sweep.k_min = r.num("sweep", "k_min", cfg.sweep.k_min);
  cfg.sweep.k_max = r.num("sweep", "k_max", cfg.sweep.k_max);
  cfg.sweep.count = static_cast<int>(r.integer("sweep", "count", cfg.sweep.count));
  require(cfg.sweep.k_min > 0.0, "sweep.k_min: must be positive");
  require(cfg.sweep.k_min < cfg.sweep.k_max, "sweep: k_min must be less than k_max");
  require(cfg.sweep.count >= 2, "sweep.count: must be at least 2");

  cfg.observation_directions = static_cast<int>(r.integer("directions", "observation", 64));
  cfg.incident_directions = static_cast<int>(r.integer("directions", "incident", 64));
  require(cfg.observation_directions >= 8, "directions.observation: must be at least 8");
  require(cfg.incident_directions >= 8, "directions.incident: must be at least 8");

  auto& fw = cfg.forward;
  fw.solver = parse_solver(r.str("forward", "solver", "auto"));
  fw.noise = r.num("forward", "noise", 0.0);
  require(fw.noise >= 0.0 && fw.noise < 1.0, "forward.noise: must lie in [0, 1)");
  const long long seed = r.integer("forward", "seed", 1);
  require(seed >= 0, "forward.seed: must be non-negative");
  fw.seed = seed_override.value_or(static_cast<std::uint64_t>(seed));
  fw.ls.cells = static_cast<int>(r.integer("forward", "cells", 0));
  fw.ls.points_per_wavelength = r.num("forward", "points_per_wavelength", fw.ls.points_per_wavelength);
  fw.ls.richardson = r.flag("forward", "richardson", false);
  fw.ls.tolerance = r.num("forward", "tolerance", fw.ls.tolerance);
  require(fw.ls.cells == 0 || fw.ls.cells >= 8, "forward.cells: must be 0 (automatic) or at least 8");
  require(fw.ls.points_per_wavelength >= 10.0, "forward.points_per_wavelength: must be at least 10");
  require(fw.ls.tolerance > 0.0 && fw.ls.tolerance <= 1e-8, "forward.tolerance: must lie in (0, 1e-8]");
  if (cfg.scene && fw.solver == forward::SolverKind::series) {
    require(cfg.scene->as_disk().has_value(), "forward.solver: series requires a homogeneous disk scene");
  }

  cfg.lsm.delta = r.num("lsm", "delta", 1e-5);
  require(cfg.lsm.delta > 0.0, "lsm.delta: must be positive");
  cfg.lsm.min_prominence = r.num("lsm", "min_prominence", 0.1);
  require(cfg.lsm.min_prominence > 0.0 && cfg.lsm.min_prominence <= 1.0, "lsm.min_prominence: must lie in (0, 1]");
  if (auto p = r.raw("lsm", "probes")) {
    cfg.lsm.probes = parse_points(*p, "lsm.probes");
  } else if (cfg.scene) {
    cfg.lsm.probes = {cfg.scene->centroid()};
  }
  if (cfg.scene) {
    for (const Point& z : cfg.lsm.probes) {
      require(cfg.scene->contains(z), "lsm.probes: point (" + format_double(z.x) + ", " + format_double(z.y) +
                                          ") lies outside the scatterer");
    }
  }

  auto& mr = cfg.modes.recovery;
  const std::string method = r.str("modes", "method", "ftls");
  if (method == "ftls") {
    mr.method = modes::Method::ftls;
  } else if (method == "gtls") {
    mr.method = modes::Method::gtls;
  } else {
    throw ConfigError("modes.method: expected ftls or gtls, got '" + method + "'");
  }
  mr.truncation = static_cast<int>(r.integer("modes", "truncation", 6));
  mr.beta = r.num("modes", "beta", 1e-4);
  mr.noise_floor = r.num("modes", "noise_floor", 1e-2);
  const Point centroid = cfg.scene ? cfg.scene->centroid() : Point{};
  const double bound = cfg.scene ? cfg.scene->bounding_radius() : 1.0;
  mr.ball.center = {r.num("modes", "ball_center_x", centroid.x), r.num("modes", "ball_center_y", centroid.y)};
  mr.ball.radius = r.num("modes", "ball_radius", 2.0 * bound);
  cfg.modes.max_peaks = static_cast<int>(r.integer("modes", "max_peaks", 0));
  require(cfg.modes.max_peaks >= 0, "modes.max_peaks: must be non-negative");
  try {
    mr.validate();
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  if (mr.method == modes::Method::ftls) {
    require(2 * mr.truncation + 1 <= cfg.incident_directions,
            "modes.truncation: 2 N_t + 1 must not exceed directions.incident");
  }
  if (cfg.scene) {
    require(norm(cfg.scene->centroid() - mr.ball.center) + cfg.scene->bounding_radius() <= mr.ball.radius,
            "modes.ball_radius: norm ball must contain the scatterer");
  }

  const double pad = 0.5 * bound;
  const media::Box box = cfg.scene ? cfg.scene->bounding_box() : media::Box{{-1, -1}, {1, 1}};
  cfg.region.box.lo = {r.num("imaging", "x_min", box.lo.x - pad), r.num("imaging", "y_min", box.lo.y - pad)};
  cfg.region.box.hi = {r.num("imaging", "x_max", box.hi.x + pad), r.num("imaging", "y_max", box.hi.y + pad)};
  cfg.region.resolution = static_cast<int>(r.integer("imaging", "resolution", 128));
  require(cfg.region.box.lo.x < cfg.region.box.hi.x && cfg.region.box.lo.y < cfg.region.box.hi.y,
          "imaging: region must have positive extent");
  if (cfg.scene) {
    try {
      cfg.region.validate(*cfg.scene);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  }

  auto& oc = cfg.oracle;
  oc.geometry = r.str("oracle", "geometry", oc.geometry);
  require(oc.geometry == "sphere" || oc.geometry == "disk", "oracle.geometry: expected sphere or disk");
  oc.radius = r.num("oracle", "radius", oc.radius);
  oc.index = r.num("oracle", "index", oc.index);
  oc.k_min = r.num("oracle", "k_min", oc.k_min);
  oc.k_max = r.num("oracle", "k_max", oc.k_max);
  oc.max_order = static_cast<int>(r.integer("oracle", "max_order", oc.max_order));
  require(oc.radius > 0.0, "oracle.radius: must be positive");
  require(oc.index > 0.0 && oc.index != 1.0, "oracle.index: must be positive and different from 1");
  require(oc.k_min >= 0.0 && oc.k_min < oc.k_max, "oracle: need 0 <= k_min < k_max");
  require(oc.max_order >= (oc.geometry == "sphere" ? 1 : 0) && oc.max_order <= 40, "oracle.max_order: out of range");

  cfg.output = r.str("output", "directory", "out");

  std::string synth = "[synthesize]\n" + line("scene", scene_text);
  synth += line("k_min", cfg.sweep.k_min) + line("k_max", cfg.sweep.k_max) + line_int("count", cfg.sweep.count);
  synth += line_int("observation", cfg.observation_directions) + line_int("incident", cfg.incident_directions);
  synth += line("solver", solver_name(fw.solver)) + line("noise", fw.noise) + line("seed", std::to_string(fw.seed));
  synth += line_int("cells", fw.ls.cells) + line("ppw", fw.ls.points_per_wavelength) +
           line_int("richardson", fw.ls.richardson) + line("tolerance", fw.ls.tolerance);
  std::string scan = "[scan]\n" + line("delta", cfg.lsm.delta) + line("probes", points_text(cfg.lsm.probes)) +
                     line("min_prominence", cfg.lsm.min_prominence);
  std::string modes = "[modes]\n" + line("method", method) + line_int("truncation", mr.truncation) +
                      line("beta", mr.beta) + line("noise_floor", mr.noise_floor) +
                      line("ball", points_text({mr.ball.center}) + ' ' + format_double(mr.ball.radius)) +
                      line_int("max_peaks", cfg.modes.max_peaks);
  std::string image = "[image]\n" + line("box", points_text({cfg.region.box.lo, cfg.region.box.hi})) +
                      line_int("resolution", cfg.region.resolution);
  std::string oracle = "[oracle]\n" + line("geometry", oc.geometry) + line("radius", oc.radius) +
                       line("index", oc.index) + line("k_min", oc.k_min) + line("k_max", oc.k_max) +
                       line_int("max_order", oc.max_order);
  cfg.stage_text = {synth, scan, modes, image, oracle};
  return cfg;
}

}  // namespace eigenscat::cli
