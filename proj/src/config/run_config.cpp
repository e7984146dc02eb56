#include "oamion/config/run_config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace oamion::config {
namespace {

struct Violation {
  std::string key;  // "section.key"
  std::string message;
};

std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string fmt(const Vec3& v) { return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z); }
std::string fmt(Complex c) { return fmt(c.real()) + " " + fmt(c.imag()); }
std::string fmt(bool b) { return b ? "true" : "false"; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

int to_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool to_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> to_doubles(std::string_view s, std::size_t count) {
  const auto words = split_words(s);
  if (words.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " numbers, got '" + std::string(s) + "'");
  }
  std::vector<double> out;
  for (auto w : words) out.push_back(to_double(w));
  return out;
}

Vec3 to_vec3(std::string_view s) {
  const auto v = to_doubles(s, 3);
  return {v[0], v[1], v[2]};
}

Complex to_complex(std::string_view s) {
  const auto v = to_doubles(s, 2);
  return {v[0], v[1]};
}

std::array<int, 3> to_counts(std::string_view s) {
  const auto words = split_words(s);
  if (words.size() == 1) {
    const int n = to_int(words[0]);
    return {n, n, n};
  }
  if (words.size() != 3) throw std::invalid_argument("expected one or three point counts, got '" + std::string(s) + "'");
  return {to_int(words[0]), to_int(words[1]), to_int(words[2])};
}

std::optional<Violation> first_violation(const RunConfig& cfg) {
  auto check = [](const char* key, const std::function<void()>& f) -> std::optional<Violation> {
    try {
      f();
    } catch (const std::invalid_argument& e) {
      return Violation{key, e.what()};
    }
    return std::nullopt;
  };
  if (cfg.version != kConfigVersion) {
    return Violation{"version", "unsupported config version " + std::to_string(cfg.version) + " (expected " +
                                    std::to_string(kConfigVersion) + ")"};
  }
  if (auto v = check("grid.n", [&] { cfg.grid.validate(); })) return v;
  if (auto v = check("beam.omega", [&] { cfg.beam.validate(); })) return v;
  if (auto v = check("propagator.absorber_width", [&] { cfg.prop.validate(cfg.grid); })) return v;
  if (cfg.tail < 0.0) return Violation{"run.tail", "tail must be non-negative"};
  if (cfg.record_every < 1) return Violation{"run.record_every", "record_every must be at least 1"};
  const AnalysisConfig& a = cfg.analysis;
  if (a.l_max < 0) return Violation{"analysis.l_max", "l_max must be non-negative"};
  if (a.n_radial < 1) return Violation{"analysis.n_radial", "n_radial must be positive"};
  if (a.closure_order < 0) return Violation{"analysis.closure_order", "closure_order must be non-negative"};
  if (!(a.histogram_width > 0.0)) return Violation{"analysis.histogram_width", "histogram_width must be positive"};
  if (!(a.confine_radius > 0.0)) return Violation{"analysis.confine_radius", "confine_radius must be positive"};
  const double margin = cfg.prop.absorber.type == tdse::AbsorberType::None ? 0.0 : cfg.prop.absorber.width;
  const double centers[3] = {cfg.grid.center.x, cfg.grid.center.y, cfg.grid.center.z};
  for (int axis = 0; axis < 3; ++axis) {
    const double room = cfg.grid.half_extent(axis) - margin - std::abs(centers[axis]) - 2.0 * cfg.grid.h;
    if (!(a.r_max > 0.0) || a.r_max > room) {
      return Violation{"analysis.r_max", "r_max = " + fmt(a.r_max) + " must lie in (0, " + fmt(room) +
                                             "], inside the absorber-free region"};
    }
  }
  if (cfg.output.checkpoint_every < 0) return Violation{"output.checkpoint_every", "checkpoint_every must be >= 0"};
  if (cfg.output.directory.empty()) return Violation{"output.directory", "output directory must not be empty"};
  return std::nullopt;
}

struct Entry {
  std::string value;
  int line = 0;
};

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"name", [](RunConfig& c, std::string_view v) { c.name = std::string(v); }},
      {"version", [](RunConfig& c, std::string_view v) { c.version = to_int(v); }},

      {"beam.amplitude", [](RunConfig& c, std::string_view v) { c.beam.amplitude = to_double(v); }},
      {"beam.polarization",
       [](RunConfig& c, std::string_view v) { c.beam.pol = angular::Polarization::parse(v); }},
      {"beam.polarization_alpha", [](RunConfig& c, std::string_view v) { c.beam.pol.alpha = to_complex(v); }},
      {"beam.polarization_beta", [](RunConfig& c, std::string_view v) { c.beam.pol.beta = to_complex(v); }},
      {"beam.omega", [](RunConfig& c, std::string_view v) { c.beam.omega = to_double(v); }},
      {"beam.n_cyc", [](RunConfig& c, std::string_view v) { c.beam.n_cyc = to_int(v); }},
      {"beam.ell", [](RunConfig& c, std::string_view v) { c.beam.ell = to_int(v); }},
      {"beam.p", [](RunConfig& c, std::string_view v) { c.beam.p = to_int(v); }},
      {"beam.waist", [](RunConfig& c, std::string_view v) { c.beam.waist = to_double(v); }},
      {"beam.chi", [](RunConfig& c, std::string_view v) { c.beam.chi = to_double(v); }},
      {"beam.origin_offset", [](RunConfig& c, std::string_view v) { c.beam.origin_offset = to_double(v); }},
      {"beam.atom_displacement", [](RunConfig& c, std::string_view v) { c.beam.atom_displacement = to_vec3(v); }},
      {"beam.normalization",
       [](RunConfig& c, std::string_view v) { c.beam.normalization = beam::parse_lg_normalization(std::string(v)); }},
      {"beam.model", [](RunConfig& c, std::string_view v) { c.beam.model = beam::parse_beam_model(std::string(v)); }},

      {"grid.n", [](RunConfig& c, std::string_view v) { c.grid.n = to_counts(v); }},
      {"grid.h", [](RunConfig& c, std::string_view v) { c.grid.h = to_double(v); }},
      {"grid.center", [](RunConfig& c, std::string_view v) { c.grid.center = to_vec3(v); }},

      {"propagator.dt", [](RunConfig& c, std::string_view v) { c.prop.dt = to_double(v); }},
      {"propagator.gauge",
       [](RunConfig&, std::string_view v) {
         if (v != "velocity") throw std::invalid_argument("only the velocity gauge is available");
       }},
      {"propagator.soft_core", [](RunConfig& c, std::string_view v) { c.prop.soft_core = to_double(v); }},
      {"propagator.nuclear_charge", [](RunConfig& c, std::string_view v) { c.prop.nuclear_charge = to_double(v); }},
      {"propagator.charge", [](RunConfig& c, std::string_view v) { c.prop.charge = to_double(v); }},
      {"propagator.absorber",
       [](RunConfig& c, std::string_view v) { c.prop.absorber.type = tdse::parse_absorber_type(std::string(v)); }},
      {"propagator.absorber_width", [](RunConfig& c, std::string_view v) { c.prop.absorber.width = to_double(v); }},
      {"propagator.absorber_strength",
       [](RunConfig& c, std::string_view v) { c.prop.absorber.strength = to_double(v); }},

      {"run.tail", [](RunConfig& c, std::string_view v) { c.tail = to_double(v); }},
      {"run.record_every", [](RunConfig& c, std::string_view v) { c.record_every = to_int(v); }},

      {"analysis.l_max", [](RunConfig& c, std::string_view v) { c.analysis.l_max = to_int(v); }},
      {"analysis.n_radial", [](RunConfig& c, std::string_view v) { c.analysis.n_radial = to_int(v); }},
      {"analysis.r_max", [](RunConfig& c, std::string_view v) { c.analysis.r_max = to_double(v); }},
      {"analysis.closure_order", [](RunConfig& c, std::string_view v) { c.analysis.closure_order = to_int(v); }},
      {"analysis.confine_radius", [](RunConfig& c, std::string_view v) { c.analysis.confine_radius = to_double(v); }},
      {"analysis.histogram_width",
       [](RunConfig& c, std::string_view v) { c.analysis.histogram_width = to_double(v); }},

      {"output.directory", [](RunConfig& c, std::string_view v) { c.output.directory = std::string(v); }},
      {"output.checkpoint_every", [](RunConfig& c, std::string_view v) { c.output.checkpoint_every = to_int(v); }},
      {"output.trajectory", [](RunConfig& c, std::string_view v) { c.output.trajectory = to_bool(v); }},
      {"output.spectrum", [](RunConfig& c, std::string_view v) { c.output.spectrum = to_bool(v); }},
      {"output.projection", [](RunConfig& c, std::string_view v) { c.output.projection = to_bool(v); }},
      {"output.projection_series",
       [](RunConfig& c, std::string_view v) { c.output.projection_series = to_bool(v); }},
      {"output.final_state", [](RunConfig& c, std::string_view v) { c.output.final_state = to_bool(v); }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
      line_(line) {}

void RunConfig::validate() const {
  if (auto v = first_violation(*this)) throw ConfigError("<config>", 0, v->key + ": " + v->message);
}

std::string serialize(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# oam-ionize run configuration\n";
  os << "version = " << cfg.version << "\n";
  os << "name = " << cfg.name << "\n\n";

  os << "[beam]\n";
  os << "amplitude = " << fmt(cfg.beam.amplitude) << "\n";
  const std::string pol_name = cfg.beam.pol.name();
  if (pol_name != "custom" && angular::Polarization::parse(pol_name) == cfg.beam.pol) {
    os << "polarization = " << pol_name << "\n";
  } else {
    os << "polarization_alpha = " << fmt(cfg.beam.pol.alpha) << "\n";
    os << "polarization_beta = " << fmt(cfg.beam.pol.beta) << "\n";
  }
  os << "omega = " << fmt(cfg.beam.omega) << "\n";
  os << "n_cyc = " << cfg.beam.n_cyc << "\n";
  os << "ell = " << cfg.beam.ell << "\n";
  os << "p = " << cfg.beam.p << "\n";
  os << "waist = " << fmt(cfg.beam.waist) << "\n";
  os << "chi = " << fmt(cfg.beam.chi) << "\n";
  os << "origin_offset = " << fmt(cfg.beam.origin_offset) << "\n";
  os << "atom_displacement = " << fmt(cfg.beam.atom_displacement) << "\n";
  os << "normalization = " << beam::to_string(cfg.beam.normalization) << "\n";
  os << "model = " << beam::to_string(cfg.beam.model) << "\n\n";

  os << "[grid]\n";
  os << "n = " << cfg.grid.n[0] << " " << cfg.grid.n[1] << " " << cfg.grid.n[2] << "\n";
  os << "h = " << fmt(cfg.grid.h) << "\n";
  os << "center = " << fmt(cfg.grid.center) << "\n\n";

  os << "[propagator]\n";
  os << "dt = " << fmt(cfg.prop.dt) << "\n";
  os << "gauge = velocity\n";
  os << "soft_core = " << fmt(cfg.prop.soft_core) << "\n";
  os << "nuclear_charge = " << fmt(cfg.prop.nuclear_charge) << "\n";
  os << "charge = " << fmt(cfg.prop.charge) << "\n";
  os << "absorber = " << tdse::to_string(cfg.prop.absorber.type) << "\n";
  os << "absorber_width = " << fmt(cfg.prop.absorber.width) << "\n";
  os << "absorber_strength = " << fmt(cfg.prop.absorber.strength) << "\n\n";

  os << "[run]\n";
  os << "tail = " << fmt(cfg.tail) << "\n";
  os << "record_every = " << cfg.record_every << "\n\n";

  os << "[analysis]\n";
  os << "l_max = " << cfg.analysis.l_max << "\n";
  os << "n_radial = " << cfg.analysis.n_radial << "\n";
  os << "r_max = " << fmt(cfg.analysis.r_max) << "\n";
  os << "closure_order = " << cfg.analysis.closure_order << "\n";
  os << "confine_radius = " << fmt(cfg.analysis.confine_radius) << "\n";
  os << "histogram_width = " << fmt(cfg.analysis.histogram_width) << "\n\n";

  os << "[output]\n";
  os << "directory = " << cfg.output.directory << "\n";
  os << "checkpoint_every = " << cfg.output.checkpoint_every << "\n";
  os << "trajectory = " << fmt(cfg.output.trajectory) << "\n";
  os << "spectrum = " << fmt(cfg.output.spectrum) << "\n";
  os << "projection = " << fmt(cfg.output.projection) << "\n";
  os << "projection_series = " << fmt(cfg.output.projection_series) << "\n";
  os << "final_state = " << fmt(cfg.output.final_state) << "\n";
  return os.str();
}

RunConfig parse_run_config(std::string_view text, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::vector<std::string> order;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const std::array<const char*, 6> known = {"beam", "grid", "propagator", "run", "analysis", "output"};
      if (std::find(known.begin(), known.end(), section) == known.end()) {
        throw ConfigError(source, line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    const std::string key_name(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key_name.empty()) throw ConfigError(source, line_no, "missing key before '='");
    const std::string key = section.empty() ? key_name : section + "." + key_name;
    const bool is_peak = key == "beam.peak_field" || key == "beam.peak_radius";
    if (!is_peak && !setters().contains(key)) throw ConfigError(source, line_no, "unknown key '" + key + "'");
    if (entries.contains(key)) {
      throw ConfigError(source, line_no,
                        "duplicate key '" + key + "' (first set on line " + std::to_string(entries[key].line) + ")");
    }
    entries[key] = {value, line_no};
    order.push_back(key);
    if (eol == text.size()) break;
  }

  RunConfig cfg;
  for (const auto& key : order) {
    if (key == "beam.peak_field" || key == "beam.peak_radius") continue;
    const Entry& e = entries[key];
    try {
      setters().at(key)(cfg, e.value);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(source, e.line, key + ": " + ex.what());
    }
  }

  const bool has_field = entries.contains("beam.peak_field");
  const bool has_radius = entries.contains("beam.peak_radius");
  if (has_field != has_radius) {
    const Entry& e = entries[has_field ? "beam.peak_field" : "beam.peak_radius"];
    throw ConfigError(source, e.line, "peak_field and peak_radius must be given together");
  }
  if (has_field) {
    const Entry& field = entries["beam.peak_field"];
    if (entries.contains("beam.amplitude")) {
      throw ConfigError(source, field.line, "peak_field conflicts with amplitude on line " +
                                                std::to_string(entries["beam.amplitude"].line));
    }
    try {
      cfg.beam.amplitude =
          beam::amplitude_for_peak_field(cfg.beam, to_double(field.value), to_double(entries["beam.peak_radius"].value));
    } catch (const std::exception& ex) {
      throw ConfigError(source, field.line, std::string("beam.peak_field: ") + ex.what());
    }
  }

  if (auto v = first_violation(cfg)) {
    auto it = entries.find(v->key);
    throw ConfigError(source, it == entries.end() ? 0 : it->second.line, v->key + ": " + v->message);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), path.string());
}

}  // namespace oamion::config
