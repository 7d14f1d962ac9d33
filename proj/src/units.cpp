#include "mottscope/units.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mottscope/errors.hpp"

namespace mottscope {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': not a number: " + value);
  }
}

int to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': not an integer: " + value);
  }
}

}  // namespace

void validate_lattice(const LatticeSpec& lattice) {
  if (lattice.sites < 2) throw RangeError("sites", "need at least two sites");
  if (lattice.filling < 1) throw RangeError("filling", "must be a positive integer");
  if (!(lattice.v0_er > 0.0)) throw RangeError("v0", "lattice depth must be positive");
  if (!(lattice.j_er > 0.0)) throw RangeError("j_er", "tunneling must be positive");
  if (lattice.particles && *lattice.particles < 0)
    throw RangeError("particles", "must be nonnegative");
}

void validate_probe(const ProbeSpec& probe) {
  if (!(probe.ein_er > 0.0)) throw RangeError("ein", "incoming energy must be positive");
  if (!(probe.mass_ratio > 0.0)) throw RangeError("mass_ratio", "must be positive");
  if (!(probe.theta > -kPi && probe.theta <= kPi))
    throw RangeError("theta", "must lie in (-pi, pi]");
}

void validate_interaction(const InteractionSpec& interaction) {
  if (!(interaction.u_over_j >= 0.0) || !std::isfinite(interaction.u_over_j))
    throw RangeError("u_over_j", "interaction must be finite and nonnegative");
}

ValidatedConfig validate(const LatticeSpec& lattice, const ProbeSpec& probe,
                         const InteractionSpec& interaction) {
  validate_lattice(lattice);
  validate_probe(probe);
  validate_interaction(interaction);
  ValidatedConfig cfg;
  cfg.lattice = lattice;
  cfg.probe = probe;
  cfg.interaction = interaction;
  cfg.particles = lattice.particle_number();
  cfg.u_er = interaction.u_er(lattice.j_er);
  cfg.kappa_el_d = -kPi * std::sin(probe.theta) * std::sqrt(probe.mass_ratio * probe.ein_er);
  return cfg;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key or value");
    if (!out.emplace(key, value).second)
      throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key " + key);
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_config(const std::map<std::string, std::string>& config, LatticeSpec& lattice,
                  ProbeSpec& probe, InteractionSpec& interaction) {
  for (const auto& [key, value] : config) {
    if (key == "sites") lattice.sites = to_int(key, value);
    else if (key == "filling") lattice.filling = to_int(key, value);
    else if (key == "particles") lattice.particles = to_int(key, value);
    else if (key == "v0") lattice.v0_er = to_double(key, value);
    else if (key == "j_er") lattice.j_er = to_double(key, value);
    else if (key == "u_over_j") interaction.u_over_j = to_double(key, value);
    else if (key == "ein") probe.ein_er = to_double(key, value);
    else if (key == "mass_ratio") probe.mass_ratio = to_double(key, value);
    else if (key == "theta") probe.theta = to_double(key, value);
  }
}

}  // namespace mottscope
