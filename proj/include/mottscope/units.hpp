#pragma once

// Unit conventions: energies in recoil units E_r, lengths in lattice
// constants d. Analytic strong-coupling quantities are in units of U and
// carry a "tilde" in their names (j_tilde = J/U).

#include <map>
#include <optional>
#include <string>

namespace mottscope {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kDefaultLatticeDepth = 15.0;   // V0 / E_r
inline constexpr double kDefaultTunneling = 6.5e-3;    // J / E_r at V0 = 15 E_r

struct LatticeSpec {
  int sites = 8;
  int filling = 1;
  double v0_er = kDefaultLatticeDepth;
  double j_er = kDefaultTunneling;
  // Non-integer filling is only meaningful for the exact pipeline; when set
  // it replaces filling * sites as the particle number there.
  std::optional<int> particles;

  int particle_number() const { return particles.value_or(filling * sites); }
  bool integer_filling() const { return particle_number() == filling * sites; }
};

struct ProbeSpec {
  double ein_er = 2.0;
  double mass_ratio = 1.0;  // m / M
  double theta = 0.99;      // radians, in (-pi, pi]
};

struct InteractionSpec {
  double u_over_j = 10.0;

  double u_er(double j_er) const { return u_over_j * j_er; }
  double j_tilde() const { return 1.0 / u_over_j; }
};

struct ValidatedConfig {
  LatticeSpec lattice;
  ProbeSpec probe;
  InteractionSpec interaction;
  int particles = 0;
  double u_er = 0.0;
  double kappa_el_d = 0.0;
};

// Throws RangeError naming the first offending field.
ValidatedConfig validate(const LatticeSpec& lattice, const ProbeSpec& probe,
                         const InteractionSpec& interaction);

void validate_lattice(const LatticeSpec& lattice);
void validate_probe(const ProbeSpec& probe);
void validate_interaction(const InteractionSpec& interaction);

// U/J recovered from an interaction energy in E_r.
inline double u_over_j_from_er(double u_er, double j_er) { return u_er / j_er; }

// Flat "key = value" text. '#' starts a comment; blank lines are skipped.
// Throws ValidationError on a malformed line or a repeated key.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

// Applies recognised keys (sites, filling, particles, v0, j_er, u_over_j,
// ein, mass_ratio, theta) from a parsed config. Unknown keys are left for
// the caller. Scalar values only.
void apply_config(const std::map<std::string, std::string>& config, LatticeSpec& lattice,
                  ProbeSpec& probe, InteractionSpec& interaction);

}  // namespace mottscope
