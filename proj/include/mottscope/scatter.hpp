#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mottscope/units.hpp"

namespace mottscope {

struct DensityResponse;
enum class Execution;

enum class Method { exact, exact_elastic, sce, sce_large_l, mf };

std::string_view method_tag(Method m);
Method parse_method(std::string_view tag);  // throws ValidationError

/// One cross-section value dσ/dΩ / (N a_s^2) with channel bookkeeping and an
/// echo of the parameters it was computed for.
struct CrossSectionRecord {
  Method method = Method::exact;
  double value = 0.0;
  long channel_count = 0;       // open excited channels
  long contributing_count = 0;  // open channels with a non-vanishing matrix element
  int gap_order = 0;            // 1 or 2 for sce, 0 otherwise
  std::string warning;          // ';'-separated flags, empty when clean

  int sites = 0;
  int filling = 0;
  int particles = 0;
  double u_over_j = 0.0;
  double theta = 0.0;
  double ein_er = 0.0;

  void add_warning(std::string_view flag);
};

/// Gaussian Wannier form factor W(κ) = exp(-(κd)^2 / (4π^2 sqrt(V0/E_r))).
double form_factor(double kappa_d, double v0_er);

/// κ_el d = -π sinθ sqrt((m/M)(E_in/E_r)).
double elastic_kappa(const ProbeSpec& probe);

/// |Σ_j e^{i(κ-q)x_j}|^2 = sin^2((κ-q)dL/2) / sin^2((κ-q)d/2); L^2 at the
/// removable points.
double interference(double kappa_d, double q_d, int sites);

struct Kinematics {
  double kappa_el_d = 0.0;
  std::vector<bool> open;       // radicand 1 - dE_n/E_in >= 0
  std::vector<double> kappa_d;  // κ_el sqrt(radicand) for open channels, 0 otherwise
  long open_excited = 0;        // open channels with n != 0
};

Kinematics kinematics(std::span<const double> excitation_er, const ProbeSpec& probe);

/// Inelastic cross section from a complete spectrum in the diagonal
/// approximation, normalised by N. Closed channels are dropped. Sets the
/// "no_open_channels" warning (value 0) when E_1 - E_0 > E_in.
CrossSectionRecord inelastic_cs_exact(const DensityResponse& response, const LatticeSpec& lattice,
                                      const ProbeSpec& probe, Execution exec);
CrossSectionRecord inelastic_cs_exact(const DensityResponse& response, const LatticeSpec& lattice,
                                      const ProbeSpec& probe);

/// Elastic (n = 0) term at κ = κ_el, normalised by N.
CrossSectionRecord elastic_cs_exact(const DensityResponse& response, const LatticeSpec& lattice,
                                    const ProbeSpec& probe);

}  // namespace mottscope
