#pragma once

// Strong-coupling expansion around the Mott state |ν,...,ν>. Internal
// energies are in units of U and j_tilde = J/U. Particle-hole states are
// labelled by the centre-of-mass quasimomentum q_d = 2πj/L (j = 0..L-1) and
// the relative quasimomentum k_d = πj'/L (j' = 1..L-1).

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "mottscope/fock.hpp"
#include "mottscope/kernels.hpp"
#include "mottscope/scatter.hpp"
#include "mottscope/units.hpp"

namespace mottscope::sce {

std::vector<double> com_momenta(int sites);
std::vector<double> relative_momenta(int sites);

/// T_q = (ν+1) e^{iqd} + ν.
std::complex<double> tunneling(double q_d, int filling);

/// Principal argument of T_q, in (-π, π].
double zeta(double q_d, int filling);

/// First-order coefficient 2 cos(ϰd) sqrt(1 + 4ν(ν+1) cos^2(qd/2)).
double e1(double q_d, double k_d, int filling);

/// Second-order coefficient of the particle-hole energy (closed form,
/// includes the extensive -2Lν(ν+1) part). Throws DomainError for L < 3.
double e2(double q_d, double k_d, int filling, int sites);

/// Excitation gap above the perturbed ground state in units of U:
/// order 1: 1 - J̃ E1; order 2 adds J̃^2 (E2 + 2Lν(ν+1)).
double excitation_gap(double q_d, double k_d, int filling, int sites, double j_tilde, int order);

/// M(q, ϰ) of the first-order density matrix element
/// <φ_{q,ϰ}| n_j |φ_0> = J̃ sqrt(2ν(ν+1)) / L · M e^{-iqjd}.
std::complex<double> matrix_element_m(double q_d, double k_d, int filling, int sites);

/// |q,ϰ> as a vector over a fixed-N Fock basis with N = νL. Verification use.
Eigen::VectorXcd build_ph_state(double q_d, double k_d, const FockBasis& basis);

/// Hopping operator V = Σ_j (a†_j a_{j+1} + h.c.) applied to a state.
Eigen::VectorXcd apply_hopping(const FockBasis& basis, const Eigen::VectorXcd& psi);

/// Inelastic cross section to leading order in J/U, normalised by N.
/// gap_order selects the gap used in both the flux weight and κ.
CrossSectionRecord inelastic_cs_sce(const LatticeSpec& lattice, const ProbeSpec& probe,
                                    const InteractionSpec& interaction, int gap_order = 1,
                                    Execution exec = Execution::parallel);

/// The same sum in the high-incoming-energy limit at finite L: unit flux
/// weights and κ = κ_el for every channel.
CrossSectionRecord inelastic_cs_sce_fixed_kappa(const LatticeSpec& lattice, const ProbeSpec& probe,
                                                const InteractionSpec& interaction);

/// True when E_in/J exceeds kHighEnergyMargin · (U/J + 2 sqrt(4ν(ν+1)+1)).
inline constexpr double kHighEnergyMargin = 10.0;
bool high_energy_condition(int filling, const ProbeSpec& probe, const InteractionSpec& interaction,
                           double j_er);

/// System-size independent limit 8(ν+1) sin^2(κ_el d/2) |W(κ_el)|^2 (J/U)^2.
/// Flags "high_energy_condition" when high_energy_condition() is false.
CrossSectionRecord large_l_cs(int filling, const ProbeSpec& probe, double v0_er,
                              const InteractionSpec& interaction, double j_er = kDefaultTunneling);

/// SCE gap of the lowest fixed-density excitation (q = 0, ϰd = π/L) to
/// second order in J/U.
struct GapSeries {
  int filling = 1;
  double operator()(double j_tilde, int sites) const;
};

/// 1 - 2(2ν+1)J + [1 + 2ν(ν+1)]J^2 + 2ν(ν^2+2)J^3.
double critical_cubic(double j_tilde, int filling);

struct CriticalEstimate {
  GapSeries gap;
  double j_tilde_c = 0.0;  // smallest positive root of critical_cubic
  double u_over_j_c() const { return 1.0 / j_tilde_c; }
};

/// Throws NoRoot when no sign change is found below J/U = 1.
CriticalEstimate gap_and_critical(int filling);

}  // namespace mottscope::sce
