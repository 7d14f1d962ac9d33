#pragma once

// Site-decoupled mean-field description. Single-site Hamiltonian in units of U:
//   h(λ) = ½ n(n-1) - μ n - λ (a + a†),   self-consistency λ = 2 J ⟨a⟩.

#include <array>

#include <Eigen/Core>

#include "mottscope/scatter.hpp"
#include "mottscope/units.hpp"

namespace mottscope::mf {

/// Chemical potential at the fixed-density transition, sqrt(ν(ν+1)) - 1.
double mu_fd(int filling);

/// ε(n) = ½ n(n-1) - μ n.
double single_site_energy(int n, double mu_tilde);

struct SingleSiteEnergies {
  double eps = 0.0;
  double delta_plus = 0.0;   // ε(ν+1) - ε(ν) = ν - μ
  double delta_minus = 0.0;  // ε(ν-1) - ε(ν) = μ - ν + 1
};
SingleSiteEnergies single_site_energies(int filling, double mu_tilde);

/// sqrt(ν + k + [1 - sgn k]/2) / (ε(ν) - ε(ν+k)); DomainError when ν + k < 0
/// or k = 0.
double c_coefficient(int filling, int k, double mu_tilde);

double coefficient_a(int filling, double mu_tilde);
double coefficient_b(int filling, double mu_tilde);

/// -(A + 1/(2J))/B clamped at zero.
double lambda_squared(int filling, double j_tilde, double mu_tilde);

/// 1/2 + ν - sqrt(ν(ν+1)).
double critical_j(int filling);

struct MFContext {
  int nu = 1;
  double mu_tilde = 0.0;
  double j_tilde = 0.0;
  double lambda_tilde = 0.0;
  std::array<double, 4> c_coeffs{};  // k = -2, -1, 1, 2; NaN where undefined
  double a = 0.0;
  double b = 0.0;
};

/// Perturbative context at μ = μ_FD unless given.
MFContext make_context(int filling, double j_tilde);
MFContext make_context(int filling, double j_tilde, double mu_tilde);

inline int default_truncation(int filling) { return filling + 10; }

/// Eigen-decomposition of h(λ) on occupations 0..n_max, ascending energies.
struct SingleSite {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  /// Index of the eigenvector with the largest weight on occupation n.
  Eigen::Index dominated_by(int n) const;
};
SingleSite solve_single_site(double lambda_tilde, double mu_tilde, int n_max);

/// ⟨a⟩ in the single-site ground state, sign fixed so that it is >= 0.
double ground_condensate(double lambda_tilde, double mu_tilde, int n_max);

/// Fixed point of λ -> 2J ⟨a⟩(λ) by Aitken-accelerated damped iteration (factor 0.5, seed 0.1,
/// |Δλ| < 1e-12) followed by a bracketed refinement. Returns 0 when the
/// trivial solution is stable or the iteration collapses. Throws
/// ConvergenceError after 1e5 iterations and DomainError for n_max < ν + 4.
double selfconsistent_lambda(int filling, double j_tilde, double mu_tilde, int n_max);

enum class LambdaSource { perturbative, iterative };
LambdaSource parse_lambda_source(std::string_view s);

/// λ̃ above which the leading-order cross section is flagged.
inline constexpr double kLambdaValidity = 0.1;

/// Leading-order inelastic cross section at μ = μ_FD, normalised by N.
CrossSectionRecord inelastic_cs_mf(const LatticeSpec& lattice, const ProbeSpec& probe,
                                   const InteractionSpec& interaction,
                                   LambdaSource source = LambdaSource::perturbative);

}  // namespace mottscope::mf
