#pragma once

#include <Eigen/Core>

#include "mottscope/eigensolver.hpp"
#include "mottscope/fock.hpp"
#include "mottscope/hamiltonian.hpp"
#include "mottscope/kernels.hpp"

namespace mottscope {

/// Complete eigensystem of a fixed-N Hamiltonian. Immutable once built.
struct Spectrum {
  Eigen::VectorXd energies_er;  // ascending
  Eigen::MatrixXd vectors;      // orthonormal columns in the Fock basis
  double energy_unit_er = 1.0;  // J in E_r
  std::size_t ground_index = 0;

  std::size_t dim() const { return static_cast<std::size_t>(energies_er.size()); }
  double excitation_er(std::size_t n) const { return energies_er(static_cast<Eigen::Index>(n)) - energies_er(0); }
};

/// Throws OverflowError when dim > cap, ConvergenceError when the solver fails.
Spectrum diagonalize(const HamiltonianMatrix& h, EigenBackend backend = EigenBackend::lapack,
                     std::size_t dimension_cap = kDefaultDimensionCap);

struct SpectralQuality {
  double max_residual = 0.0;    // max_n ||H v_n - E_n v_n||_2, units of J
  double residual_bound = 0.0;  // 1e-10 ||H||_F / sqrt(dim)
  double orthonormality = 0.0;  // max |V^T V - I|
  bool ok() const { return max_residual <= residual_bound && orthonormality <= 1e-10; }
};

SpectralQuality check_spectrum(const HamiltonianMatrix& h, const Spectrum& s);

/// Table ME(n, j) = <phi_n| n_j |phi_0>, dim x L.
Eigen::MatrixXd ground_matrix_elements(const Spectrum& s, const FockBasis& basis,
                                       Execution exec = Execution::parallel);

/// Everything the scattering formulas need from a spectrum: energies and
/// the ground-state density matrix elements. This is what the cache stores.
struct DensityResponse {
  int sites = 0;
  int particles = 0;
  double u_over_j = 0.0;
  Eigen::VectorXd energies_j;       // units of J, ascending
  Eigen::MatrixXd matrix_elements;  // dim x L
  double energy_unit_er = 1.0;

  std::size_t dim() const { return static_cast<std::size_t>(energies_j.size()); }
  std::vector<double> excitation_er() const;
};

DensityResponse density_response(const Spectrum& s, const FockBasis& basis, double u_over_j,
                                 Execution exec = Execution::parallel);

/// <rho_k^dagger rho_k> - |<rho_k>|^2 in the state `ground`, with
/// rho_k = sum_j e^{i k x_j} n_j and x_j = j + 1. Evaluated directly in the
/// Fock basis, without excited states.
double density_fluctuation(const Eigen::VectorXd& ground, const FockBasis& basis, double k_d);

/// sum_{n != 0} |sum_j e^{i k x_j} ME(n, j)|^2, the unweighted inelastic sum.
double inelastic_weight_free(const Eigen::MatrixXd& matrix_elements, double k_d);

}  // namespace mottscope
