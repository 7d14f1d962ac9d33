#pragma once

// Hot loops of the exact pipeline. Every kernel exists twice: a plain serial
// reference and an OpenMP version. The parallel versions keep the serial
// summation order inside each output element, so both produce identical
// bits except matvec, whose row sums are regrouped.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "mottscope/fock.hpp"
#include "mottscope/hamiltonian.hpp"

namespace mottscope {

enum class Execution { serial, parallel };

// Inputs for the per-channel inelastic terms
//   sqrt(r_n) |sum_j e^{i kappa_n x_j} ME[n, j]|^2 |W(kappa_n)|^2,
// r_n = 1 - dE_n / E_in, kappa_n = kappa_el sqrt(r_n), x_j = j + 1.
struct ChannelInputs {
  std::span<const double> excitation_er;  // E_n - E_0 for every n (n = 0 included)
  const Eigen::MatrixXd* matrix_elements = nullptr;  // dim x L
  double kappa_el_d = 0.0;
  double ein_er = 1.0;
  double v0_er = 15.0;
};

namespace kernels::serial {

std::vector<OffDiagonalEntry> hopping_entries(const FockBasis& basis);
void matvec(const HamiltonianMatrix& h, std::span<const double> x, std::span<double> y);
Eigen::MatrixXd ground_matrix_elements(const Eigen::MatrixXd& vectors, const FockBasis& basis);
/// Entry n is 0 for n = 0 and for closed channels (r_n < 0).
std::vector<double> inelastic_channel_terms(const ChannelInputs& in);

}  // namespace kernels::serial

namespace kernels::parallel {

std::vector<OffDiagonalEntry> hopping_entries(const FockBasis& basis);
void matvec(const SymmetricCsr& h, std::span<const double> x, std::span<double> y);
Eigen::MatrixXd ground_matrix_elements(const Eigen::MatrixXd& vectors, const FockBasis& basis);
std::vector<double> inelastic_channel_terms(const ChannelInputs& in);

}  // namespace kernels::parallel

}  // namespace mottscope
