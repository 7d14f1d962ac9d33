#include "mottscope/spectrum.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "mottscope/errors.hpp"

namespace mottscope {

Spectrum diagonalize(const HamiltonianMatrix& h, EigenBackend backend, std::size_t dimension_cap) {
  if (h.dim > dimension_cap)
    throw OverflowError("Hamiltonian dimension " + std::to_string(h.dim) + " exceeds cap " +
                        std::to_string(dimension_cap));
  auto eig = symmetric_eigensolve(h.dense(), backend);
  Spectrum s;
  s.energy_unit_er = h.energy_unit_er;
  s.energies_er = eig.values * h.energy_unit_er;
  s.vectors = std::move(eig.vectors);
  return s;
}

SpectralQuality check_spectrum(const HamiltonianMatrix& h, const Spectrum& s) {
  SpectralQuality q;
  const auto csr = to_csr(h);
  const auto dim = static_cast<Eigen::Index>(h.dim);
  Eigen::VectorXd hv(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    const Eigen::VectorXd v = s.vectors.col(n);
    kernels::parallel::matvec(csr, {v.data(), h.dim}, {hv.data(), h.dim});
    const double e = s.energies_er(n) / s.energy_unit_er;
    q.max_residual = std::max(q.max_residual, (hv - e * v).norm());
  }
  q.residual_bound = 1e-10 * h.frobenius_norm() / std::sqrt(static_cast<double>(std::max<std::size_t>(h.dim, 1)));
  const Eigen::MatrixXd gram = s.vectors.transpose() * s.vectors - Eigen::MatrixXd::Identity(dim, dim);
  q.orthonormality = dim > 0 ? gram.cwiseAbs().maxCoeff() : 0.0;
  return q;
}

Eigen::MatrixXd ground_matrix_elements(const Spectrum& s, const FockBasis& basis, Execution exec) {
  return exec == Execution::parallel ? kernels::parallel::ground_matrix_elements(s.vectors, basis)
                                     : kernels::serial::ground_matrix_elements(s.vectors, basis);
}

std::vector<double> DensityResponse::excitation_er() const {
  std::vector<double> out(dim());
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = (energies_j(static_cast<Eigen::Index>(n)) - energies_j(0)) * energy_unit_er;
  return out;
}

DensityResponse density_response(const Spectrum& s, const FockBasis& basis, double u_over_j, Execution exec) {
  DensityResponse r;
  r.sites = basis.sites();
  r.particles = basis.particles();
  r.u_over_j = u_over_j;
  r.energy_unit_er = s.energy_unit_er;
  r.energies_j = s.energies_er / s.energy_unit_er;
  r.matrix_elements = ground_matrix_elements(s, basis, exec);
  return r;
}

double density_fluctuation(const Eigen::VectorXd& ground, const FockBasis& basis, double k_d) {
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(basis.sites()));
  for (int j = 0; j < basis.sites(); ++j) phase[static_cast<std::size_t>(j)] = std::polar(1.0, k_d * (j + 1));
  double second = 0.0;
  std::complex<double> first{0.0, 0.0};
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const double p = ground(static_cast<Eigen::Index>(b)) * ground(static_cast<Eigen::Index>(b));
    std::complex<double> rho{0.0, 0.0};
    for (int j = 0; j < basis.sites(); ++j)
      rho += static_cast<double>(basis.occupation(b, j)) * phase[static_cast<std::size_t>(j)];
    second += p * std::norm(rho);
    first += p * rho;
  }
  return second - std::norm(first);
}

double inelastic_weight_free(const Eigen::MatrixXd& matrix_elements, double k_d) {
  double total = 0.0;
  for (Eigen::Index n = 1; n < matrix_elements.rows(); ++n) {
    std::complex<double> amp{0.0, 0.0};
    for (Eigen::Index j = 0; j < matrix_elements.cols(); ++j)
      amp += matrix_elements(n, j) * std::polar(1.0, k_d * static_cast<double>(j + 1));
    total += std::norm(amp);
  }
  return total;
}

}  // namespace mottscope
