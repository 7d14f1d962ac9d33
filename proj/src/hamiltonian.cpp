#include "mottscope/hamiltonian.hpp"

#include <cmath>

#include "mottscope/kernels.hpp"

namespace mottscope {

std::vector<std::pair<int, int>> periodic_bonds(int sites) {
  std::vector<std::pair<int, int>> bonds;
  if (sites < 2) return bonds;
  for (int j = 0; j < sites; ++j) bonds.emplace_back(j, (j + 1) % sites);
  return bonds;
}

HamiltonianMatrix build_hamiltonian(const FockBasis& basis, const InteractionSpec& interaction,
                                    const LatticeSpec& lattice) {
  HamiltonianMatrix h;
  h.dim = basis.size();
  h.energy_unit_er = lattice.j_er;
  h.diagonal.resize(h.dim);
  const double half_u = 0.5 * interaction.u_over_j;
  for (std::size_t b = 0; b < h.dim; ++b) {
    long pairs = 0;
    for (int n : basis.state(b)) pairs += static_cast<long>(n) * (n - 1);
    h.diagonal[b] = half_u * static_cast<double>(pairs);
  }
  h.upper = kernels::parallel::hopping_entries(basis);
  return h;
}

Eigen::MatrixXd HamiltonianMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diagonal[static_cast<std::size_t>(i)];
  for (const auto& e : upper) {
    m(e.row, e.col) = e.value;
    m(e.col, e.row) = e.value;
  }
  return m;
}

double HamiltonianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double d : diagonal) s += d * d;
  for (const auto& e : upper) s += 2.0 * e.value * e.value;
  return std::sqrt(s);
}

SymmetricCsr to_csr(const HamiltonianMatrix& h) {
  SymmetricCsr csr;
  csr.diagonal = h.diagonal;
  csr.row_ptr.assign(h.dim + 1, 0);
  for (const auto& e : h.upper) {
    ++csr.row_ptr[e.row + 1];
    ++csr.row_ptr[e.col + 1];
  }
  for (std::size_t i = 0; i < h.dim; ++i) csr.row_ptr[i + 1] += csr.row_ptr[i];
  csr.col.resize(csr.row_ptr.back());
  csr.val.resize(csr.row_ptr.back());
  std::vector<std::size_t> fill(csr.row_ptr.begin(), csr.row_ptr.end() - 1);
  // Lower-triangle entries of row r come from earlier rows, so walking the
  // sorted upper list keeps every row's columns ascending.
  for (const auto& e : h.upper) {
    csr.col[fill[e.col]] = e.row;
    csr.val[fill[e.col]++] = e.value;
  }
  for (const auto& e : h.upper) {
    csr.col[fill[e.row]] = e.col;
    csr.val[fill[e.row]++] = e.value;
  }
  return csr;
}

}  // namespace mottscope
