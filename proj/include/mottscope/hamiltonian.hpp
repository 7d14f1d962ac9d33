#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mottscope/fock.hpp"
#include "mottscope/units.hpp"

namespace mottscope {

struct OffDiagonalEntry {
  std::uint32_t row;
  std::uint32_t col;  // row < col; the (col, row) element is implied
  double value;
};

/// Fixed-N Bose-Hubbard Hamiltonian on a periodic chain, stored in units of
/// the tunneling J. The -mu N term is a constant in the sector and omitted.
/// Each hopping element is stored once in the upper triangle.
struct HamiltonianMatrix {
  std::size_t dim = 0;
  std::vector<double> diagonal;         // (U/2J) sum_j n_j (n_j - 1)
  std::vector<OffDiagonalEntry> upper;  // sorted by (row, col)
  double energy_unit_er = 1.0;          // J in E_r

  Eigen::MatrixXd dense() const;
  double frobenius_norm() const;
};

/// Nearest-neighbour pairs (j, j+1 mod L). For L = 2 both bonds join the
/// same two sites, so their hopping amplitudes add.
std::vector<std::pair<int, int>> periodic_bonds(int sites);

HamiltonianMatrix build_hamiltonian(const FockBasis& basis, const InteractionSpec& interaction,
                                    const LatticeSpec& lattice);

/// Compressed-row copy of both triangles, for row-parallel products.
struct SymmetricCsr {
  std::vector<double> diagonal;
  std::vector<std::size_t> row_ptr;
  std::vector<std::uint32_t> col;
  std::vector<double> val;
};

SymmetricCsr to_csr(const HamiltonianMatrix& h);

}  // namespace mottscope
