#include "mottscope/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <omp.h>

#include "mottscope/scatter.hpp"

namespace mottscope {

namespace {

// Upper-triangle hopping entries of one row, duplicates merged, in units of J.
void row_hopping(const FockBasis& basis, const std::vector<std::pair<int, int>>& bonds,
                 std::size_t row, std::vector<int>& scratch, std::vector<OffDiagonalEntry>& out) {
  const auto state = basis.state(row);
  const std::size_t first = out.size();
  for (const auto& [a, b] : bonds) {
    for (const auto& [to, from] : {std::pair{a, b}, std::pair{b, a}}) {
      const int n_from = state[static_cast<std::size_t>(from)];
      if (n_from == 0) continue;
      const int n_to = state[static_cast<std::size_t>(to)];
      scratch.assign(state.begin(), state.end());
      --scratch[static_cast<std::size_t>(from)];
      ++scratch[static_cast<std::size_t>(to)];
      const std::size_t col = basis.rank_unchecked(scratch);
      if (col <= row) continue;
      const double amp = std::sqrt(static_cast<double>(n_to + 1)) * std::sqrt(static_cast<double>(n_from));
      out.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), -amp});
    }
  }
  auto begin = out.begin() + static_cast<std::ptrdiff_t>(first);
  std::sort(begin, out.end(), [](const auto& x, const auto& y) { return x.col < y.col; });
  // Merge repeated targets (only the doubled bond of a two-site ring).
  auto w = begin;
  for (auto r = begin; r != out.end(); ++r) {
    if (w != begin && (w - 1)->col == r->col) (w - 1)->value += r->value;
    else *w++ = *r;
  }
  out.erase(w, out.end());
}

double channel_term(const ChannelInputs& in, std::size_t n) {
  const double r = 1.0 - in.excitation_er[n] / in.ein_er;
  if (n == 0 || r < 0.0) return 0.0;
  const double root = std::sqrt(r);
  const double kappa = in.kappa_el_d * root;
  const auto& me = *in.matrix_elements;
  std::complex<double> amp{0.0, 0.0};
  for (Eigen::Index j = 0; j < me.cols(); ++j) {
    const double phase = kappa * static_cast<double>(j + 1);
    amp += me(static_cast<Eigen::Index>(n), j) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  const double w = form_factor(kappa, in.v0_er);
  return root * std::norm(amp) * w * w;
}

double matrix_element(const Eigen::MatrixXd& vectors, const Eigen::MatrixXd& weighted_ground,
                      Eigen::Index n, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index b = 0; b < vectors.rows(); ++b) s += vectors(b, n) * weighted_ground(b, j);
  return s;
}

// X(b, j) = n_j(b) * phi_0(b).
Eigen::MatrixXd weighted_ground(const Eigen::MatrixXd& vectors, const FockBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd x(dim, basis.sites());
  for (Eigen::Index b = 0; b < dim; ++b)
    for (int j = 0; j < basis.sites(); ++j)
      x(b, j) = basis.occupation(static_cast<std::size_t>(b), j) * vectors(b, 0);
  return x;
}

}  // namespace

namespace kernels::serial {

std::vector<OffDiagonalEntry> hopping_entries(const FockBasis& basis) {
  const auto bonds = periodic_bonds(basis.sites());
  std::vector<OffDiagonalEntry> out;
  std::vector<int> scratch;
  for (std::size_t row = 0; row < basis.size(); ++row) row_hopping(basis, bonds, row, scratch, out);
  return out;
}

void matvec(const HamiltonianMatrix& h, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < h.dim; ++i) y[i] = h.diagonal[i] * x[i];
  for (const auto& e : h.upper) {
    y[e.row] += e.value * x[e.col];
    y[e.col] += e.value * x[e.row];
  }
}

Eigen::MatrixXd ground_matrix_elements(const Eigen::MatrixXd& vectors, const FockBasis& basis) {
  const Eigen::MatrixXd x = weighted_ground(vectors, basis);
  Eigen::MatrixXd me(vectors.cols(), basis.sites());
  for (Eigen::Index n = 0; n < vectors.cols(); ++n)
    for (Eigen::Index j = 0; j < x.cols(); ++j) me(n, j) = matrix_element(vectors, x, n, j);
  return me;
}

std::vector<double> inelastic_channel_terms(const ChannelInputs& in) {
  std::vector<double> terms(in.excitation_er.size(), 0.0);
  for (std::size_t n = 0; n < terms.size(); ++n) terms[n] = channel_term(in, n);
  return terms;
}

}  // namespace kernels::serial

namespace kernels::parallel {

std::vector<OffDiagonalEntry> hopping_entries(const FockBasis& basis) {
  const auto bonds = periodic_bonds(basis.sites());
  const auto dim = static_cast<std::ptrdiff_t>(basis.size());
  std::vector<std::vector<OffDiagonalEntry>> rows(basis.size());
#pragma omp parallel
  {
    std::vector<int> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t row = 0; row < dim; ++row)
      row_hopping(basis, bonds, static_cast<std::size_t>(row), scratch, rows[static_cast<std::size_t>(row)]);
  }
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<OffDiagonalEntry> out;
  out.reserve(total);
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

void matvec(const SymmetricCsr& h, std::span<const double> x, std::span<double> y) {
  const auto dim = static_cast<std::ptrdiff_t>(h.diagonal.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < dim; ++i) {
    const auto r = static_cast<std::size_t>(i);
    double s = h.diagonal[r] * x[r];
    for (std::size_t k = h.row_ptr[r]; k < h.row_ptr[r + 1]; ++k) s += h.val[k] * x[h.col[k]];
    y[r] = s;
  }
}

Eigen::MatrixXd ground_matrix_elements(const Eigen::MatrixXd& vectors, const FockBasis& basis) {
  const Eigen::MatrixXd x = weighted_ground(vectors, basis);
  Eigen::MatrixXd me(vectors.cols(), basis.sites());
  const Eigen::Index cols = vectors.cols();
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index n = 0; n < cols; ++n)
    for (Eigen::Index j = 0; j < x.cols(); ++j) me(n, j) = matrix_element(vectors, x, n, j);
  return me;
}

std::vector<double> inelastic_channel_terms(const ChannelInputs& in) {
  std::vector<double> terms(in.excitation_er.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(terms.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < count; ++n)
    terms[static_cast<std::size_t>(n)] = channel_term(in, static_cast<std::size_t>(n));
  return terms;
}

}  // namespace kernels::parallel

}  // namespace mottscope
