#include "mottscope/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mottscope/errors.hpp"

namespace mottscope {

std::size_t basis_dimension(int sites, int particles) {
  if (sites < 1 || particles < 0) return 0;
  // C(N+L-1, k) with k = min(L-1, N), multiplicative with exact division.
  const std::uint64_t n = static_cast<std::uint64_t>(particles) + static_cast<std::uint64_t>(sites) - 1;
  std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(sites) - 1,
                                            static_cast<std::uint64_t>(particles));
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(acc);
}

FockBasis::FockBasis(int sites, int particles, std::size_t dimension_cap)
    : sites_(sites), particles_(particles), size_(0) {
  if (sites < 1) throw DomainError("basis needs at least one site");
  if (particles < 0) throw DomainError("particle number must be nonnegative");
  size_ = basis_dimension(sites, particles);
  if (size_ > dimension_cap)
    throw OverflowError("basis dimension " + std::to_string(size_) + " for L=" +
                        std::to_string(sites) + ", N=" + std::to_string(particles) +
                        " exceeds cap " + std::to_string(dimension_cap));

  const int rows = particles + sites;
  binom_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(sites), 0);
  for (int n = 0; n < rows; ++n) {
    for (int k = 0; k < sites && k <= n; ++k) {
      auto& entry = binom_[static_cast<std::size_t>(n) * static_cast<std::size_t>(sites) + static_cast<std::size_t>(k)];
      entry = (k == 0 || k == n) ? 1 : binom(n - 1, k - 1) + (k <= n - 1 ? binom(n - 1, k) : 0);
    }
  }

  occupations_.resize(size_ * static_cast<std::size_t>(sites));
  std::vector<int> cur(static_cast<std::size_t>(sites), 0);
  cur[0] = particles;
  for (std::size_t idx = 0; idx < size_; ++idx) {
    std::copy(cur.begin(), cur.end(), occupations_.begin() + static_cast<std::ptrdiff_t>(idx * sites));
    // Successor in decreasing lexicographic order: move one boson from the
    // last non-empty site before the end one step right and gather the tail.
    int i = sites - 2;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == 0) --i;
    if (i < 0) break;
    int tail = 0;
    for (int s = i + 1; s < sites; ++s) {
      tail += cur[static_cast<std::size_t>(s)];
      cur[static_cast<std::size_t>(s)] = 0;
    }
    --cur[static_cast<std::size_t>(i)];
    cur[static_cast<std::size_t>(i + 1)] = tail + 1;
  }
}

std::size_t FockBasis::rank_unchecked(std::span<const int> state) const {
  // States preceding |n>: at each site i, all states with a larger occupation
  // there and the same prefix. With R bosons left and m sites after i that is
  // sum_{n'>n_i} C(R-n'+m-1, m-1) = C(R-n_i-1+m, m).
  std::size_t index = 0;
  int remaining = particles_;
  for (int i = 0; i + 1 < sites_; ++i) {
    const int n = state[static_cast<std::size_t>(i)];
    const int m = sites_ - i - 1;
    if (n < remaining) index += binom(remaining - n - 1 + m, m);
    remaining -= n;
  }
  return index;
}

std::size_t FockBasis::rank(std::span<const int> state) const {
  if (state.size() != static_cast<std::size_t>(sites_))
    throw NotInBasis("state has " + std::to_string(state.size()) + " sites, basis has " +
                     std::to_string(sites_));
  int total = 0;
  for (int n : state) {
    if (n < 0) throw NotInBasis("negative occupation");
    total += n;
  }
  if (total != particles_)
    throw NotInBasis("state holds " + std::to_string(total) + " particles, basis has " +
                     std::to_string(particles_));
  return rank_unchecked(state);
}

FockBasis enumerate_basis(int sites, int particles, std::size_t dimension_cap) {
  return FockBasis(sites, particles, dimension_cap);
}

HopResult apply_hop(const FockState& state, int to, int from) {
  const auto n_from = state.at(static_cast<std::size_t>(from));
  const auto n_to = state.at(static_cast<std::size_t>(to));
  if (n_from == 0) return {state, 0.0};
  if (to == from) return {state, static_cast<double>(n_from)};
  HopResult out{state, std::sqrt(static_cast<double>(n_to + 1)) * std::sqrt(static_cast<double>(n_from))};
  --out.state[static_cast<std::size_t>(from)];
  ++out.state[static_cast<std::size_t>(to)];
  return out;
}

}  // namespace mottscope
