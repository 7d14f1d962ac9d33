#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mottscope {

/// Occupation numbers n_0 ... n_{L-1}. Sites are zero-based.
using FockState = std::vector<int>;

inline constexpr std::size_t kDefaultDimensionCap = 200000;

/// Number of ways to place n bosons on L sites, C(n+L-1, L-1). Saturates at
/// SIZE_MAX instead of overflowing.
std::size_t basis_dimension(int sites, int particles);

/// Fixed-(L, N) occupation basis in lexicographically decreasing order:
/// (N,0,...,0) has index 0 and (0,...,0,N) is last. Immutable after
/// construction.
class FockBasis {
 public:
  FockBasis(int sites, int particles, std::size_t dimension_cap = kDefaultDimensionCap);

  int sites() const { return sites_; }
  int particles() const { return particles_; }
  std::size_t size() const { return size_; }

  std::span<const int> state(std::size_t index) const {
    return {occupations_.data() + index * static_cast<std::size_t>(sites_),
            static_cast<std::size_t>(sites_)};
  }
  int occupation(std::size_t index, int site) const {
    return occupations_[index * static_cast<std::size_t>(sites_) + static_cast<std::size_t>(site)];
  }

  /// Combinatorial rank, O(L). Throws NotInBasis for a wrong length,
  /// negative entries or a particle count different from N.
  std::size_t rank(std::span<const int> state) const;

  /// Same as rank() without validation; state must belong to the basis.
  std::size_t rank_unchecked(std::span<const int> state) const;

 private:
  std::uint64_t binom(int n, int k) const {
    return binom_[static_cast<std::size_t>(n) * static_cast<std::size_t>(sites_) + static_cast<std::size_t>(k)];
  }

  int sites_;
  int particles_;
  std::size_t size_;
  std::vector<int> occupations_;       // row-major size_ x sites_
  std::vector<std::uint64_t> binom_;   // C(n, k), n <= N+L-1, k < L
};

FockBasis enumerate_basis(int sites, int particles,
                          std::size_t dimension_cap = kDefaultDimensionCap);

struct HopResult {
  FockState state;
  double amplitude = 0.0;  // 0 marks the annihilated (vacuum-site) case
};

/// Matrix element of a^dagger_to a_from acting on |state>. For from == to
/// this is the number operator.
HopResult apply_hop(const FockState& state, int to, int from);

}  // namespace mottscope
