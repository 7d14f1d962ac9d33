#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mottscope/spectrum.hpp"

namespace mottscope {

// On-disk layout (all little-endian):
//   char[8]  magic "MOTTSPC1"
//   u32      sites, u32 particles, u64 dim, u32 columns (= sites)
//   f64      u_over_j key (rounded to 12 significant digits)
//   f64[dim]           energies in units of J, ascending
//   f64[dim * columns] <phi_n| n_j |phi_0>, row-major in n
// Energies are stored in units of J so one file serves any J/E_r.

/// U/J rounded to 12 significant digits.
double cache_key_value(double u_over_j);
std::string cache_file_name(int sites, int particles, double u_over_j);

class SpectrumCache {
 public:
  explicit SpectrumCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  /// Missing, truncated or mismatching files read as a miss.
  std::optional<DensityResponse> load(int sites, int particles, double u_over_j, double j_er) const;

  /// Writes to a temporary name and renames, so readers never observe a
  /// partially written entry.
  void store(const DensityResponse& response) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace mottscope
