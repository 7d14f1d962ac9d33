#include "mottscope/spectrum_cache.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include <unistd.h>

namespace mottscope {

namespace {

static_assert(std::endian::native == std::endian::little, "cache format assumes a little-endian host");

constexpr char kMagic[8] = {'M', 'O', 'T', 'T', 'S', 'P', 'C', '1'};

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
bool get(std::istream& in, T& value) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&value), sizeof(T)));
}

}  // namespace

double cache_key_value(double u_over_j) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", u_over_j);
  return std::strtod(buf, nullptr);
}

std::string cache_file_name(int sites, int particles, double u_over_j) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "spectrum_L%d_N%d_u%.11e.bin", sites, particles, u_over_j);
  return buf;
}

SpectrumCache::SpectrumCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<DensityResponse> SpectrumCache::load(int sites, int particles, double u_over_j,
                                                   double j_er) const {
  const double key = cache_key_value(u_over_j);
  std::ifstream in(dir_ / cache_file_name(sites, particles, key), std::ios::binary);
  if (!in) return std::nullopt;

  char magic[8];
  std::uint32_t l = 0, n = 0, cols = 0;
  std::uint64_t dim = 0;
  double stored_key = 0.0;
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) return std::nullopt;
  if (!get(in, l) || !get(in, n) || !get(in, dim) || !get(in, cols) || !get(in, stored_key))
    return std::nullopt;
  if (static_cast<int>(l) != sites || static_cast<int>(n) != particles || cols != l || stored_key != key)
    return std::nullopt;

  DensityResponse r;
  r.sites = sites;
  r.particles = particles;
  r.u_over_j = key;
  r.energy_unit_er = j_er;
  r.energies_j.resize(static_cast<Eigen::Index>(dim));
  if (!in.read(reinterpret_cast<char*>(r.energies_j.data()), static_cast<std::streamsize>(dim * sizeof(double))))
    return std::nullopt;
  std::vector<double> rows(dim * cols);
  if (!in.read(reinterpret_cast<char*>(rows.data()), static_cast<std::streamsize>(rows.size() * sizeof(double))))
    return std::nullopt;
  r.matrix_elements.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(cols));
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < cols; ++j)
      r.matrix_elements(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i * cols + j];
  return r;
}

void SpectrumCache::store(const DensityResponse& r) const {
  const double key = cache_key_value(r.u_over_j);
  const auto final_path = dir_ / cache_file_name(r.sites, r.particles, key);
  auto tmp_path = final_path;
  tmp_path += ".tmp" + std::to_string(::getpid()) + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(&r));
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    out.write(kMagic, 8);
    put(out, static_cast<std::uint32_t>(r.sites));
    put(out, static_cast<std::uint32_t>(r.particles));
    put(out, static_cast<std::uint64_t>(r.dim()));
    put(out, static_cast<std::uint32_t>(r.matrix_elements.cols()));
    put(out, key);
    out.write(reinterpret_cast<const char*>(r.energies_j.data()),
              static_cast<std::streamsize>(r.dim() * sizeof(double)));
    for (Eigen::Index i = 0; i < r.matrix_elements.rows(); ++i)
      for (Eigen::Index j = 0; j < r.matrix_elements.cols(); ++j) put(out, r.matrix_elements(i, j));
    if (!out) throw std::runtime_error("failed writing cache entry " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path);
}

}  // namespace mottscope
