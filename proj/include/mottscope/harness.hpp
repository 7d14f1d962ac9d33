#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mottscope/fock.hpp"
#include "mottscope/meanfield.hpp"
#include "mottscope/scatter.hpp"
#include "mottscope/spectrum.hpp"
#include "mottscope/spectrum_cache.hpp"

namespace mottscope::harness {

/// Cartesian scan over (L, ν, U/J, θ, E_in) and methods. Rows are emitted in
/// that nesting order, methods innermost, gap orders after sce.
struct ScanPlan {
  std::vector<int> sites{8};
  std::vector<int> fillings{1};
  std::vector<double> u_over_j;
  std::vector<double> theta{0.99};
  std::vector<double> ein_er{2.0};
  std::vector<Method> methods{Method::exact};
  std::vector<int> gap_orders{1};
  std::optional<int> particles;  // replaces ν L for the exact methods
  double v0_er = kDefaultLatticeDepth;
  double j_er = kDefaultTunneling;
  double mass_ratio = 1.0;
  mf::LambdaSource lambda_source = mf::LambdaSource::perturbative;
  std::string cache_dir;  // empty: no cache
  int jobs = 1;
  std::size_t dimension_cap = kDefaultDimensionCap;
};

/// Throws ValidationError for empty axes or unusable values.
void validate_plan(const ScanPlan& plan);

struct ResultRow {
  CrossSectionRecord record;
  std::string error;  // empty on success
};

/// One row per grid point and method. Spectra are computed once per
/// (L, N, U/J), in parallel over those units, and reused for every θ and
/// E_in. Per-point failures land in the error column.
std::vector<ResultRow> run_scan(const ScanPlan& plan);

/// Energies and density matrix elements for one (L, N, U/J), through the
/// cache when one is given.
DensityResponse compute_response(int sites, int particles, double u_over_j, double j_er,
                                 std::size_t dimension_cap, const SpectrumCache* cache,
                                 Execution exec = Execution::parallel);

/// "a,b,c" or "start:stop:count[:log|:lin]".
std::vector<double> parse_axis(const std::string& text);
std::vector<int> parse_int_axis(const std::string& text);

struct ComparisonRecord {
  CrossSectionRecord exact;
  CrossSectionRecord sce;
  double delta_ics = 0.0;  // |exact - sce| / exact
  bool defined = true;     // false when exact < 1e-30
};

/// Throws ValidationError when the two records describe different points.
ComparisonRecord compare(const CrossSectionRecord& exact, const CrossSectionRecord& sce);

struct CriticalRow {
  int nu = 1;
  double sce_j_c = 0.0;
  double sce_u_c = 0.0;
  double mf_j_c = 0.0;
  double mf_u_c = 0.0;
  std::optional<double> dmrg_j_c;  // literature reference, ν = 1, 2 only
};

std::vector<CriticalRow> critical_points_report(const std::vector<int>& nu_list);

/// Fixed 12-significant-digit rendering shared by all writers.
std::string format_double(double x);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const std::vector<ResultRow>& rows);
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRecord>& rows);
void write_comparison_json(std::ostream& out, const std::vector<ComparisonRecord>& rows);
void write_critical_csv(std::ostream& out, const std::vector<CriticalRow>& rows);
void write_critical_json(std::ostream& out, const std::vector<CriticalRow>& rows);

/// Decay with interaction: ν = 1, L ∈ {4, 6, 8}, U/J log-spaced 5..200,
/// θ = 0.99, E_in = 2 E_r, methods exact and sce_largeL.
ScanPlan decay_preset();
/// Angular dependence at low energy: L = 8, ν = 1, U/J = 10, θ from 0 to
/// π/2, five incoming energies, exact and sce at gap orders 1 and 2.
ScanPlan angular_preset();

}  // namespace mottscope::harness
