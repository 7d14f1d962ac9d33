#include "mottscope/harness.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mottscope/errors.hpp"
#include "mottscope/hamiltonian.hpp"
#include "mottscope/sce.hpp"

namespace mottscope::harness {

namespace {

using ojson = nlohmann::ordered_json;

struct Unit {
  int sites;
  int filling;
  double u_over_j;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

CrossSectionRecord echo(Method m, const LatticeSpec& lattice, const ProbeSpec& probe, double u_over_j) {
  CrossSectionRecord rec;
  rec.method = m;
  rec.sites = lattice.sites;
  rec.filling = lattice.filling;
  rec.particles = lattice.particle_number();
  rec.u_over_j = u_over_j;
  rec.theta = probe.theta;
  rec.ein_er = probe.ein_er;
  return rec;
}

bool needs_spectrum(const ScanPlan& plan) {
  for (Method m : plan.methods)
    if (m == Method::exact || m == Method::exact_elastic) return true;
  return false;
}

std::vector<ResultRow> run_unit(const ScanPlan& plan, const Unit& unit, const SpectrumCache* cache) {
  LatticeSpec lattice;
  lattice.sites = unit.sites;
  lattice.filling = unit.filling;
  lattice.v0_er = plan.v0_er;
  lattice.j_er = plan.j_er;
  lattice.particles = plan.particles;
  const InteractionSpec interaction{unit.u_over_j};

  std::optional<DensityResponse> response;
  std::string spectrum_error;
  if (needs_spectrum(plan)) {
    try {
      validate_lattice(lattice);
      validate_interaction(interaction);
      response = compute_response(unit.sites, lattice.particle_number(), unit.u_over_j, plan.j_er,
                                  plan.dimension_cap, cache);
    } catch (const std::exception& e) {
      spectrum_error = e.what();
    }
  }

  std::vector<ResultRow> rows;
  for (double theta : plan.theta) {
    for (double ein : plan.ein_er) {
      const ProbeSpec probe{ein, plan.mass_ratio, theta};
      for (Method m : plan.methods) {
        const std::vector<int> orders = m == Method::sce ? plan.gap_orders : std::vector<int>{0};
        for (int order : orders) {
          ResultRow row;
          row.record = echo(m, lattice, probe, unit.u_over_j);
          row.record.gap_order = order;
          try {
            validate(lattice, probe, interaction);
            switch (m) {
              case Method::exact:
              case Method::exact_elastic:
                if (!response) throw std::runtime_error(spectrum_error);
                row.record = m == Method::exact ? inelastic_cs_exact(*response, lattice, probe)
                                                : elastic_cs_exact(*response, lattice, probe);
                break;
              case Method::sce:
                row.record = sce::inelastic_cs_sce(lattice, probe, interaction, order);
                break;
              case Method::sce_large_l:
                row.record = sce::large_l_cs(lattice.filling, probe, lattice.v0_er, interaction, lattice.j_er);
                row.record.sites = lattice.sites;
                row.record.particles = lattice.particle_number();
                break;
              case Method::mf:
                row.record = mf::inelastic_cs_mf(lattice, probe, interaction, plan.lambda_source);
                break;
            }
            row.record.u_over_j = unit.u_over_j;
          } catch (const std::exception& e) {
            row.error = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

ojson record_json(const ResultRow& row) {
  const auto& r = row.record;
  ojson o;
  o["L"] = r.sites;
  o["nu"] = r.filling;
  o["N"] = r.particles;
  o["u_over_j"] = r.u_over_j;
  o["theta"] = r.theta;
  o["ein_er"] = r.ein_er;
  o["method"] = std::string(method_tag(r.method));
  o["gap_order"] = r.gap_order;
  if (row.error.empty()) o["value"] = r.value;
  else o["value"] = nullptr;
  o["channel_count"] = r.channel_count;
  o["warning"] = r.warning;
  o["error"] = row.error;
  return o;
}

}  // namespace

void validate_plan(const ScanPlan& plan) {
  if (plan.sites.empty()) throw ValidationError("empty L axis");
  if (plan.fillings.empty()) throw ValidationError("empty filling axis");
  if (plan.u_over_j.empty()) throw ValidationError("empty U/J axis");
  if (plan.theta.empty()) throw ValidationError("empty theta axis");
  if (plan.ein_er.empty()) throw ValidationError("empty E_in axis");
  if (plan.methods.empty()) throw ValidationError("no methods selected");
  if (plan.gap_orders.empty()) throw ValidationError("no gap orders selected");
  for (int g : plan.gap_orders)
    if (g != 1 && g != 2) throw ValidationError("gap order must be 1 or 2");
  if (plan.jobs < 1) throw ValidationError("jobs must be >= 1");
  for (int l : plan.sites)
    if (l < 1) throw ValidationError("L must be >= 1");
  for (int nu : plan.fillings)
    if (nu < 0) throw ValidationError("filling must be >= 0");
  if (plan.particles && *plan.particles < 0) throw ValidationError("particle number must be >= 0");
  for (double u : plan.u_over_j)
    if (!(u >= 0.0) || !std::isfinite(u)) throw ValidationError("U/J must be finite and >= 0");
  for (double t : plan.theta)
    if (!(t > -kPi && t <= kPi)) throw ValidationError("theta must lie in (-pi, pi]");
  for (double e : plan.ein_er)
    if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("E_in must be finite and > 0");
  if (!(plan.mass_ratio > 0.0)) throw ValidationError("mass ratio must be > 0");
  if (!(plan.v0_er > 0.0)) throw ValidationError("V0 must be > 0");
  if (!(plan.j_er > 0.0)) throw ValidationError("J must be > 0");
}

DensityResponse compute_response(int sites, int particles, double u_over_j, double j_er,
                                 std::size_t dimension_cap, const SpectrumCache* cache, Execution exec) {
  // Always diagonalise at the rounded key so cached and cold runs agree.
  const double key = cache_key_value(u_over_j);
  if (cache) {
    if (auto hit = cache->load(sites, particles, key, j_er)) return *std::move(hit);
  }
  const FockBasis basis(sites, particles, dimension_cap);
  LatticeSpec lattice;
  lattice.sites = sites;
  lattice.j_er = j_er;
  lattice.particles = particles;
  const auto h = build_hamiltonian(basis, InteractionSpec{key}, lattice);
  const auto spectrum = diagonalize(h, EigenBackend::lapack, dimension_cap);
  auto response = density_response(spectrum, basis, key, exec);
  if (cache) cache->store(response);
  return response;
}

std::vector<ResultRow> run_scan(const ScanPlan& plan) {
  validate_plan(plan);
  std::optional<SpectrumCache> cache;
  if (!plan.cache_dir.empty()) cache.emplace(plan.cache_dir);

  std::vector<Unit> units;
  for (int l : plan.sites)
    for (int nu : plan.fillings)
      for (double u : plan.u_over_j) units.push_back({l, nu, u});

  std::vector<std::vector<ResultRow>> per_unit(units.size());
  const auto count = static_cast<std::ptrdiff_t>(units.size());
  const SpectrumCache* cache_ptr = cache ? &*cache : nullptr;
#pragma omp parallel for schedule(dynamic, 1) num_threads(plan.jobs)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    per_unit[static_cast<std::size_t>(i)] = run_unit(plan, units[static_cast<std::size_t>(i)], cache_ptr);

  std::vector<ResultRow> rows;
  for (auto& block : per_unit)
    for (auto& row : block) rows.push_back(std::move(row));
  return rows;
}

std::vector<double> parse_axis(const std::string& text) {
  if (text.empty()) throw ValidationError("empty axis");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4) throw ValidationError("range must be start:stop:count[:log|:lin]");
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double count_d = parse_number(parts[2]);
    const bool log = parts.size() == 4 && parts[3] == "log";
    if (parts.size() == 4 && !log && parts[3] != "lin") throw ValidationError("range spacing must be log or lin");
    if (count_d < 1 || count_d != std::floor(count_d)) throw ValidationError("range count must be a positive integer");
    if (log && (start <= 0.0 || stop <= 0.0)) throw ValidationError("log range needs positive bounds");
    const int count = static_cast<int>(count_d);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      out.push_back(log ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                        : start + t * (stop - start));
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p));
  return out;
}

std::vector<int> parse_int_axis(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_axis(text)) {
    if (v != std::floor(v)) throw ValidationError("expected an integer, got " + format_double(v));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

ComparisonRecord compare(const CrossSectionRecord& exact, const CrossSectionRecord& sce) {
  if (exact.sites != sce.sites || exact.filling != sce.filling || exact.u_over_j != sce.u_over_j ||
      exact.theta != sce.theta || exact.ein_er != sce.ein_er)
    throw ValidationError("compared records describe different parameters");
  ComparisonRecord c{exact, sce, 0.0, true};
  if (exact.value < 1e-30) {
    c.defined = false;
    c.delta_ics = std::nan("");
  } else {
    c.delta_ics = std::abs(exact.value - sce.value) / exact.value;
  }
  return c;
}

std::vector<CriticalRow> critical_points_report(const std::vector<int>& nu_list) {
  std::vector<CriticalRow> rows;
  for (int nu : nu_list) {
    CriticalRow r;
    r.nu = nu;
    r.sce_j_c = sce::gap_and_critical(nu).j_tilde_c;
    r.sce_u_c = 1.0 / r.sce_j_c;
    r.mf_j_c = mf::critical_j(nu);
    r.mf_u_c = 1.0 / r.mf_j_c;
    if (nu == 1) r.dmrg_j_c = 0.305;
    if (nu == 2) r.dmrg_j_c = 0.180;
    rows.push_back(r);
  }
  return rows;
}

std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "L,nu,N,u_over_j,theta,ein_er,method,gap_order,value,channel_count,warning,error\n";
  for (const auto& row : rows) {
    const auto& r = row.record;
    out << r.sites << ',' << r.filling << ',' << r.particles << ',' << format_double(r.u_over_j) << ','
        << format_double(r.theta) << ',' << format_double(r.ein_er) << ',' << method_tag(r.method) << ','
        << r.gap_order << ',' << (row.error.empty() ? format_double(r.value) : "") << ',' << r.channel_count
        << ',' << csv_field(r.warning) << ',' << csv_field(row.error) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& row : rows) arr.push_back(record_json(row));
  out << arr.dump(2) << '\n';
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRecord>& rows) {
  out << "L,nu,N,u_over_j,theta,ein_er,gap_order,exact,sce,delta_ics,defined\n";
  for (const auto& c : rows) {
    const auto& e = c.exact;
    out << e.sites << ',' << e.filling << ',' << e.particles << ',' << format_double(e.u_over_j) << ','
        << format_double(e.theta) << ',' << format_double(e.ein_er) << ',' << c.sce.gap_order << ','
        << format_double(e.value) << ',' << format_double(c.sce.value) << ','
        << (c.defined ? format_double(c.delta_ics) : "") << ',' << (c.defined ? "true" : "false") << '\n';
  }
}

void write_comparison_json(std::ostream& out, const std::vector<ComparisonRecord>& rows) {
  ojson arr = ojson::array();
  for (const auto& c : rows) {
    ojson o;
    o["L"] = c.exact.sites;
    o["nu"] = c.exact.filling;
    o["N"] = c.exact.particles;
    o["u_over_j"] = c.exact.u_over_j;
    o["theta"] = c.exact.theta;
    o["ein_er"] = c.exact.ein_er;
    o["gap_order"] = c.sce.gap_order;
    o["exact"] = c.exact.value;
    o["sce"] = c.sce.value;
    if (c.defined) o["delta_ics"] = c.delta_ics;
    else o["delta_ics"] = nullptr;
    o["defined"] = c.defined;
    arr.push_back(o);
  }
  out << arr.dump(2) << '\n';
}

void write_critical_csv(std::ostream& out, const std::vector<CriticalRow>& rows) {
  out << "nu,sce_j_c,sce_u_c,mf_j_c,mf_u_c,dmrg_j_c\n";
  for (const auto& r : rows)
    out << r.nu << ',' << format_double(r.sce_j_c) << ',' << format_double(r.sce_u_c) << ','
        << format_double(r.mf_j_c) << ',' << format_double(r.mf_u_c) << ','
        << (r.dmrg_j_c ? format_double(*r.dmrg_j_c) : "") << '\n';
}

void write_critical_json(std::ostream& out, const std::vector<CriticalRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson o;
    o["nu"] = r.nu;
    o["sce_j_c"] = r.sce_j_c;
    o["sce_u_c"] = r.sce_u_c;
    o["mf_j_c"] = r.mf_j_c;
    o["mf_u_c"] = r.mf_u_c;
    if (r.dmrg_j_c) o["dmrg_j_c"] = *r.dmrg_j_c;
    else o["dmrg_j_c"] = nullptr;
    arr.push_back(o);
  }
  out << arr.dump(2) << '\n';
}

ScanPlan decay_preset() {
  ScanPlan p;
  p.sites = {4, 6, 8};
  p.fillings = {1};
  p.u_over_j = parse_axis("5:200:24:log");
  p.theta = {0.99};
  p.ein_er = {2.0};
  p.methods = {Method::exact, Method::sce_large_l};
  return p;
}

ScanPlan angular_preset() {
  ScanPlan p;
  p.sites = {8};
  p.fillings = {1};
  p.u_over_j = {10.0};
  p.theta = parse_axis("0:1.5707963267948966:31:lin");
  p.ein_er = {2.73, 0.6825, 0.273, 0.1365, 0.06825};
  p.methods = {Method::exact, Method::sce};
  p.gap_orders = {1, 2};
  return p;
}

}  // namespace mottscope::harness
