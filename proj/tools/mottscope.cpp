// Command-line front end: cross sections, comparisons, scans and critical
// points as CSV or JSON tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mottscope/eigensolver.hpp"
#include "mottscope/errors.hpp"
#include "mottscope/harness.hpp"
#include "mottscope/units.hpp"

namespace ms = mottscope;
namespace hs = mottscope::harness;

namespace {

struct Options {
  std::string sites = "8";
  std::string filling = "1";
  std::string particles;
  std::string u_over_j = "10";
  std::string theta = "0.99";
  std::string ein = "2";
  std::string mass_ratio = "1";
  std::string v0 = "15";
  std::string j_er = "0.0065";
  std::string gap_order = "1";
  std::string lambda_source = "perturbative";
  std::string methods = "exact";
  std::string format = "csv";
  std::string out;
  std::string cache_dir;
  std::string config;
  std::string preset;
  int jobs = 1;
  bool large_l = false;
};

struct Bound {
  const char* key;
  CLI::Option* option;
  std::string* value;
};

std::vector<Bound> add_common(CLI::App* cmd, Options& o) {
  std::vector<Bound> b;
  b.push_back({"sites", cmd->add_option("--sites", o.sites, "lattice sites L (list)"), &o.sites});
  b.push_back({"filling", cmd->add_option("--filling", o.filling, "filling factor nu (list)"), &o.filling});
  b.push_back({"particles", cmd->add_option("--particles", o.particles, "particle number for the exact method"),
               &o.particles});
  b.push_back({"u_over_j", cmd->add_option("--u-over-j", o.u_over_j, "U/J list or start:stop:count[:log|:lin]"),
               &o.u_over_j});
  b.push_back({"theta", cmd->add_option("--theta", o.theta, "scattering angle in radians (list)"), &o.theta});
  b.push_back({"ein", cmd->add_option("--ein", o.ein, "incoming energy in E_r (list)"), &o.ein});
  b.push_back({"mass_ratio", cmd->add_option("--mass-ratio", o.mass_ratio, "probe/lattice particle mass ratio"),
               &o.mass_ratio});
  b.push_back({"v0", cmd->add_option("--v0", o.v0, "lattice depth in E_r"), &o.v0});
  b.push_back({"j_er", cmd->add_option("--j-er", o.j_er, "tunneling J in E_r"), &o.j_er});
  b.push_back({"format", cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"})),
               &o.format});
  b.push_back({"out", cmd->add_option("--out", o.out, "output file (default stdout)"), &o.out});
  b.push_back({"cache_dir", cmd->add_option("--cache-dir", o.cache_dir, "spectrum cache directory"), &o.cache_dir});
  cmd->add_option("--jobs", o.jobs, "worker threads over spectra")->check(CLI::PositiveNumber);
  cmd->add_option("--config", o.config, "key = value file; flags override it");
  return b;
}

void apply_config_file(const Options& o, const std::vector<Bound>& bound) {
  if (o.config.empty()) return;
  const auto cfg = ms::read_config_file(o.config);
  for (const auto& [key, value] : cfg) {
    bool known = false;
    for (const auto& b : bound) {
      if (key != b.key) continue;
      known = true;
      if (b.option->count() == 0) *b.value = value;
    }
    if (!known) throw ms::ValidationError("unknown config key '" + key + "'");
  }
}

double scalar(const std::string& text, const char* name) {
  const auto v = hs::parse_axis(text);
  if (v.size() != 1) throw ms::ValidationError(std::string(name) + " takes a single value");
  return v.front();
}

hs::ScanPlan make_plan(const Options& o) {
  hs::ScanPlan p;
  if (o.preset == "decay") p = hs::decay_preset();
  else if (o.preset == "angular") p = hs::angular_preset();
  else {
    p.sites = hs::parse_int_axis(o.sites);
    p.fillings = hs::parse_int_axis(o.filling);
    p.u_over_j = hs::parse_axis(o.u_over_j);
    p.theta = hs::parse_axis(o.theta);
    p.ein_er = hs::parse_axis(o.ein);
    p.gap_orders = hs::parse_int_axis(o.gap_order);
    p.methods.clear();
    std::string m;
    std::istringstream in(o.methods);
    while (std::getline(in, m, ',')) p.methods.push_back(ms::parse_method(m));
  }
  if (!o.particles.empty()) p.particles = static_cast<int>(scalar(o.particles, "--particles"));
  p.mass_ratio = scalar(o.mass_ratio, "--mass-ratio");
  p.v0_er = scalar(o.v0, "--v0");
  p.j_er = scalar(o.j_er, "--j-er");
  p.lambda_source = ms::mf::parse_lambda_source(o.lambda_source);
  p.jobs = o.jobs;
  p.cache_dir = o.cache_dir;
  if (p.cache_dir.empty())
    if (const char* env = std::getenv("MOTTSCOPE_CACHE")) p.cache_dir = env;
  return p;
}

template <class Writer>
void emit(const Options& o, Writer&& write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open " + o.out);
  write(f);
}

int run_rows(const Options& o, const hs::ScanPlan& plan) {
  const auto rows = hs::run_scan(plan);
  emit(o, [&](std::ostream& out) {
    if (o.format == "json") hs::write_json(out, rows);
    else hs::write_csv(out, rows);
  });
  return 0;
}

int run_compare(const Options& o, hs::ScanPlan plan) {
  plan.methods = {ms::Method::exact, ms::Method::sce};
  const auto rows = hs::run_scan(plan);
  std::vector<hs::ComparisonRecord> cmp;
  const hs::ResultRow* exact = nullptr;
  for (const auto& row : rows) {
    if (row.record.method == ms::Method::exact) {
      exact = &row;
      continue;
    }
    if (!exact || !exact->error.empty() || !row.error.empty()) {
      std::cerr << "skipping point L=" << row.record.sites << " U/J=" << row.record.u_over_j << ": "
                << (exact && !exact->error.empty() ? exact->error : row.error) << '\n';
      continue;
    }
    cmp.push_back(hs::compare(exact->record, row.record));
  }
  emit(o, [&](std::ostream& out) {
    if (o.format == "json") hs::write_comparison_json(out, cmp);
    else hs::write_comparison_csv(out, cmp);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ms::ensure_working_blas(argv);
  CLI::App app{"Matter-wave scattering cross sections of lattice bosons"};
  app.require_subcommand(1);

  std::map<std::string, Options> opts;
  std::map<std::string, std::vector<Bound>> bound;
  auto sub = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    bound[name] = add_common(cmd, opts[name]);
    return cmd;
  };

  auto* exact = sub("exact", "exact-diagonalization inelastic cross section");
  auto* sce = sub("sce", "strong-coupling inelastic cross section");
  bound["sce"].push_back({"gap_order",
                          sce->add_option("--gap-order", opts["sce"].gap_order, "1, 2 or a list"),
                          &opts["sce"].gap_order});
  sce->add_flag("--large-l", opts["sce"].large_l, "system-size independent limit");
  auto* mf = sub("mf", "mean-field inelastic cross section");
  bound["mf"].push_back({"lambda_source",
                         mf->add_option("--lambda-source", opts["mf"].lambda_source, "perturbative or iterative")
                             ->check(CLI::IsMember({"perturbative", "iterative"})),
                         &opts["mf"].lambda_source});
  auto* compare = sub("compare", "relative difference of exact and strong-coupling results");
  bound["compare"].push_back({"gap_order",
                              compare->add_option("--gap-order", opts["compare"].gap_order, "1 or 2"),
                              &opts["compare"].gap_order});
  auto* scan = sub("scan", "parameter scan over several methods");
  auto& so = opts["scan"];
  bound["scan"].push_back({"methods", scan->add_option("--methods", so.methods, "exact,exact_elastic,sce,sce_largeL,mf"),
                           &so.methods});
  bound["scan"].push_back({"gap_order", scan->add_option("--gap-order", so.gap_order, "1, 2 or a list"), &so.gap_order});
  bound["scan"].push_back({"lambda_source",
                           scan->add_option("--lambda-source", so.lambda_source, "perturbative or iterative")
                               ->check(CLI::IsMember({"perturbative", "iterative"})),
                           &so.lambda_source});
  scan->add_option("--preset", so.preset, "decay or angular")->check(CLI::IsMember({"decay", "angular"}));

  auto* critical = app.add_subcommand("critical", "critical interaction strengths per filling");
  std::string crit_filling = "1,2";
  std::string crit_format = "csv";
  std::string crit_out;
  critical->add_option("--filling", crit_filling, "filling factors (list)");
  critical->add_option("--format", crit_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  critical->add_option("--out", crit_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, o] : opts) {
      auto* cmd = app.get_subcommand(name);
      if (!cmd->parsed()) continue;
      apply_config_file(o, bound[name]);
      if (name == "exact") o.methods = "exact";
      if (name == "sce") o.methods = o.large_l ? "sce_largeL" : "sce";
      if (name == "mf") o.methods = "mf";
      auto plan = make_plan(o);
      if (name == "compare") return run_compare(o, plan);
      return run_rows(o, plan);
    }
    if (critical->parsed()) {
      Options o;
      o.format = crit_format;
      o.out = crit_out;
      const auto rows = hs::critical_points_report(hs::parse_int_axis(crit_filling));
      emit(o, [&](std::ostream& out) {
        if (o.format == "json") hs::write_critical_json(out, rows);
        else hs::write_critical_csv(out, rows);
      });
    }
  } catch (const ms::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ms::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  (void)exact;
  return 0;
}
