#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mottscope/errors.hpp"
#include "mottscope/harness.hpp"
#include "mottscope/sce.hpp"

using namespace mottscope;
namespace hs = mottscope::harness;
namespace fs = std::filesystem;

namespace {

std::string csv(const std::vector<hs::ResultRow>& rows) {
  std::ostringstream out;
  hs::write_csv(out, rows);
  return out.str();
}

hs::ScanPlan small_plan() {
  hs::ScanPlan p;
  p.sites = {4, 5};
  p.u_over_j = {3.0, 30.0};
  p.theta = {0.4, 0.99};
  p.ein_er = {0.3, 2.0};
  p.methods = {Method::exact, Method::exact_elastic, Method::sce, Method::sce_large_l, Method::mf};
  p.gap_orders = {1, 2};
  return p;
}

CrossSectionRecord point(Method m, double value) {
  CrossSectionRecord r;
  r.method = m;
  r.value = value;
  r.sites = 6;
  r.filling = 1;
  r.particles = 6;
  r.u_over_j = 100.0;
  r.theta = 0.99;
  r.ein_er = 2.0;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Axis, ListsAndRanges) {
  EXPECT_EQ(hs::parse_axis("1,2.5, 4"), (std::vector<double>{1.0, 2.5, 4.0}));
  const auto lin = hs::parse_axis("0:1:5");
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_DOUBLE_EQ(lin[2], 0.5);
  EXPECT_EQ(lin.back(), 1.0);
  const auto lg = hs::parse_axis("5:200:24:log");
  ASSERT_EQ(lg.size(), 24u);
  EXPECT_DOUBLE_EQ(lg.front(), 5.0);
  EXPECT_NEAR(lg.back(), 200.0, 1e-12);
  EXPECT_NEAR(lg[1] / lg[0], lg[2] / lg[1], 1e-12);
  EXPECT_EQ(hs::parse_int_axis("4,6,8"), (std::vector<int>{4, 6, 8}));
  for (const char* bad : {"", "a", "1:2", "1:2:0", "0:3:3:log", "1:2:3:cubic", "1,,2"})
    EXPECT_THROW(hs::parse_axis(bad), ValidationError) << bad;
  EXPECT_THROW(hs::parse_int_axis("1.5"), ValidationError);
}

TEST(Plan, EmptyAxesRejected) {
  auto p = small_plan();
  p.u_over_j.clear();
  EXPECT_THROW(hs::validate_plan(p), ValidationError);
  EXPECT_THROW(hs::run_scan(p), ValidationError);
  p = small_plan();
  p.methods.clear();
  EXPECT_THROW(hs::validate_plan(p), ValidationError);
  p = small_plan();
  p.jobs = 0;
  EXPECT_THROW(hs::validate_plan(p), ValidationError);
}

TEST(Scan, RowOrderAndCount) {
  const auto p = small_plan();
  const auto rows = hs::run_scan(p);
  // per (L, U, θ, E_in): exact, exact_elastic, sce x2, sce_largeL, mf
  ASSERT_EQ(rows.size(), 2u * 2 * 2 * 2 * 6);
  EXPECT_EQ(rows[0].record.method, Method::exact);
  EXPECT_EQ(rows[2].record.method, Method::sce);
  EXPECT_EQ(rows[2].record.gap_order, 1);
  EXPECT_EQ(rows[3].record.gap_order, 2);
  EXPECT_EQ(rows[5].record.method, Method::mf);
  EXPECT_EQ(rows[6].record.ein_er, 2.0);
  EXPECT_EQ(rows.back().record.sites, 5);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_GE(r.record.value, 0.0);
  }
}

TEST(Scan, ByteIdenticalAcrossJobCounts) {
  auto p = small_plan();
  const auto one = csv(hs::run_scan(p));
  p.jobs = 4;
  EXPECT_EQ(csv(hs::run_scan(p)), one);
  EXPECT_EQ(csv(hs::run_scan(p)), one);
}

TEST(Scan, CachedEqualsCold) {
  const auto dir = fs::path(::testing::TempDir()) / "mottscope_scan_cache";
  fs::remove_all(dir);
  auto p = small_plan();
  const auto cold = csv(hs::run_scan(p));
  p.cache_dir = dir.string();
  EXPECT_EQ(csv(hs::run_scan(p)), cold);
  EXPECT_FALSE(fs::is_empty(dir));
  EXPECT_EQ(csv(hs::run_scan(p)), cold);
}

TEST(Scan, PerPointErrorsDoNotStopTheScan) {
  hs::ScanPlan p;
  p.sites = {2, 4};
  p.u_over_j = {5.0};
  p.methods = {Method::sce};
  p.gap_orders = {2};
  p.dimension_cap = 30;
  const auto rows = hs::run_scan(p);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].error.empty());
  p.methods = {Method::exact};
  p.sites = {8};
  const auto capped = hs::run_scan(p);
  ASSERT_EQ(capped.size(), 1u);
  EXPECT_FALSE(capped[0].error.empty());
  const auto text = csv(capped);
  EXPECT_NE(text.find(",exact,0,,"), std::string::npos);
}

TEST(Compare, Examples) {
  const auto same = hs::compare(point(Method::exact, 0.01), point(Method::sce, 0.01));
  EXPECT_EQ(same.delta_ics, 0.0);
  EXPECT_TRUE(same.defined);
  EXPECT_NEAR(hs::compare(point(Method::exact, 0.01), point(Method::sce, 0.009)).delta_ics, 0.1, 1e-12);
  const auto undef = hs::compare(point(Method::exact, 0.0), point(Method::sce, 0.009));
  EXPECT_FALSE(undef.defined);
  auto other = point(Method::sce, 0.01);
  other.u_over_j = 50.0;
  EXPECT_THROW(hs::compare(point(Method::exact, 0.01), other), ValidationError);
}

TEST(Compare, ScaledCurvesNearlyCoincide) {
  // Δ_ICS at equal U/U_c for several fillings, L = 4.
  std::vector<double> deltas;
  for (int nu : {1, 2}) {
    const double uc = sce::gap_and_critical(nu).u_over_j_c();
    hs::ScanPlan p;
    p.sites = {4};
    p.fillings = {nu};
    p.u_over_j = {8.0 * uc};
    p.methods = {Method::exact, Method::sce};
    const auto rows = hs::run_scan(p);
    ASSERT_EQ(rows.size(), 2u);
    deltas.push_back(hs::compare(rows[0].record, rows[1].record).delta_ics);
  }
  EXPECT_LT(std::abs(deltas[0] - deltas[1]), 0.5 * std::max(deltas[0], deltas[1]));
}

TEST(Critical, Report) {
  const auto rows = hs::critical_points_report({1, 2, 3});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].sce_j_c, 0.215, 5e-4);
  EXPECT_NEAR(rows[0].sce_u_c, 3.0 / (std::sqrt(7.0) - 2.0), 1e-9);
  EXPECT_NEAR(rows[0].mf_u_c, 11.66, 0.01);
  EXPECT_NEAR(rows[1].sce_j_c, 0.125, 1e-12);
  EXPECT_EQ(rows[0].dmrg_j_c.value(), 0.305);
  EXPECT_EQ(rows[1].dmrg_j_c.value(), 0.180);
  EXPECT_FALSE(rows[2].dmrg_j_c.has_value());
}

TEST(Writers, CsvHeaderAndFormatting) {
  std::vector<hs::ResultRow> rows(1);
  rows[0].record = point(Method::sce, 1.0 / 3.0);
  rows[0].record.gap_order = 2;
  rows[0].record.channel_count = 30;
  rows[0].record.add_warning("a");
  rows[0].record.add_warning("b");
  const auto text = csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "L,nu,N,u_over_j,theta,ein_er,method,gap_order,value,channel_count,warning,error");
  EXPECT_NE(text.find("6,1,6,1.00000000000e+02,9.90000000000e-01,2.00000000000e+00,sce,2,3.33333333333e-01,30,a;b,"),
            std::string::npos);
  rows[0].error = "bad, \"quoted\"";
  EXPECT_NE(csv(rows).find("\"bad, \"\"quoted\"\"\""), std::string::npos);
  EXPECT_EQ(hs::format_double(-2.5), "-2.50000000000e+00");
}

TEST(Writers, JsonMirrorsRows) {
  const auto rows = hs::run_scan(small_plan());
  std::ostringstream out;
  hs::write_json(out, rows);
  const auto j = nlohmann::json::parse(out.str());
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), rows.size());
  EXPECT_EQ(j[0]["method"], "exact");
  EXPECT_EQ(j[0]["L"], 4);
  EXPECT_NEAR(j[0]["value"].get<double>(), rows[0].record.value, 1e-11 * rows[0].record.value);
  for (const auto& row : j) EXPECT_FALSE(row.is_structured() && row.begin()->is_object());
}

TEST(Presets, MatchFigurePlans) {
  const auto d = hs::decay_preset();
  EXPECT_EQ(d.sites, (std::vector<int>{4, 6, 8}));
  EXPECT_EQ(d.u_over_j.size(), 24u);
  EXPECT_DOUBLE_EQ(d.u_over_j.front(), 5.0);
  EXPECT_NEAR(d.u_over_j.back(), 200.0, 1e-9);
  const auto a = hs::angular_preset();
  EXPECT_EQ(a.ein_er, (std::vector<double>{2.73, 0.6825, 0.273, 0.1365, 0.06825}));
  EXPECT_EQ(a.gap_orders, (std::vector<int>{1, 2}));
  EXPECT_NEAR(a.theta.back(), std::acos(-1.0) / 2, 1e-15);
}

#ifdef MOTTSCOPE_CLI
namespace {

int run(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(MOTTSCOPE_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Cli, Subcommands) {
  const auto dir = fs::path(::testing::TempDir()) / "mottscope_cli";
  fs::create_directories(dir);
  const auto out = dir / "out.txt";
  ASSERT_EQ(run("exact --sites 4 --u-over-j 10 --ein 0.5", out), 0);
  EXPECT_EQ(slurp(out).rfind("L,nu,N,", 0), 0u);
  ASSERT_EQ(run("sce --sites 6 --u-over-j 20,40 --gap-order 1,2 --format json", out), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(out)).size(), 4u);
  ASSERT_EQ(run("sce --large-l --u-over-j 40", out), 0);
  EXPECT_NE(slurp(out).find("sce_largeL"), std::string::npos);
  ASSERT_EQ(run("mf --u-over-j 11 --lambda-source iterative", out), 0);
  EXPECT_NE(slurp(out).find(",mf,"), std::string::npos);
  ASSERT_EQ(run("compare --sites 4 --u-over-j 50", out), 0);
  EXPECT_NE(slurp(out).find("delta_ics"), std::string::npos);
  ASSERT_EQ(run("critical --filling 1,2", out), 0);
  EXPECT_NE(slurp(out).find("3.05000000000e-01"), std::string::npos);
}

TEST(Cli, ErrorsAndConfig) {
  const auto dir = fs::path(::testing::TempDir()) / "mottscope_cli";
  fs::create_directories(dir);
  const auto out = dir / "err.txt";
  EXPECT_EQ(run("exact --u-over-j ''", out), 2);
  EXPECT_EQ(run("exact --sites 4 --ein -1", out), 2);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# test\nsites = 4\nu_over_j = 7\n";
  ASSERT_EQ(run("exact --config " + cfg.string() + " --ein 0.7", out), 0);
  EXPECT_NE(slurp(out).find("4,1,4,7.00000000000e+00"), std::string::npos);
  std::ofstream(cfg) << "colour = blue\n";
  EXPECT_EQ(run("exact --config " + cfg.string(), out), 2);
}

TEST(Cli, DeterministicAcrossJobs) {
  const auto dir = fs::path(::testing::TempDir()) / "mottscope_cli";
  fs::create_directories(dir);
  const std::string args = "scan --sites 4,5 --u-over-j 2:40:4:log --theta 0.5,0.99 --methods exact,sce,mf";
  ASSERT_EQ(run(args + " --jobs 1", dir / "a.csv"), 0);
  ASSERT_EQ(run(args + " --jobs 3", dir / "b.csv"), 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  const auto cache = dir / "cache";
  fs::remove_all(cache);
  ASSERT_EQ(run(args + " --cache-dir " + cache.string(), dir / "c.csv"), 0);
  ASSERT_EQ(run(args + " --cache-dir " + cache.string(), dir / "d.csv"), 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "c.csv"));
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "d.csv"));
}
#endif
