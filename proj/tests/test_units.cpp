#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "mottscope/errors.hpp"
#include "mottscope/units.hpp"

using namespace mottscope;

TEST(Units, ParticleNumberFromFilling) {
  LatticeSpec lat;
  lat.sites = 8;
  lat.filling = 1;
  const auto cfg = validate(lat, ProbeSpec{}, InteractionSpec{});
  EXPECT_EQ(cfg.particles, 8);
}

TEST(Units, DefaultTunnelingAtDefaultDepth) {
  LatticeSpec lat;
  EXPECT_DOUBLE_EQ(lat.v0_er, 15.0);
  EXPECT_DOUBLE_EQ(lat.j_er, 6.5e-3);
}

TEST(Units, DerivedQuantities) {
  LatticeSpec lat;
  ProbeSpec probe{2.0, 1.0, 0.99};
  const auto cfg = validate(lat, probe, InteractionSpec{10.0});
  EXPECT_DOUBLE_EQ(cfg.u_er, 10.0 * 6.5e-3);
  EXPECT_NEAR(cfg.kappa_el_d, -kPi * std::sin(0.99) * std::sqrt(2.0), 1e-15);
}

TEST(Units, RejectsSingleSite) {
  LatticeSpec lat;
  lat.sites = 1;
  try {
    validate(lat, ProbeSpec{}, InteractionSpec{});
    FAIL();
  } catch (const RangeError& e) {
    EXPECT_EQ(e.field(), "sites");
  }
}

TEST(Units, RangeErrorsNameTheField) {
  auto field_of = [](auto mutate) {
    LatticeSpec lat;
    ProbeSpec probe;
    InteractionSpec u;
    mutate(lat, probe, u);
    try {
      validate(lat, probe, u);
    } catch (const RangeError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of([](auto& l, auto&, auto&) { l.filling = 0; }), "filling");
  EXPECT_EQ(field_of([](auto& l, auto&, auto&) { l.v0_er = 0.0; }), "v0");
  EXPECT_EQ(field_of([](auto& l, auto&, auto&) { l.j_er = -1.0; }), "j_er");
  EXPECT_EQ(field_of([](auto&, auto& p, auto&) { p.ein_er = 0.0; }), "ein");
  EXPECT_EQ(field_of([](auto&, auto& p, auto&) { p.mass_ratio = 0.0; }), "mass_ratio");
  EXPECT_EQ(field_of([](auto&, auto& p, auto&) { p.theta = -kPi; }), "theta");
  EXPECT_EQ(field_of([](auto&, auto& p, auto&) { p.theta = kPi; }), "none");
  EXPECT_EQ(field_of([](auto&, auto&, auto& u) { u.u_over_j = -1.0; }), "u_over_j");
  EXPECT_EQ(field_of([](auto&, auto&, auto& u) { u.u_over_j = 0.0; }), "none");
}

TEST(Units, InteractionRoundTrip) {
  for (double u : {0.0, 1e-3, 3.7, 10.0, 123.456, 1e6}) {
    const InteractionSpec in{u};
    const double u_er = in.u_er(kDefaultTunneling);
    EXPECT_NEAR(u_over_j_from_er(u_er, kDefaultTunneling), u, 4 * std::numeric_limits<double>::epsilon() * u);
    EXPECT_NEAR(InteractionSpec{u_over_j_from_er(u_er, kDefaultTunneling)}.u_er(kDefaultTunneling), u_er,
                4 * std::numeric_limits<double>::epsilon() * u_er);
  }
}

TEST(Config, ParsesKeyValueText) {
  const auto cfg = parse_config_text("# comment\nsites = 6\n\n theta=0.5  # trailing\nu_over_j = 40\n");
  LatticeSpec lat;
  ProbeSpec probe;
  InteractionSpec u;
  apply_config(cfg, lat, probe, u);
  EXPECT_EQ(lat.sites, 6);
  EXPECT_DOUBLE_EQ(probe.theta, 0.5);
  EXPECT_DOUBLE_EQ(u.u_over_j, 40.0);
}

TEST(Config, RejectsDuplicatesAndGarbage) {
  EXPECT_THROW(parse_config_text("sites = 4\nsites = 5\n"), ValidationError);
  EXPECT_THROW(parse_config_text("no equals sign\n"), ValidationError);
  LatticeSpec lat;
  ProbeSpec probe;
  InteractionSpec u;
  EXPECT_THROW(apply_config(parse_config_text("sites = four\n"), lat, probe, u), ValidationError);
}

TEST(Config, ReadsFile) {
  const std::string path = ::testing::TempDir() + "mottscope_cfg.txt";
  std::ofstream(path) << "ein = 0.273\nmass_ratio = 0.5\n";
  const auto cfg = read_config_file(path);
  EXPECT_EQ(cfg.at("ein"), "0.273");
  EXPECT_EQ(cfg.at("mass_ratio"), "0.5");
}
