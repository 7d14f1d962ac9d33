#include "mottscope/scatter.hpp"

#include <cmath>
#include <complex>

#include "mottscope/errors.hpp"
#include "mottscope/kernels.hpp"
#include "mottscope/spectrum.hpp"

namespace mottscope {

namespace {

// Squared matrix elements below this are treated as symmetry zeros.
constexpr double kDarkChannel = 1e-24;

CrossSectionRecord echo(Method m, const DensityResponse& r, const LatticeSpec& lattice, const ProbeSpec& probe) {
  CrossSectionRecord rec;
  rec.method = m;
  rec.sites = r.sites;
  rec.filling = lattice.filling;
  rec.particles = r.particles;
  rec.u_over_j = r.u_over_j;
  rec.theta = probe.theta;
  rec.ein_er = probe.ein_er;
  return rec;
}

}  // namespace

std::string_view method_tag(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::exact_elastic: return "exact_elastic";
    case Method::sce: return "sce";
    case Method::sce_large_l: return "sce_largeL";
    case Method::mf: return "mf";
  }
  return "unknown";
}

Method parse_method(std::string_view tag) {
  for (Method m : {Method::exact, Method::exact_elastic, Method::sce, Method::sce_large_l, Method::mf})
    if (method_tag(m) == tag) return m;
  throw ValidationError("unknown method '" + std::string(tag) + "'");
}

void CrossSectionRecord::add_warning(std::string_view flag) {
  if (!warning.empty()) warning += ';';
  warning += flag;
}

double form_factor(double kappa_d, double v0_er) {
  return std::exp(-kappa_d * kappa_d / (4.0 * kPi * kPi * std::sqrt(v0_er)));
}

double elastic_kappa(const ProbeSpec& probe) {
  return -kPi * std::sin(probe.theta) * std::sqrt(probe.mass_ratio * probe.ein_er);
}

double interference(double kappa_d, double q_d, int sites) {
  const double half = 0.5 * (kappa_d - q_d);
  const double den = std::sin(half);
  const double l = static_cast<double>(sites);
  if (std::abs(den) < 1e-9) return l * l;
  const double num = std::sin(half * l);
  return num * num / (den * den);
}

Kinematics kinematics(std::span<const double> excitation_er, const ProbeSpec& probe) {
  Kinematics k;
  k.kappa_el_d = elastic_kappa(probe);
  k.open.resize(excitation_er.size());
  k.kappa_d.assign(excitation_er.size(), 0.0);
  for (std::size_t n = 0; n < excitation_er.size(); ++n) {
    const double r = 1.0 - excitation_er[n] / probe.ein_er;
    k.open[n] = r >= 0.0;
    if (!k.open[n]) continue;
    k.kappa_d[n] = k.kappa_el_d * std::sqrt(r);
    if (n != 0) ++k.open_excited;
  }
  return k;
}

CrossSectionRecord inelastic_cs_exact(const DensityResponse& response, const LatticeSpec& lattice,
                                      const ProbeSpec& probe, Execution exec) {
  auto rec = echo(Method::exact, response, lattice, probe);
  const auto excitation = response.excitation_er();
  const auto kin = kinematics(excitation, probe);

  const ChannelInputs in{excitation, &response.matrix_elements, kin.kappa_el_d, probe.ein_er, lattice.v0_er};
  const auto terms = exec == Execution::parallel ? kernels::parallel::inelastic_channel_terms(in)
                                                 : kernels::serial::inelastic_channel_terms(in);
  double total = 0.0;
  for (double t : terms) total += t;  // fixed order: results do not depend on thread count

  rec.channel_count = kin.open_excited;
  for (std::size_t n = 1; n < excitation.size(); ++n)
    if (kin.open[n] && response.matrix_elements.row(static_cast<Eigen::Index>(n)).squaredNorm() > kDarkChannel)
      ++rec.contributing_count;
  if (rec.channel_count == 0) rec.add_warning("no_open_channels");
  rec.value = response.particles > 0 ? total / response.particles : 0.0;
  return rec;
}

CrossSectionRecord inelastic_cs_exact(const DensityResponse& response, const LatticeSpec& lattice,
                                      const ProbeSpec& probe) {
  return inelastic_cs_exact(response, lattice, probe, Execution::parallel);
}

CrossSectionRecord elastic_cs_exact(const DensityResponse& response, const LatticeSpec& lattice,
                                    const ProbeSpec& probe) {
  auto rec = echo(Method::exact_elastic, response, lattice, probe);
  const double kel = elastic_kappa(probe);
  std::complex<double> amp{0.0, 0.0};
  for (Eigen::Index j = 0; j < response.matrix_elements.cols(); ++j)
    amp += response.matrix_elements(0, j) * std::polar(1.0, kel * static_cast<double>(j + 1));
  const double w = form_factor(kel, lattice.v0_er);
  rec.value = response.particles > 0 ? std::norm(amp) * w * w / response.particles : 0.0;
  rec.channel_count = response.dim() > 0 ? 1 : 0;
  rec.contributing_count = rec.channel_count;
  return rec;
}

}  // namespace mottscope
