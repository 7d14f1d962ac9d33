#include "mottscope/sce.hpp"

#include <cmath>
#include <string>

#include "mottscope/errors.hpp"

namespace mottscope::sce {

namespace {

using cplx = std::complex<double>;

bool is_zero_momentum(double q_d) { return std::abs(std::sin(0.5 * q_d)) < 1e-12; }

void require_sce_inputs(const LatticeSpec& lattice, const InteractionSpec& interaction) {
  if (!lattice.integer_filling()) throw DomainError("strong-coupling expansion needs integer filling");
  if (!(interaction.u_over_j > 0.0)) throw DomainError("strong-coupling expansion needs U/J > 0");
}

struct ChannelTerm {
  double value = 0.0;
  bool open = false;
  bool bright = false;
};

ChannelTerm sce_term(const LatticeSpec& lattice, double kappa_el_d, double ein_er, double u_er,
                     double j_tilde, int gap_order, double q, double k) {
  ChannelTerm t;
  const double gap = excitation_gap(q, k, lattice.filling, lattice.sites, j_tilde, gap_order);
  const double r = 1.0 - u_er * gap / ein_er;
  if (r < 0.0) return t;
  t.open = true;
  const double root = std::sqrt(r);
  const double kappa = kappa_el_d * root;
  const double m2 = std::norm(matrix_element_m(q, k, lattice.filling, lattice.sites));
  t.bright = m2 > 1e-24;
  const double w = form_factor(kappa, lattice.v0_er);
  t.value = root * m2 * interference(kappa, q, lattice.sites) * w * w;
  return t;
}

CrossSectionRecord sce_echo(Method m, const LatticeSpec& lattice, const ProbeSpec& probe,
                            const InteractionSpec& interaction) {
  CrossSectionRecord rec;
  rec.method = m;
  rec.sites = lattice.sites;
  rec.filling = lattice.filling;
  rec.particles = lattice.particle_number();
  rec.u_over_j = interaction.u_over_j;
  rec.theta = probe.theta;
  rec.ein_er = probe.ein_er;
  return rec;
}

}  // namespace

std::vector<double> com_momenta(int sites) {
  std::vector<double> q(static_cast<std::size_t>(sites));
  for (int j = 0; j < sites; ++j) q[static_cast<std::size_t>(j)] = 2.0 * kPi * j / sites;
  return q;
}

std::vector<double> relative_momenta(int sites) {
  std::vector<double> k;
  for (int j = 1; j < sites; ++j) k.push_back(kPi * j / sites);
  return k;
}

cplx tunneling(double q_d, int filling) {
  return (filling + 1.0) * std::polar(1.0, q_d) + static_cast<double>(filling);
}

double zeta(double q_d, int filling) {
  const cplx t = tunneling(q_d, filling);
  return std::atan2(t.imag(), t.real());
}

double e1(double q_d, double k_d, int filling) {
  const double c = std::cos(0.5 * q_d);
  const double nn = filling * (filling + 1.0);
  return 2.0 * std::cos(k_d) * std::sqrt(1.0 + 4.0 * nn * c * c);
}

double e2(double q_d, double k_d, int filling, int sites) {
  if (sites < 3) throw DomainError("second-order particle-hole energy needs L >= 3");
  const double nu = filling;
  const double l = sites;
  const double nn = nu * (nu + 1.0);
  const double z = zeta(q_d, filling);
  const double d0 = is_zero_momentum(q_d) ? 1.0 : 0.0;
  const double cq = std::cos(q_d);
  const double sk = std::sin(k_d);

  double r = -2.0 * l * nn + (6.0 * nu * nu + 6.0 * nu + 1.0);
  r -= 4.0 * nn / l * cq * std::cos(2.0 * z - q_d) * (1.0 + (l - 1.0) * std::cos(2.0 * k_d));
  r += 2.0 * sk * sk / (3.0 * l) * (2.0 * nn * (6.0 * cq - 1.0) + 1.0);
  const double zl = z * (l - 2.0);
  const double braces = 4.0 * nn * d0 - 2.0 * nu * (nu + 2.0) / l * std::cos(zl) -
                        2.0 * (nu * nu - 1.0) / l * std::cos(zl + 2.0 * q_d) +
                        4.0 * nn / l * std::cos(zl + q_d) * ((1.0 - d0) * (1.0 + 2.0 * cq) - (l - 3.0) * d0);
  r += sk * std::sin(k_d * (l - 1.0)) * braces;
  return r;
}

double excitation_gap(double q_d, double k_d, int filling, int sites, double j_tilde, int order) {
  double gap = 1.0 - j_tilde * e1(q_d, k_d, filling);
  if (order == 2) {
    gap += j_tilde * j_tilde * (e2(q_d, k_d, filling, sites) + 2.0 * sites * filling * (filling + 1.0));
  } else if (order != 1) {
    throw DomainError("gap order must be 1 or 2");
  }
  return gap;
}

cplx matrix_element_m(double q_d, double k_d, int filling, int sites) {
  const double z = zeta(q_d, filling);
  const double half = 0.5 * q_d;
  const cplx bracket = std::polar(1.0, half - z) +
                       std::cos(k_d * sites) * std::polar(1.0, -(half + z * (sites - 1.0)));
  return cplx(0.0, -2.0) * std::sin(k_d) * std::sin(half) * bracket;
}

Eigen::VectorXcd build_ph_state(double q_d, double k_d, const FockBasis& basis) {
  const int l_sites = basis.sites();
  if (l_sites < 2 || basis.particles() % l_sites != 0)
    throw DomainError("particle-hole states need integer filling on at least two sites");
  const int nu = basis.particles() / l_sites;
  if (nu < 1) throw DomainError("particle-hole states need filling >= 1");
  const double z = zeta(q_d, nu);

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  std::vector<int> occ(static_cast<std::size_t>(l_sites));
  const double norm = std::sqrt(2.0 / l_sites) / std::sqrt(static_cast<double>(l_sites));
  for (int l = 1; l < l_sites; ++l) {
    const cplx rel = std::sin(k_d * l) * std::polar(1.0, z * l);
    for (int s = 1; s <= l_sites; ++s) {
      std::fill(occ.begin(), occ.end(), nu);
      ++occ[static_cast<std::size_t>(s - 1)];
      --occ[static_cast<std::size_t>((s - 1 + l) % l_sites)];
      psi(static_cast<Eigen::Index>(basis.rank(occ))) += norm * rel * std::polar(1.0, q_d * s);
    }
  }
  return psi;
}

Eigen::VectorXcd apply_hopping(const FockBasis& basis, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  // Stored entries are -amplitude (the hopping part of H in units of J).
  for (const auto& e : kernels::serial::hopping_entries(basis)) {
    out(e.row) -= e.value * psi(e.col);
    out(e.col) -= e.value * psi(e.row);
  }
  return out;
}

CrossSectionRecord inelastic_cs_sce(const LatticeSpec& lattice, const ProbeSpec& probe,
                                    const InteractionSpec& interaction, int gap_order, Execution exec) {
  require_sce_inputs(lattice, interaction);
  if (gap_order != 1 && gap_order != 2) throw DomainError("gap order must be 1 or 2");
  if (gap_order == 2 && lattice.sites < 3) throw DomainError("second-order gap needs L >= 3");

  auto rec = sce_echo(Method::sce, lattice, probe, interaction);
  rec.gap_order = gap_order;
  const double j_tilde = interaction.j_tilde();
  const double u_er = interaction.u_er(lattice.j_er);
  const double kel = elastic_kappa(probe);
  const auto qs = com_momenta(lattice.sites);
  const auto ks = relative_momenta(lattice.sites);
  const auto nk = static_cast<std::ptrdiff_t>(ks.size());
  const auto count = static_cast<std::ptrdiff_t>(qs.size()) * nk;

  std::vector<ChannelTerm> terms(static_cast<std::size_t>(count));
  auto eval = [&](std::ptrdiff_t i) {
    terms[static_cast<std::size_t>(i)] = sce_term(lattice, kel, probe.ein_er, u_er, j_tilde, gap_order,
                                                  qs[static_cast<std::size_t>(i / nk)],
                                                  ks[static_cast<std::size_t>(i % nk)]);
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) eval(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) eval(i);
  }

  double sum = 0.0;
  for (const auto& t : terms) {
    sum += t.value;
    rec.channel_count += t.open;
    rec.contributing_count += t.open && t.bright;
  }
  if (rec.channel_count == 0) rec.add_warning("no_open_channels");
  const double l = lattice.sites;
  rec.value = j_tilde * j_tilde * 2.0 * (lattice.filling + 1.0) / (l * l * l) * sum;
  return rec;
}

CrossSectionRecord inelastic_cs_sce_fixed_kappa(const LatticeSpec& lattice, const ProbeSpec& probe,
                                                const InteractionSpec& interaction) {
  require_sce_inputs(lattice, interaction);
  auto rec = sce_echo(Method::sce, lattice, probe, interaction);
  rec.gap_order = 1;
  const double kel = elastic_kappa(probe);
  double sum = 0.0;
  for (double q : com_momenta(lattice.sites)) {
    double m2 = 0.0;
    for (double k : relative_momenta(lattice.sites)) m2 += std::norm(matrix_element_m(q, k, lattice.filling, lattice.sites));
    sum += m2 * interference(kel, q, lattice.sites);
    rec.channel_count += lattice.sites - 1;
  }
  const double w = form_factor(kel, lattice.v0_er);
  const double j_tilde = interaction.j_tilde();
  const double l = lattice.sites;
  rec.value = j_tilde * j_tilde * 2.0 * (lattice.filling + 1.0) / (l * l * l) * sum * w * w;
  rec.contributing_count = rec.channel_count;
  return rec;
}

bool high_energy_condition(int filling, const ProbeSpec& probe, const InteractionSpec& interaction,
                           double j_er) {
  const double bandwidth = 2.0 * std::sqrt(4.0 * filling * (filling + 1.0) + 1.0);
  return probe.ein_er / j_er >= kHighEnergyMargin * (interaction.u_over_j + bandwidth);
}

CrossSectionRecord large_l_cs(int filling, const ProbeSpec& probe, double v0_er,
                              const InteractionSpec& interaction, double j_er) {
  if (!(interaction.u_over_j > 0.0)) throw DomainError("large-L limit needs U/J > 0");
  CrossSectionRecord rec;
  rec.method = Method::sce_large_l;
  rec.filling = filling;
  rec.u_over_j = interaction.u_over_j;
  rec.theta = probe.theta;
  rec.ein_er = probe.ein_er;
  const double kel = elastic_kappa(probe);
  const double s = std::sin(0.5 * kel);
  const double w = form_factor(kel, v0_er);
  const double jt = interaction.j_tilde();
  rec.value = 8.0 * (filling + 1.0) * s * s * w * w * jt * jt;
  if (!high_energy_condition(filling, probe, interaction, j_er)) rec.add_warning("high_energy_condition");
  return rec;
}

double GapSeries::operator()(double j_tilde, int sites) const {
  const double nn = filling * (filling + 1.0);
  const double c = std::cos(kPi / sites);
  const double s = std::sin(kPi / sites);
  const double second = 1.0 + 2.0 * nn * (3.0 - 2.0 * std::cos(2.0 * kPi / sites)) +
                        4.0 / (3.0 * sites) * s * s * (5.0 * nn + 2.0);
  return 1.0 - 2.0 * c * std::sqrt(1.0 + 4.0 * nn) * j_tilde + j_tilde * j_tilde * second;
}

double critical_cubic(double j, int filling) {
  const double nu = filling;
  return 1.0 - 2.0 * (2.0 * nu + 1.0) * j + (1.0 + 2.0 * nu * (nu + 1.0)) * j * j +
         2.0 * nu * (nu * nu + 2.0) * j * j * j;
}

CriticalEstimate gap_and_critical(int filling) {
  if (filling < 1) throw DomainError("critical point needs filling >= 1");
  CriticalEstimate out;
  out.gap.filling = filling;
  // The root sits near 1/(4ν+2); scan well below that spacing, then bisect.
  const double step = std::min(1e-3, 0.01 / (4.0 * filling + 2.0));
  double lo = 0.0;
  double f_lo = critical_cubic(lo, filling);
  double hi = -1.0;
  for (double j = step; j <= 1.0; j += step) {
    if (critical_cubic(j, filling) <= 0.0) {
      hi = j;
      break;
    }
    lo = j;
  }
  if (hi < 0.0) throw NoRoot("no positive root of the critical cubic for filling " + std::to_string(filling));
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if ((critical_cubic(mid, filling) > 0.0) == (f_lo > 0.0)) lo = mid;
    else hi = mid;
  }
  out.j_tilde_c = 0.5 * (lo + hi);
  return out;
}

}  // namespace mottscope::sce
