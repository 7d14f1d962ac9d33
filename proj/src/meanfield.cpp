#include "mottscope/meanfield.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "mottscope/errors.hpp"

namespace mottscope::mf {

namespace {

constexpr double kSeed = 0.1;
constexpr double kDamping = 0.5;
constexpr double kTolerance = 1e-12;
constexpr long kMaxIterations = 100000;

double sq(double x) { return x * x; }

}  // namespace

double mu_fd(int filling) { return std::sqrt(filling * (filling + 1.0)) - 1.0; }

double single_site_energy(int n, double mu_tilde) { return 0.5 * n * (n - 1.0) - mu_tilde * n; }

SingleSiteEnergies single_site_energies(int filling, double mu_tilde) {
  SingleSiteEnergies e;
  e.eps = single_site_energy(filling, mu_tilde);
  e.delta_plus = single_site_energy(filling + 1, mu_tilde) - e.eps;
  e.delta_minus = single_site_energy(filling - 1, mu_tilde) - e.eps;
  return e;
}

double c_coefficient(int filling, int k, double mu_tilde) {
  if (k == 0) throw DomainError("c coefficient undefined for k = 0");
  if (filling + k < 0) throw DomainError("c coefficient needs nu + k >= 0");
  const double num = std::sqrt(filling + k + (k < 0 ? 1.0 : 0.0));
  return num / (single_site_energy(filling, mu_tilde) - single_site_energy(filling + k, mu_tilde));
}

double coefficient_a(int filling, double mu_tilde) {
  return std::sqrt(static_cast<double>(filling)) * c_coefficient(filling, -1, mu_tilde) +
         std::sqrt(filling + 1.0) * c_coefficient(filling, 1, mu_tilde);
}

double coefficient_b(int filling, double mu_tilde) {
  const double cm1 = c_coefficient(filling, -1, mu_tilde);
  const double cp1 = c_coefficient(filling, 1, mu_tilde);
  double b = std::sqrt(filling + 2.0) * sq(cp1) * c_coefficient(filling, 2, mu_tilde);
  // The ν-2 term carries sqrt(ν-1) and vanishes at unit filling.
  if (filling >= 2) b += std::sqrt(filling - 1.0) * sq(cm1) * c_coefficient(filling, -2, mu_tilde);
  b -= 0.5 * coefficient_a(filling, mu_tilde) * (sq(cm1) + sq(cp1));
  return b;
}

double lambda_squared(int filling, double j_tilde, double mu_tilde) {
  if (!(j_tilde > 0.0)) return 0.0;
  const double a = coefficient_a(filling, mu_tilde);
  const double num = a + 1.0 / (2.0 * j_tilde);
  // At the threshold num cancels to rounding level; treat that as zero.
  if (std::abs(num) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(a)) return 0.0;
  const double value = -num / coefficient_b(filling, mu_tilde);
  return value > 0.0 ? value : 0.0;
}

double critical_j(int filling) {
  // 1/2 + ν - sqrt(ν(ν+1)) without the cancellation.
  return 0.25 / (0.5 + filling + std::sqrt(filling * (filling + 1.0)));
}

MFContext make_context(int filling, double j_tilde) { return make_context(filling, j_tilde, mu_fd(filling)); }

MFContext make_context(int filling, double j_tilde, double mu_tilde) {
  if (filling < 1) throw DomainError("mean-field context needs filling >= 1");
  MFContext ctx;
  ctx.nu = filling;
  ctx.mu_tilde = mu_tilde;
  ctx.j_tilde = j_tilde;
  const std::array<int, 4> ks{-2, -1, 1, 2};
  for (std::size_t i = 0; i < ks.size(); ++i)
    ctx.c_coeffs[i] = filling + ks[i] >= 0 ? c_coefficient(filling, ks[i], mu_tilde)
                                           : std::numeric_limits<double>::quiet_NaN();
  ctx.a = coefficient_a(filling, mu_tilde);
  ctx.b = coefficient_b(filling, mu_tilde);
  ctx.lambda_tilde = std::sqrt(lambda_squared(filling, j_tilde, mu_tilde));
  return ctx;
}

Eigen::Index SingleSite::dominated_by(int n) const {
  Eigen::Index best = 0;
  vectors.row(n).cwiseAbs().maxCoeff(&best);
  return best;
}

SingleSite solve_single_site(double lambda_tilde, double mu_tilde, int n_max) {
  if (n_max < 1) throw DomainError("single-site truncation needs n_max >= 1");
  const Eigen::Index dim = n_max + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= n_max; ++n) h(n, n) = single_site_energy(n, mu_tilde);
  for (int n = 1; n <= n_max; ++n) {
    h(n, n - 1) = -lambda_tilde * std::sqrt(static_cast<double>(n));
    h(n - 1, n) = h(n, n - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceError("single-site eigensolver failed", 0);
  return {es.eigenvalues(), es.eigenvectors()};
}

double ground_condensate(double lambda_tilde, double mu_tilde, int n_max) {
  const auto s = solve_single_site(lambda_tilde, mu_tilde, n_max);
  const auto g = s.vectors.col(0);
  double a = 0.0;
  for (int n = 1; n <= n_max; ++n) a += std::sqrt(static_cast<double>(n)) * g(n - 1) * g(n);
  return std::abs(a);
}

double selfconsistent_lambda(int filling, double j_tilde, double mu_tilde, int n_max) {
  if (n_max < filling + 4) throw DomainError("truncation must be at least nu + 4");
  if (!(j_tilde > 0.0)) return 0.0;
  // Linear stability of λ = 0: the map has slope -2J A there.
  if (-2.0 * j_tilde * coefficient_a(filling, mu_tilde) <= 1.0) return 0.0;

  auto map = [&](double lambda) { return 2.0 * j_tilde * ground_condensate(lambda, mu_tilde, n_max); };
  auto damped = [&](double lambda) { return (1.0 - kDamping) * lambda + kDamping * map(lambda); };
  // Near the threshold the damped map contracts at a rate close to one, so
  // every third step is an Aitken extrapolation (Steffensen's method).
  double lambda = kSeed;
  for (long it = 0;; it += 3) {
    if (it >= kMaxIterations)
      throw ConvergenceError("mean-field self-consistency did not converge", kMaxIterations);
    const double l1 = damped(lambda);
    const double l2 = damped(l1);
    const double denom = l2 - 2.0 * l1 + lambda;
    double next = l2;
    if (std::abs(denom) > 0.0) {
      const double aitken = lambda - (l1 - lambda) * (l1 - lambda) / denom;
      if (std::isfinite(aitken) && aitken > 0.0) next = aitken;
    }
    const double step = std::abs(next - lambda);
    lambda = next;
    if (lambda < std::numeric_limits<double>::min()) return 0.0;
    if (step < kTolerance) break;
  }

  // Slow contraction near the threshold leaves an error of order
  // tolerance / (1 - rate); bisect the residual to remove it.
  double lo = 0.5 * lambda, hi = 2.0 * lambda;
  if (map(lo) - lo > 0.0 && map(hi) - hi < 0.0) {
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (map(mid) - mid > 0.0 ? lo : hi) = mid;
    }
    lambda = 0.5 * (lo + hi);
  }
  return lambda;
}

LambdaSource parse_lambda_source(std::string_view s) {
  if (s == "perturbative") return LambdaSource::perturbative;
  if (s == "iterative") return LambdaSource::iterative;
  throw ValidationError("unknown lambda source '" + std::string(s) + "'");
}

CrossSectionRecord inelastic_cs_mf(const LatticeSpec& lattice, const ProbeSpec& probe,
                                   const InteractionSpec& interaction, LambdaSource source) {
  if (!lattice.integer_filling() || lattice.filling < 1)
    throw DomainError("mean-field cross section needs integer filling >= 1");
  if (!(interaction.u_over_j > 0.0)) throw DomainError("mean-field cross section needs U/J > 0");

  CrossSectionRecord rec;
  rec.method = Method::mf;
  rec.sites = lattice.sites;
  rec.filling = lattice.filling;
  rec.particles = lattice.particle_number();
  rec.u_over_j = interaction.u_over_j;
  rec.theta = probe.theta;
  rec.ein_er = probe.ein_er;

  const int nu = lattice.filling;
  const double mu = mu_fd(nu);
  const double jt = interaction.j_tilde();
  const double lambda = source == LambdaSource::perturbative
                            ? std::sqrt(lambda_squared(nu, jt, mu))
                            : selfconsistent_lambda(nu, jt, mu, default_truncation(nu));
  if (lambda > kLambdaValidity) rec.add_warning("lambda_above_validity");

  const auto gaps = single_site_energies(nu, mu);
  const double u_er = interaction.u_er(lattice.j_er);
  const double kel = elastic_kappa(probe);
  double sum = 0.0;
  for (int sigma : {1, -1}) {
    const double gap = sigma > 0 ? gaps.delta_plus : gaps.delta_minus;
    const double r = 1.0 - u_er * gap / probe.ein_er;
    if (r < 0.0) continue;
    ++rec.channel_count;
    const double w = form_factor(kel * std::sqrt(r), lattice.v0_er);
    sum += std::sqrt(r) * sq(c_coefficient(nu, sigma, mu)) * w * w;
  }
  if (rec.channel_count == 0) rec.add_warning("no_open_channels");
  rec.contributing_count = lambda > 0.0 ? rec.channel_count : 0;
  rec.value = lambda * lambda / nu * sum;
  return rec;
}

}  // namespace mottscope::mf
