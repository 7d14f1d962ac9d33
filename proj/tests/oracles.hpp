#pragma once

// Brute-force references built without the library's basis ranking or
// Hamiltonian assembly: states live in a std::map, matrices are dense.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using State = std::vector<int>;
using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

inline void enumerate(int sites, int left, State& cur, std::vector<State>& out) {
  if (static_cast<int>(cur.size()) == sites - 1) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int n = left; n >= 0; --n) {
    cur.push_back(n);
    enumerate(sites, left - n, cur, out);
    cur.pop_back();
  }
}

struct Space {
  int sites = 0;
  std::vector<State> states;
  std::map<State, int> index;
};

inline Space fock_space(int sites, int particles) {
  Space s;
  s.sites = sites;
  State cur;
  enumerate(sites, particles, cur, s.states);
  for (int i = 0; i < static_cast<int>(s.states.size()); ++i) s.index[s.states[static_cast<std::size_t>(i)]] = i;
  return s;
}

inline long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Σ_bonds (a†_i a_j + a†_j a_i) over the ring, one term per bond.
inline Eigen::MatrixXd hopping(const Space& s) {
  const auto d = static_cast<Eigen::Index>(s.states.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d);
  for (int b = 0; b < s.sites; ++b) {
    const int i = b, j = (b + 1) % s.sites;
    for (Eigen::Index c = 0; c < d; ++c) {
      for (auto [to, from] : {std::pair{i, j}, std::pair{j, i}}) {
        State st = s.states[static_cast<std::size_t>(c)];
        if (st[static_cast<std::size_t>(from)] == 0) continue;
        const double amp = std::sqrt(st[static_cast<std::size_t>(from)] * (st[static_cast<std::size_t>(to)] + 1.0));
        --st[static_cast<std::size_t>(from)];
        ++st[static_cast<std::size_t>(to)];
        v(s.index.at(st), c) += amp;
      }
    }
  }
  return v;
}

/// ½ Σ n(n-1) per state.
inline Eigen::VectorXd interaction(const Space& s) {
  Eigen::VectorXd e(static_cast<Eigen::Index>(s.states.size()));
  for (std::size_t c = 0; c < s.states.size(); ++c) {
    double x = 0.0;
    for (int n : s.states[c]) x += 0.5 * n * (n - 1.0);
    e(static_cast<Eigen::Index>(c)) = x;
  }
  return e;
}

/// H / J = (U/J) ½Σn(n-1) - V.
inline Eigen::MatrixXd hamiltonian(const Space& s, double u_over_j) {
  Eigen::MatrixXd h = -hopping(s);
  h.diagonal() += u_over_j * interaction(s);
  return h;
}

inline cplx tq(double q, int nu) { return (nu + 1.0) * std::polar(1.0, q) + static_cast<double>(nu); }

/// |q,ϰ> from its definition, with sites labelled s = 1..L.
inline Eigen::VectorXcd ph_state(const Space& s, int nu, double q, double k) {
  const int l_sites = s.sites;
  const double z = std::arg(tq(q, nu));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.states.size()));
  for (int l = 1; l < l_sites; ++l) {
    for (int site = 1; site <= l_sites; ++site) {
      State st(static_cast<std::size_t>(l_sites), nu);
      st[static_cast<std::size_t>(site - 1)] += 1;
      st[static_cast<std::size_t>((site - 1 + l) % l_sites)] -= 1;
      psi(s.index.at(st)) += std::sqrt(2.0 / l_sites) * std::sin(k * l) * std::polar(1.0, z * l) *
                             std::polar(1.0, q * site) / std::sqrt(static_cast<double>(l_sites));
    }
  }
  return psi;
}

/// Second-order energy of |q,ϰ> by explicit summation over states outside
/// the particle-hole level: Σ_{n∉D} |<n|V|q,ϰ>|^2 / (1 - Ẽ_n), energies
/// measured from the Mott state in units of U.
inline double second_order_ph(const Space& s, const Eigen::MatrixXd& v, int nu, double q, double k) {
  const Eigen::VectorXd e = interaction(s).array() - 0.5 * s.sites * nu * (nu - 1.0);
  const Eigen::VectorXcd vpsi = v.cast<cplx>() * ph_state(s, nu, q, k);
  double sum = 0.0;
  for (Eigen::Index n = 0; n < vpsi.size(); ++n) {
    if (std::abs(e(n) - 1.0) < 1e-9) continue;
    sum += std::norm(vpsi(n)) / (1.0 - e(n));
  }
  return sum;
}

/// |Σ_{j=1}^{L} e^{iφj}|^2 by direct summation.
inline double interference(double phi, int sites) {
  cplx s{0.0, 0.0};
  for (int j = 1; j <= sites; ++j) s += std::polar(1.0, phi * j);
  return std::norm(s);
}

}  // namespace oracle
