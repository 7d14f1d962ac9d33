#include "mottscope/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <string>

#include <lapacke.h>

#include "mottscope/errors.hpp"

namespace mottscope {

namespace reference {

// Follows the classic tred2 layout: row i of z is reduced against rows
// 0..i-1, then the transforms are accumulated back into z.
void tridiagonalize(Eigen::MatrixXd& z, Eigen::VectorXd& d, Eigen::VectorXd& e) {
  const Eigen::Index n = z.rows();
  d.resize(n);
  e.setZero(n);
  if (n == 0) return;
  for (Eigen::Index j = 0; j < n; ++j) d(j) = z(n - 1, j);

  for (Eigen::Index i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (Eigen::Index k = 0; k < i; ++k) scale += std::abs(d(k));
    if (scale == 0.0) {
      e(i) = d(i - 1);
      for (Eigen::Index j = 0; j < i; ++j) {
        d(j) = z(i - 1, j);
        z(i, j) = 0.0;
        z(j, i) = 0.0;
      }
    } else {
      for (Eigen::Index k = 0; k < i; ++k) {
        d(k) /= scale;
        h += d(k) * d(k);
      }
      double f = d(i - 1);
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;
      for (Eigen::Index j = 0; j < i; ++j) e(j) = 0.0;

      for (Eigen::Index j = 0; j < i; ++j) {
        f = d(j);
        z(j, i) = f;
        g = e(j) + z(j, j) * f;
        for (Eigen::Index k = j + 1; k <= i - 1; ++k) {
          g += z(k, j) * d(k);
          e(k) += z(k, j) * f;
        }
        e(j) = g;
      }
      f = 0.0;
      for (Eigen::Index j = 0; j < i; ++j) {
        e(j) /= h;
        f += e(j) * d(j);
      }
      const double hh = f / (h + h);
      for (Eigen::Index j = 0; j < i; ++j) e(j) -= hh * d(j);
      for (Eigen::Index j = 0; j < i; ++j) {
        f = d(j);
        g = e(j);
        for (Eigen::Index k = j; k <= i - 1; ++k) z(k, j) -= (f * e(k) + g * d(k));
        d(j) = z(i - 1, j);
        z(i, j) = 0.0;
      }
    }
    d(i) = h;
  }

  for (Eigen::Index i = 0; i < n - 1; ++i) {
    z(n - 1, i) = z(i, i);
    z(i, i) = 1.0;
    const double h = d(i + 1);
    if (h != 0.0) {
      for (Eigen::Index k = 0; k <= i; ++k) d(k) = z(k, i + 1) / h;
      for (Eigen::Index j = 0; j <= i; ++j) {
        double g = 0.0;
        for (Eigen::Index k = 0; k <= i; ++k) g += z(k, i + 1) * z(k, j);
        for (Eigen::Index k = 0; k <= i; ++k) z(k, j) -= g * d(k);
      }
    }
    for (Eigen::Index k = 0; k <= i; ++k) z(k, i + 1) = 0.0;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j) = z(n - 1, j);
    z(n - 1, j) = 0.0;
  }
  z(n - 1, n - 1) = 1.0;
  e(0) = 0.0;
}

void implicit_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd& z) {
  const Eigen::Index n = d.size();
  if (n == 0) return;
  for (Eigen::Index i = 1; i < n; ++i) e(i - 1) = e(i);
  e(n - 1) = 0.0;

  constexpr long kMaxSweeps = 60;
  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;
  for (Eigen::Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
    Eigen::Index m = l;
    while (m < n) {
      if (std::abs(e(m)) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      long iter = 0;
      do {
        if (++iter > kMaxSweeps)
          throw ConvergenceError("implicit QL: eigenvalue " + std::to_string(l) + " not converged after " +
                                     std::to_string(kMaxSweeps) + " sweeps",
                                 iter);
        double g = d(l);
        double p = (d(l + 1) - g) / (2.0 * e(l));
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const double dl1 = d(l + 1);
        double h = g - d(l);
        for (Eigen::Index i = l + 2; i < n; ++i) d(i) -= h;
        f += h;

        p = d(m);
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e(l + 1);
        double s = 0.0, s2 = 0.0;
        for (Eigen::Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = std::hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          for (Eigen::Index k = 0; k < n; ++k) {
            h = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * h;
            z(k, i) = c * z(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (std::abs(e(l)) > eps * tst1);
    }
    d(l) += f;
    e(l) = 0.0;
  }
}

}  // namespace reference

namespace {

EigenDecomposition solve_lapack(Eigen::MatrixXd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigenDecomposition out;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, out.values.data());
  if (info != 0)
    throw ConvergenceError("dsyevd failed with info = " + std::to_string(info), info);
  out.vectors = std::move(a);
  return out;
}

EigenDecomposition solve_reference(Eigen::MatrixXd a) {
  Eigen::VectorXd d, e;
  reference::tridiagonalize(a, d, e);
  reference::implicit_ql(d, e, a);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return d(x) < d(y); });
  EigenDecomposition out;
  out.values.resize(d.size());
  out.vectors.resize(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    out.values(k) = d(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = a.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace

EigenDecomposition symmetric_eigensolve(Eigen::MatrixXd a, EigenBackend backend) {
  if (a.rows() != a.cols()) throw DomainError("eigensolve needs a square matrix");
  if (backend == EigenBackend::lapack && blas_kernels_ok()) return solve_lapack(std::move(a));
  if (backend == EigenBackend::lapack) {
    static const bool warned = [] {
      std::cerr << "warning: linked BLAS failed its self-check; using the reference eigensolver\n";
      return true;
    }();
    (void)warned;
  }
  return solve_reference(std::move(a));
}

}  // namespace mottscope
