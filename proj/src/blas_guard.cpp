#include <cmath>
#include <cstdlib>
#include <iostream>
#include <vector>

#include <Eigen/Core>
#include <lapacke.h>
#include <unistd.h>

#include "mottscope/eigensolver.hpp"

extern "C" void dgemm_(const char* transa, const char* transb, const int* m, const int* n, const int* k,
                       const double* alpha, const double* a, const int* lda, const double* b, const int* ldb,
                       const double* beta, double* c, const int* ldc);

namespace mottscope {

namespace {

bool check_dgemm() {
  // Large enough to leave the small-matrix kernels.
  const int n = 256;
  std::vector<double> a(static_cast<std::size_t>(n) * n), b(a.size()), c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::sin(0.37 * static_cast<double>(i) + 0.1);
    b[i] = std::cos(0.53 * static_cast<double>(i) + 0.2);
  }
  const double one = 1.0, zero = 0.0;
  dgemm_("N", "N", &n, &n, &n, &one, a.data(), &n, b.data(), &n, &zero, c.data(), &n);
  double worst = 0.0;
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a[row + static_cast<std::size_t>(k) * n] * b[k + static_cast<std::size_t>(col) * n];
      worst = std::max(worst, std::abs(s - c[row + static_cast<std::size_t>(col) * n]));
    }
  }
  return worst < 1e-9;
}

// The symmetric solver also goes through level-2/3 kernels that dgemm alone
// does not reach.
bool check_dsyevd() {
  const int n = 160;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = std::sin(0.71 * i * j + 0.3 * (i + j) + 0.05);
  Eigen::MatrixXd z = a;
  Eigen::VectorXd w(n);
  if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, z.data(), n, w.data()) != 0) return false;
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd r = -w(k) * z.col(k);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) r(i) += a(i, j) * z(j, k);
    worst = std::max(worst, r.norm());
  }
  return worst < 1e-9 * n;
}

const char* safe_core_type() {
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return "Haswell";
  if (__builtin_cpu_supports("avx")) return "SandyBridge";
  return "Nehalem";
}

}  // namespace

bool blas_kernels_ok() {
  static const bool ok = check_dgemm() && check_dsyevd();
  return ok;
}

void ensure_working_blas(char** argv) {
  if (blas_kernels_ok() || std::getenv("OPENBLAS_CORETYPE") != nullptr) return;
  ::setenv("OPENBLAS_CORETYPE", safe_core_type(), 1);
  ::execv("/proc/self/exe", argv);
  std::cerr << "warning: could not re-execute with OPENBLAS_CORETYPE set\n";
}

}  // namespace mottscope
