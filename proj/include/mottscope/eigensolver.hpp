#pragma once

#include <Eigen/Core>

namespace mottscope {

enum class EigenBackend {
  lapack,     // dsyevd: blocked tridiagonal reduction + divide and conquer
  reference,  // Householder tridiagonalization + implicit QL, serial
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k belongs to values[k]
};

/// Full eigendecomposition of a real symmetric matrix. Only the upper
/// triangle of `a` is read by the LAPACK path; the reference path reads the
/// whole matrix. Throws ConvergenceError on failure.
EigenDecomposition symmetric_eigensolve(Eigen::MatrixXd a, EigenBackend backend = EigenBackend::lapack);

/// Compares the linked BLAS dgemm against a plain triple loop once per
/// process. Some OpenBLAS builds pick a kernel the host executes
/// incorrectly; the LAPACK backend then silently returns wrong vectors.
bool blas_kernels_ok();

/// If the BLAS check fails and OPENBLAS_CORETYPE is unset, re-executes the
/// current program with a conservative core type. Returns only when no
/// re-exec happened. Call first thing in main().
void ensure_working_blas(char** argv);

namespace reference {

/// Householder reduction to tridiagonal form. On return `z` holds the
/// accumulated orthogonal transform, `d` the diagonal and `e` the
/// subdiagonal in e[1..n-1] (e[0] = 0).
void tridiagonalize(Eigen::MatrixXd& z, Eigen::VectorXd& d, Eigen::VectorXd& e);

/// Implicit QL with Wilkinson-style shifts on the tridiagonal (d, e),
/// rotating the columns of z. Eigenvalues are left unsorted in d.
void implicit_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd& z);

}  // namespace reference

}  // namespace mottscope
