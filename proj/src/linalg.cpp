#include "relmux/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "relmux/errors.hpp"
#include "relmux/kernels.hpp"

namespace relmux {

namespace {
void require_dims(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace

void matmul_acc(CMatrix& C, const CMatrix& A, const CMatrix& B) {
  require_dims(A.cols() == B.rows() && C.rows() == A.rows() && C.cols() == B.cols(),
               "matmul_acc: dimension mismatch");
  kernels::backend().cgemm_nn(A.rows(), B.cols(), A.cols(), A.data(), A.rows(), B.data(),
                              B.rows(), C.data(), C.rows());
}

CMatrix matmul(const CMatrix& A, const CMatrix& B) {
  CMatrix C(A.rows(), B.cols());
  matmul_acc(C, A, B);
  return C;
}

CMatrix conj_matmul(const CMatrix& A, const CMatrix& B) {
  require_dims(A.rows() == B.rows(), "conj_matmul: dimension mismatch");
  CMatrix C(A.cols(), B.cols());
  kernels::backend().cgemm_cn(A.cols(), B.cols(), A.rows(), A.data(), A.rows(), B.data(),
                              B.rows(), C.data(), C.rows());
  return C;
}

CMatrix gram(const CMatrix& A) { return conj_matmul(A, A); }

CMatrix conj_transpose(const CMatrix& A) {
  CMatrix B(A.cols(), A.rows());
  for (int j = 0; j < A.cols(); ++j)
    for (int i = 0; i < A.rows(); ++i) B(j, i) = std::conj(A(i, j));
  return B;
}

void scale(CMatrix& A, std::complex<double> s) {
  auto* p = A.data();
  const size_t n = static_cast<size_t>(A.rows()) * A.cols();
  for (size_t i = 0; i < n; ++i) p[i] *= s;
}

void add_scaled(CMatrix& A, const CMatrix& B, std::complex<double> s) {
  require_dims(A.rows() == B.rows() && A.cols() == B.cols(), "add_scaled: dimension mismatch");
  auto* a = A.data();
  const auto* b = B.data();
  const size_t n = static_cast<size_t>(A.rows()) * A.cols();
  for (size_t i = 0; i < n; ++i) a[i] += s * b[i];
}

void add_identity(CMatrix& A, double s) {
  require_dims(A.rows() == A.cols(), "add_identity: square matrix required");
  for (int i = 0; i < A.rows(); ++i) A(i, i) += s;
}

double frobenius_sq(const CMatrix& A) {
  return kernels::backend().frob_sq(A.data(), static_cast<long>(A.rows()) * A.cols());
}

double max_abs_diff(const CMatrix& A, const CMatrix& B) {
  require_dims(A.rows() == B.rows() && A.cols() == B.cols(), "max_abs_diff: dimension mismatch");
  double m = 0.0;
  const auto* a = A.data();
  const auto* b = B.data();
  const size_t n = static_cast<size_t>(A.rows()) * A.cols();
  for (size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CMatrix cholesky_lower(const CMatrix& A) {
  require_dims(A.rows() == A.cols(), "cholesky_lower: square matrix required");
  const int n = A.rows();
  CMatrix L(n, n);
  for (int j = 0; j < n; ++j) {
    double d = A(j, j).real();
    for (int l = 0; l < j; ++l) d -= std::norm(L(j, l));
    if (!(d > 0.0) || !std::isfinite(d))
      throw ValidationError("cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      std::complex<double> s = A(i, j);
      for (int l = 0; l < j; ++l) s -= L(i, l) * std::conj(L(j, l));
      L(i, j) = s / ljj;
    }
  }
  return L;
}

CMatrix solve_lower(const CMatrix& L, const CMatrix& B) {
  require_dims(L.rows() == L.cols() && L.rows() == B.rows(), "solve_lower: dimension mismatch");
  const int n = L.rows();
  CMatrix X = B;
  for (int j = 0; j < X.cols(); ++j) {
    for (int i = 0; i < n; ++i) {
      std::complex<double> s = X(i, j);
      for (int l = 0; l < i; ++l) s -= L(i, l) * X(l, j);
      X(i, j) = s / L(i, i);
    }
  }
  return X;
}

double logdet2_hermitian_pd(const CMatrix& A) {
  const CMatrix L = cholesky_lower(A);
  double acc = 0.0;
  for (int i = 0; i < L.rows(); ++i) acc += std::log2(L(i, i).real());
  return 2.0 * acc;
}

// Cyclic Jacobi for Hermitian matrices. Each (p, q) step first rotates the
// off-diagonal entry onto the real axis with a phase, then applies a real
// Jacobi rotation; the combined unitary acts on rows and columns p, q.
std::vector<double> hermitian_eigenvalues(const CMatrix& A) {
  require_dims(A.rows() == A.cols(), "hermitian_eigenvalues: square matrix required");
  const int n = A.rows();
  CMatrix M = A;
  // symmetrize defensively; inputs are Hermitian up to rounding
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const auto avg = 0.5 * (M(i, j) + std::conj(M(j, i)));
      M(i, j) = avg;
      M(j, i) = std::conj(avg);
    }

  const double scale = std::sqrt(frobenius_sq(M));
  const double tol = (scale == 0.0) ? 0.0 : 1e-14 * scale;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(M(p, q));
    if (std::sqrt(off) <= tol) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const std::complex<double> g = M(p, q);
        const double m = std::abs(g);
        if (m <= tol / (n + 1.0)) continue;
        const std::complex<double> u = g / m;  // phase of the pivot entry

        const double app = M(p, p).real();
        const double aqq = M(q, q).real();
        const double tau = (aqq - app) / (2.0 * m);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // V = D * R with D = diag(1, conj(u)) and R the real rotation; apply
        // columns (M V), then rows (V^H M V).
        for (int i = 0; i < n; ++i) {
          const std::complex<double> vip = M(i, p);
          const std::complex<double> viq = M(i, q) * std::conj(u);
          M(i, p) = c * vip - s * viq;
          M(i, q) = s * vip + c * viq;
        }
        for (int j = 0; j < n; ++j) {
          const std::complex<double> vpj = M(p, j);
          const std::complex<double> vqj = u * M(q, j);
          M(p, j) = c * vpj - s * vqj;
          M(q, j) = s * vpj + c * vqj;
        }
        M(p, q) = 0.0;
        M(q, p) = 0.0;
      }
    }
  }

  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = M(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double max_eigenvalue_hermitian(const CMatrix& A) {
  const auto ev = hermitian_eigenvalues(A);
  return ev.empty() ? 0.0 : ev.back();
}

}  // namespace relmux
