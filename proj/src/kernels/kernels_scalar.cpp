#include "relmux/kernels.hpp"

// Reference kernels. Complex arithmetic is expanded by hand: operator* on
// std::complex routes through __muldc3 for NaN bookkeeping we do not need.

namespace relmux::kernels {
namespace {

void cgemm_nn_scalar(int m, int n, int k, const cd* A, int lda, const cd* B, int ldb,
                     cd* C, int ldc) {
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < k; ++l) {
      const double br = B[l + static_cast<long>(j) * ldb].real();
      const double bi = B[l + static_cast<long>(j) * ldb].imag();
      if (br == 0.0 && bi == 0.0) continue;
      const cd* a = A + static_cast<long>(l) * lda;
      cd* c = C + static_cast<long>(j) * ldc;
      for (int i = 0; i < m; ++i) {
        const double ar = a[i].real();
        const double ai = a[i].imag();
        c[i] += cd{ar * br - ai * bi, ar * bi + ai * br};
      }
    }
  }
}

void cgemm_cn_scalar(int m, int n, int k, const cd* A, int lda, const cd* B, int ldb,
                     cd* C, int ldc) {
  for (int j = 0; j < n; ++j) {
    const cd* b = B + static_cast<long>(j) * ldb;
    for (int i = 0; i < m; ++i) {
      const cd* a = A + static_cast<long>(i) * lda;
      double re = 0.0, im = 0.0;
      for (int l = 0; l < k; ++l) {
        const double ar = a[l].real(), ai = a[l].imag();
        const double br = b[l].real(), bi = b[l].imag();
        // conj(a) * b
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
      }
      C[i + static_cast<long>(j) * ldc] += cd{re, im};
    }
  }
}

double frob_sq_scalar(const cd* x, long n) {
  double acc = 0.0;
  for (long i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", cgemm_nn_scalar, cgemm_cn_scalar, frob_sq_scalar};
  return b;
}

}  // namespace relmux::kernels
