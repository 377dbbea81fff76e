#pragma once

#include <complex>
#include <string>

// Low-level complex kernels behind the dense linear algebra. Two
// implementations ship: a portable scalar reference and an AVX2/FMA variant.
// The active backend is chosen once at startup from CPU capabilities and can
// be forced with RELMUX_KERNELS=scalar|avx2. All routines work on
// column-major complex<double> buffers with explicit leading dimensions and
// accumulate into C, so a caller wanting C = A*B zeroes C first.

namespace relmux::kernels {

using cd = std::complex<double>;

struct Backend {
  const char* name;
  // C (m x n) += A (m x k) * B (k x n)
  void (*cgemm_nn)(int m, int n, int k, const cd* A, int lda, const cd* B, int ldb,
                   cd* C, int ldc);
  // C (m x n) += A^H * B, with A stored as k x m
  void (*cgemm_cn)(int m, int n, int k, const cd* A, int lda, const cd* B, int ldb,
                   cd* C, int ldc);
  // sum of |x_i|^2 over a contiguous buffer
  double (*frob_sq)(const cd* x, long n);
};

const Backend& scalar_backend();
// nullptr when the binary lacks AVX2 support or the CPU does
const Backend* avx2_backend();

// Backend selected from RELMUX_KERNELS or CPU detection; stable for the
// lifetime of the process.
const Backend& backend();

}  // namespace relmux::kernels
