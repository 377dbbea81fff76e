#include "relmux/kernels.hpp"

// AVX2/FMA variants. Complex values are interleaved [re, im], so one ymm
// register carries two complex doubles. Multiplication by a scalar (br + i*bi)
// uses the fmaddsub trick:
//   prod = fmaddsub(va, [br br br br], swap(va) * [bi bi bi bi])
// which yields [ar*br - ai*bi, ai*br + ar*bi, ...] in one instruction pair.
// Compiled via target attributes so no special flags are needed; the
// dispatcher only hands these out when the CPU reports avx2+fma.

#if defined(__x86_64__) && defined(__GNUC__)
#define RELMUX_AVX2_COMPILED 1
#include <immintrin.h>
#endif

namespace relmux::kernels {

#if RELMUX_AVX2_COMPILED
namespace {

__attribute__((target("avx2,fma"))) void cgemm_nn_avx2(int m, int n, int k, const cd* A,
                                                       int lda, const cd* B, int ldb,
                                                       cd* C, int ldc) {
  for (int j = 0; j < n; ++j) {
    cd* c = C + static_cast<long>(j) * ldc;
    for (int l = 0; l < k; ++l) {
      const cd b = B[l + static_cast<long>(j) * ldb];
      if (b.real() == 0.0 && b.imag() == 0.0) continue;
      const __m256d vbr = _mm256_set1_pd(b.real());
      const __m256d vbi = _mm256_set1_pd(b.imag());
      const double* a = reinterpret_cast<const double*>(A + static_cast<long>(l) * lda);
      double* cp = reinterpret_cast<double*>(c);
      int i = 0;
      for (; i + 2 <= m; i += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * i);
        const __m256d vs = _mm256_permute_pd(va, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(va, vbr, _mm256_mul_pd(vs, vbi));
        _mm256_storeu_pd(cp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(cp + 2 * i), prod));
      }
      for (; i < m; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        c[i] += cd{ar * b.real() - ai * b.imag(), ar * b.imag() + ai * b.real()};
      }
    }
  }
}

__attribute__((target("avx2,fma"))) void cgemm_cn_avx2(int m, int n, int k, const cd* A,
                                                       int lda, const cd* B, int ldb,
                                                       cd* C, int ldc) {
  for (int j = 0; j < n; ++j) {
    const double* b = reinterpret_cast<const double*>(B + static_cast<long>(j) * ldb);
    for (int i = 0; i < m; ++i) {
      const double* a = reinterpret_cast<const double*>(A + static_cast<long>(i) * lda);
      __m256d acc1 = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
      __m256d acc2 = _mm256_setzero_pd();  // [ai*br, ar*bi, ...]
      int l = 0;
      for (; l + 2 <= k; l += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * l);
        const __m256d vb = _mm256_loadu_pd(b + 2 * l);
        acc1 = _mm256_fmadd_pd(va, vb, acc1);
        acc2 = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), vb, acc2);
      }
      __m128d s1 = _mm_add_pd(_mm256_castpd256_pd128(acc1), _mm256_extractf128_pd(acc1, 1));
      __m128d s2 = _mm_add_pd(_mm256_castpd256_pd128(acc2), _mm256_extractf128_pd(acc2, 1));
      // conj(a)*b: re = sum(ar*br + ai*bi), im = sum(ar*bi - ai*br)
      double re = _mm_cvtsd_f64(s1) + _mm_cvtsd_f64(_mm_unpackhi_pd(s1, s1));
      double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s2, s2)) - _mm_cvtsd_f64(s2);
      for (; l < k; ++l) {
        const double ar = a[2 * l], ai = a[2 * l + 1];
        const double br = b[2 * l], bi = b[2 * l + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
      }
      C[i + static_cast<long>(j) * ldc] += cd{re, im};
    }
  }
}

__attribute__((target("avx2,fma"))) double frob_sq_avx2(const cd* x, long n) {
  const double* p = reinterpret_cast<const double*>(x);
  const long nd = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  long i = 0;
  for (; i + 4 <= nd; i += 4) {
    const __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double out = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < nd; ++i) out += p[i] * p[i];
  return out;
}

}  // namespace

const Backend* avx2_backend() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
  static const Backend b{"avx2", cgemm_nn_avx2, cgemm_cn_avx2, frob_sq_avx2};
  return &b;
}

#else

const Backend* avx2_backend() { return nullptr; }

#endif

}  // namespace relmux::kernels
