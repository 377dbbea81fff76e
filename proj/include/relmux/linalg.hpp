#pragma once

#include <complex>
#include <vector>

namespace relmux {

// Dense column-major complex matrix. Sizes in this project stay small
// (block channels cap out around 72x72), so everything owns its storage and
// copies freely.
class CMatrix {
 public:
  using value_type = std::complex<double>;

  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(int i, int j) { return data_[static_cast<size_t>(j) * rows_ + i]; }
  const value_type& operator()(int i, int j) const {
    return data_[static_cast<size_t>(j) * rows_ + i];
  }

  value_type* data() { return data_.data(); }
  const value_type* data() const { return data_.data(); }

  bool operator==(const CMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<value_type> data_;
};

// C += A * B
void matmul_acc(CMatrix& C, const CMatrix& A, const CMatrix& B);
CMatrix matmul(const CMatrix& A, const CMatrix& B);
// A^H * B
CMatrix conj_matmul(const CMatrix& A, const CMatrix& B);
CMatrix conj_transpose(const CMatrix& A);
// A^H * A, Hermitian PSD by construction
CMatrix gram(const CMatrix& A);

void scale(CMatrix& A, std::complex<double> s);
void add_scaled(CMatrix& A, const CMatrix& B, std::complex<double> s);  // A += s*B
void add_identity(CMatrix& A, double s);                                // A += s*I

double frobenius_sq(const CMatrix& A);
double max_abs_diff(const CMatrix& A, const CMatrix& B);

// Lower Cholesky factor of a Hermitian positive definite matrix; throws
// ValidationError when a pivot is not safely positive.
CMatrix cholesky_lower(const CMatrix& A);
// Solves L X = B for lower-triangular L.
CMatrix solve_lower(const CMatrix& L, const CMatrix& B);
// log2 det(A) for Hermitian positive definite A, via Cholesky.
double logdet2_hermitian_pd(const CMatrix& A);

// Eigenvalues of a Hermitian matrix, ascending (cyclic Jacobi).
std::vector<double> hermitian_eigenvalues(const CMatrix& A);
double max_eigenvalue_hermitian(const CMatrix& A);

}  // namespace relmux
