#ifndef BICKLEY_LINALG_HPP
#define BICKLEY_LINALG_HPP

#include <cstddef>
#include <vector>

namespace bickley::linalg {

/// Dense row-major square matrix for the small (n <= 8) systems used here.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  double trace() const;
  bool is_symmetric() const;
  Matrix transposed() const;
  /// Matrix with row r and column c removed.
  Matrix minor_matrix(std::size_t r, std::size_t c) const;
  /// Leading k x k block.
  Matrix leading(std::size_t k) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Determinant by LU factorization with partial pivoting. det of a 0x0
/// matrix is 1.
double determinant(const Matrix& m);

/// Cofactor matrix C(r, c) = (-1)^(r+c) det(minor(r, c)).
Matrix cofactors(const Matrix& m);

/// Determinants of the leading 1x1, 2x2, ..., nxn blocks.
std::vector<double> leading_minors(const Matrix& m);

struct EigenResult {
  std::vector<double> values;  // ascending
  int sweeps = 0;
  bool converged = false;
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
EigenResult symmetric_eigenvalues(const Matrix& m, int max_sweeps = 100);

}  // namespace bickley::linalg

#endif  // BICKLEY_LINALG_HPP
