#pragma once

#include <cstddef>
#include <vector>

namespace ballbody {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, double s);
// a + s * b
Vec axpy(const Vec& a, double s, const Vec& b);
Vec negate(const Vec& a);
double distance(const Vec& a, const Vec& b);

// Dense row-major matrix, sized at runtime. Small (n <= 8 in practice).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  // I - u u^T for a unit vector u.
  static Matrix tangent_projector(const Vec& u);
  static Matrix outer(const Vec& a, const Vec& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  Matrix transpose() const;
  Vec apply(const Vec& x) const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(const Matrix& a, const Matrix& b);

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  double off_diagonal = 0.0;
};

// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
// Frobenius norm drops below `tol`. Throws ConvergenceError after
// `max_sweeps`.
JacobiResult jacobi_eigenvalues(Matrix a, double tol = 1e-12, int max_sweeps = 100);

// Gaussian elimination with partial pivoting. Throws NumericalDomainError on
// a singular system.
Vec solve_linear(Matrix a, Vec b);

}  // namespace ballbody
