#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace axdecomp {

using Vector = std::vector<double>;

/// Dense square matrix, row-major, acting on standard coordinates.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Vector column(std::size_t j) const {
    Vector c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = a_[i * n_ + j];
    return c;
  }
  void set_column(std::size_t j, const Vector& c) {
    for (std::size_t i = 0; i < n_; ++i) a_[i * n_ + j] = c[i];
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Matrix transpose(const Matrix& a);

double max_abs(const Matrix& a);
double max_abs(const Vector& x);
double frobenius(const Matrix& a);

/// Numerical thresholds shared across the library.
struct Tolerance {
  double rel = 1e-9;       // relative comparison tolerance
  double abs = 1e-12;      // absolute floor
  double rank_tol = 1e-10; // singular-pivot threshold

  /// One-knob rescale: all three fields scaled proportionally from rel.
  static Tolerance from_rel(double rel) {
    Tolerance t;
    t.rel = rel;
    t.abs = rel * 1e-3;
    t.rank_tol = rel * 0.1;
    return t;
  }
};

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions.
class dimension_error : public error {
 public:
  using error::error;
};

/// A pivot fell below the rank threshold where invertibility was required.
class singular_error : public error {
 public:
  using error::error;
};

/// A claimed basis is numerically linearly dependent.
class degenerate_basis_error : public error {
 public:
  using error::error;
};

/// An operation's documented precondition does not hold for the input.
class precondition_error : public error {
 public:
  using error::error;
};

/// An internal consistency assertion failed (numerical breakdown).
class internal_error : public error {
 public:
  using error::error;
};

}  // namespace axdecomp
