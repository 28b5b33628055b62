#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "lyapcert/core/complex_interval.hpp"

namespace lyapcert {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0.0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntervalMatrix = Matrix<Interval>;
using ComplexIntervalMatrix = Matrix<ComplexInterval>;
using IntervalVector = std::vector<Interval>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch");
  Matrix<T> c(a.rows(), b.cols(), T(0.0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a) {
  IntervalMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline Eigen::MatrixXd midpoint(const IntervalMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).mid();
  return m;
}

inline Eigen::MatrixXcd midpoint(const ComplexIntervalMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).mid();
  return m;
}

inline IntervalMatrix to_interval(const Eigen::MatrixXd& m) {
  IntervalMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = Interval(m(i, j));
  return a;
}

inline ComplexIntervalMatrix to_interval(const Eigen::MatrixXcd& m) {
  ComplexIntervalMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = ComplexInterval(m(i, j));
  return a;
}

// Symmetrize by intersecting (i,j) with (j,i); both enclose the same exact
// entry when the underlying operator is symmetric.
inline IntervalMatrix symmetrize(const IntervalMatrix& a) {
  IntervalMatrix s = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      Interval v = a(i, j).intersects(a(j, i)) ? intersect(a(i, j), a(j, i)) : hull(a(i, j), a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

}  // namespace lyapcert
