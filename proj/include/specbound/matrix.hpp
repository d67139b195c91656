#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace specbound {

/// Dense real k x m matrix, row-major, viewed as a linear map R^m -> R^k.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> column(std::size_t j) const;

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transpose() const;

  // y = A x; throws DimensionError when x.size() != cols().
  std::vector<double> apply(std::span<const double> x) const;
  // Writes A x into y (y.size() == rows()); no allocation.
  void apply_into(std::span<const double> x, std::span<double> y) const;
  // A^T y.
  std::vector<double> apply_transpose(std::span<const double> y) const;

  Matrix operator*(const Matrix& other) const;

  double frobenius_norm() const;
  double trace() const;
  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace specbound
