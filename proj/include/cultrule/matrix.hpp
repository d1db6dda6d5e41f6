#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cultrule {

// Square 0/1 matrix, row-major.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}
  BoolMatrix(std::initializer_list<std::initializer_list<int>> rows);

  static BoolMatrix identity(std::size_t n);
  static BoolMatrix ones(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) { cells_[i * n_ + j] = value ? 1 : 0; }

  BoolMatrix transposed() const;
  std::size_t count() const;

  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double row_sum(std::size_t i) const;
  double col_sum(std::size_t j) const;
  double trace() const;
  Matrix transposed() const;
  bool symmetric(double tol = 0.0) const;

  std::vector<std::vector<double>> to_rows() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(double scale, const Matrix& m);
Matrix operator*(const Matrix& a, const Matrix& b);

// Largest |a(i,j) - b(i,j)|; the shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace cultrule
