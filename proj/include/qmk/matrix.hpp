#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qmk/exactnum.hpp"

namespace qmk {

/// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntegerMatrix identity(std::size_t n);
  /// Throws std::invalid_argument on ragged input.
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntegerMatrix transpose() const;
  /// Fraction-free (Bareiss) elimination. Square matrices only.
  Integer determinant() const;
  bool is_diagonal() const;
  std::vector<std::vector<Integer>> to_rows() const;
  std::string to_string() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Block-diagonal sum of the given matrices.
IntegerMatrix block_diagonal(const std::vector<IntegerMatrix>& blocks);

}  // namespace qmk
