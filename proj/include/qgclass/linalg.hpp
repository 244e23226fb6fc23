#pragma once

// Dense exact linear algebra over Scalar.

#include "qgclass/scalars.hpp"

#include <cstddef>
#include <vector>

namespace qgclass {

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);
Vec scaled(const Vec& v, const Scalar& c);
void axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a*x

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  Vec row(std::size_t i) const;

  bool is_zero() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  Matrix scaled(const Scalar& c) const;
  std::size_t nonzeros() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Row-parallel product (OpenMP).  Zero entries of a and b are skipped.
Matrix multiply(const Matrix& a, const Matrix& b);
/// Reference product, single thread, same skipping rule.
Matrix multiply_serial(const Matrix& a, const Matrix& b);
Vec matvec(const Matrix& m, const Vec& x);

/// Incrementally maintained reduced row echelon form of a subspace of
/// Scalar^dim.  Pivot = first nonzero column, so the pivot set is
/// independent of insertion order.
class Echelon {
 public:
  Echelon() = default;
  explicit Echelon(std::size_t dim) : dim_(dim), pivot_row_(dim, npos) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }

  /// Returns true iff v was independent of the current rows.
  bool insert(Vec v);
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  const std::vector<Vec>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;
  std::vector<std::size_t> free_columns() const;
  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t dim_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivot_of_row_;
  std::vector<std::size_t> pivot_row_;
};

std::size_t rank(const Matrix& m);
/// Exact inverse; ConsistencyError if singular.
Matrix inverse(const Matrix& m);
/// Basis of {x : m x = 0}, one vector per free column, free entry = 1.
std::vector<Vec> nullspace(const Matrix& m);

}  // namespace qgclass
