#include "qgclass/linalg.hpp"

#include <algorithm>

namespace qgclass {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

Vec scaled(const Vec& v, const Scalar& c) {
  Vec out(v.size());
  if (c.is_zero()) return out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = v[i] * c;
  return out;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

bool Matrix::is_zero() const { return qgclass::is_zero(data_); }

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ConsistencyError("matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ConsistencyError("matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  return *this;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m(rows_, cols_);
  m.data_ = qgclass::scaled(data_, c);
  return m;
}

std::size_t Matrix::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Scalar& x) { return !x.is_zero(); }));
}

namespace {

void multiply_row(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i) {
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Scalar& x = a(i, k);
    if (x.is_zero()) continue;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const Scalar& y = b(k, j);
      if (!y.is_zero()) c(i, j) += x * y;
    }
  }
}

}  // namespace

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ConsistencyError("matrix shape mismatch in *");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) multiply_row(a, b, c, i);
  return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ConsistencyError("matrix shape mismatch in *");
  Matrix c(a.rows(), b.cols());
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(dynamic) if (n > 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) multiply_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

Vec matvec(const Matrix& m, const Vec& x) {
  if (m.cols() != x.size()) throw ConsistencyError("matrix/vector shape mismatch");
  Vec y(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) y[i] += m(i, j) * x[j];
  }
  return y;
}

// ---------------------------------------------------------------- Echelon

Vec Echelon::reduce(Vec v) const {
  if (v.size() != dim_) throw ConsistencyError("echelon dimension mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivot_of_row_[r];
    if (v[p].is_zero()) continue;
    Scalar c = v[p];
    axpy(v, -c, rows_[r]);
  }
  return v;
}

bool Echelon::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  Scalar inv = v[p].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    Scalar c = row[p];
    axpy(row, -c, v);
  }
  pivot_row_[p] = rows_.size();
  pivot_of_row_.push_back(p);
  rows_.push_back(std::move(v));
  return true;
}

std::vector<std::size_t> Echelon::pivots() const { return pivot_of_row_; }

std::vector<std::size_t> Echelon::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < dim_; ++c)
    if (pivot_row_[c] == npos) out.push_back(c);
  return out;
}

std::size_t rank(const Matrix& m) {
  Echelon e(m.cols());
  for (std::size_t i = 0; i < m.rows() && !e.full(); ++i) e.insert(m.row(i));
  return e.rank();
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ConsistencyError("inverse of a non-square matrix");
  Echelon e(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row = m.row(i);
    row.resize(2 * n);
    row[n + i] = Scalar(1);
    e.insert(std::move(row));
  }
  const auto piv = e.pivots();
  Matrix out(n, n);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] >= n) throw ConsistencyError("inverse of a singular matrix");
    for (std::size_t j = 0; j < n; ++j) out(piv[r], j) = e.rows()[r][n + j];
  }
  if (piv.size() != n) throw ConsistencyError("inverse of a singular matrix");
  return out;
}

std::vector<Vec> nullspace(const Matrix& m) {
  Echelon e(m.cols());
  for (std::size_t i = 0; i < m.rows() && !e.full(); ++i) e.insert(m.row(i));
  std::vector<Vec> basis;
  const auto piv = e.pivots();
  for (std::size_t f : e.free_columns()) {
    Vec x(m.cols());
    x[f] = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (!e.rows()[r][f].is_zero()) x[piv[r]] = -e.rows()[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace qgclass
