// exactla.hpp
//
// Dense exact linear algebra over Q: reduced row-echelon form, kernels,
// solving and quotient dimensions. Everything downstream (cohomology,
// homology, ideal membership) reduces to these routines.

#pragma once

#include "chainext/rational.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chainext {

using Vec = std::vector<Rat>;

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline Vec& axpy(Vec& y, const Rat& a, const Vec& x) {
  if (y.size() != x.size()) throw std::invalid_argument("axpy: length mismatch");
  if (a.is_zero()) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
  return y;
}

inline Vec operator+(Vec a, const Vec& b) { return axpy(a, Rat(1), b); }
inline Vec operator-(Vec a, const Vec& b) { return axpy(a, Rat(-1), b); }
inline Vec operator*(const Rat& s, Vec v) {
  for (auto& x : v) x *= s;
  return v;
}

class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
  }

  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static RatMatrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    RatMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw std::invalid_argument("from_columns: column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  static RatMatrix from_rows(const std::vector<Vec>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    RatMatrix m(rows.size(), c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != c) throw std::invalid_argument("from_rows: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(r, j) = rows[r][j];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] Vec column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(std::size_t c, const Vec& v) {
    if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  [[nodiscard]] RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  [[nodiscard]] Vec apply(const Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (x[c].is_zero()) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rat& a = (*this)(r, c);
        if (!a.is_zero()) y[r] += a * x[c];
      }
    }
    return y;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product: " + a.shape() + " * " + b.shape());
    RatMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rat& bkj = b(k, j);
          if (!bkj.is_zero()) p(i, j) += aik * bkj;
        }
      }
    return p;
  }

  RatMatrix& operator+=(const RatMatrix& o) {
    check_same_shape(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  RatMatrix& operator-=(const RatMatrix& o) {
    check_same_shape(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(const Rat& s, RatMatrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  [[nodiscard]] std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  /// First (row, col) where the two matrices differ, if any.
  [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> first_difference(const RatMatrix& o) const {
    check_same_shape(o, "compare");
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != o(r, c)) return std::make_pair(r, c);
    return std::nullopt;
  }

private:
  void check_same_shape(const RatMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("matrix ") + op + ": " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

struct RrefResult {
  RatMatrix matrix;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Gauss-Jordan elimination. The result is the unique reduced row-echelon form.
inline RrefResult rref(RatMatrix m) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    const Rat inv = Rat(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rat f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();
  out.matrix = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

/// Basis of the null space, one vector per free column of the rref.
inline std::vector<Vec> kernel_basis(const RatMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = Rat(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = b. Returns nullopt when b is not in the column space.
inline std::optional<Vec> solve(const RatMatrix& m, const Vec& b) {
  if (b.size() != m.rows())
    throw std::invalid_argument("solve: rhs has length " + std::to_string(b.size()) + ", matrix is " + m.shape());
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const RrefResult red = rref(std::move(aug));
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) x[red.pivots[i]] = red.matrix(i, m.cols());
  return x;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is " + m.shape());
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Rat(1);
  }
  const RrefResult red = rref(std::move(aug));
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.matrix(r, n + c);
  return inv;
}

/// dim of ambient / span(sub).
inline std::size_t quotient_dims(const std::vector<Vec>& sub, std::size_t ambient_dim) {
  for (const auto& v : sub)
    if (v.size() != ambient_dim) throw std::invalid_argument("quotient_dims: vector length mismatch");
  if (sub.empty()) return ambient_dim;
  return ambient_dim - rank(RatMatrix::from_columns(sub, ambient_dim));
}

/// Column-space membership test for a batch of vectors against a fixed span.
/// Factorizes the span once, then each query is a reduction against it.
class ColumnSpace {
public:
  explicit ColumnSpace(const RatMatrix& span) : dim_(span.rows()) {
    RrefResult r = rref(span.transpose());
    rows_.reserve(r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) {
      Vec row(dim_);
      for (std::size_t c = 0; c < dim_; ++c) row[c] = r.matrix(i, c);
      rows_.push_back(std::move(row));
    }
    pivots_ = std::move(r.pivots);
  }

  [[nodiscard]] std::size_t dimension() const { return rows_.size(); }

  [[nodiscard]] bool contains(Vec v) const {
    if (v.size() != dim_) throw std::invalid_argument("ColumnSpace::contains: length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rat f = v[pivots_[i]];
      if (!f.is_zero()) axpy(v, -f, rows_[i]);
    }
    return chainext::is_zero(v);
  }

private:
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].pretty();
  os << ")";
  return os.str();
}

}  // namespace chainext
