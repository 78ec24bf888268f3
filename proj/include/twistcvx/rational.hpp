#pragma once

// Exact rational vectors and small dense matrices. Everything in the root
// system layer is computed with these; doubles only appear at the boundary
// (folding, matrix realization).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistcvx/error.hpp"

namespace twistcvx {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using RVec = std::vector<Rational>;

inline Rational rat(long long p, long long q = 1) { return Rational(p) / Rational(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::vector<double> to_double(const RVec& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const Rational& q) { return to_double(q); });
  return out;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in rational '" + text + "'");
    return Rational(num) / Rational(den);
  } catch (const std::runtime_error&) {
    throw InputError("cannot parse rational '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// vector helpers

inline Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RVec operator+(RVec a, const RVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline RVec operator-(RVec a, const RVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline RVec operator-(RVec a) {
  for (auto& x : a) x = -x;
  return a;
}

// Constrained so that unrelated types (Eigen expressions in particular) never
// probe Boost's converting constructors during overload resolution.
template <class Scalar>
  requires std::same_as<Scalar, Rational> || boost::multiprecision::is_number_expression<Scalar>::value
RVec operator*(const Scalar& s, RVec a) {
  for (auto& x : a) x *= s;
  return a;
}

inline bool is_zero(const RVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

inline RVec unit_vector(std::size_t dim, std::size_t i) {
  RVec v(dim, Rational(0));
  v[i] = 1;
  return v;
}

// ---------------------------------------------------------------------------
// dense matrix

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RMatrix identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static RMatrix from_columns(const std::vector<RVec>& cols) {
    if (cols.empty()) return {};
    RMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    return m;
  }

  static RMatrix from_rows(const std::vector<RVec>& rows) {
    if (rows.empty()) return {};
    RMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RVec row(std::size_t i) const { return RVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  RVec col(std::size_t j) const {
    RVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  RMatrix transpose() const {
    RMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RVec operator*(const RVec& v) const {
    RVec out(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  RMatrix operator*(const RMatrix& b) const {
    RMatrix out(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a * b(k, j);
      }
    return out;
  }

  RMatrix operator-(const RMatrix& b) const {
    RMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  RMatrix operator+(const RMatrix& b) const {
    RMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }

  bool operator==(const RMatrix& b) const { return rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_; }

  const std::vector<Rational>& data() const { return data_; }

  std::vector<double> to_double_row_major() const { return twistcvx::to_double(data_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RMatrix m) { return row_reduce(m).size(); }

/// Basis of the span of the given vectors (RREF rows, so the result is canonical).
inline std::vector<RVec> span_basis(const std::vector<RVec>& vectors) {
  if (vectors.empty()) return {};
  RMatrix m = RMatrix::from_rows(vectors);
  const auto pivots = row_reduce(m);
  std::vector<RVec> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

/// Basis of {x : m x = 0}.
inline std::vector<RVec> nullspace(const RMatrix& a) {
  RMatrix m = a;
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RVec v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a x = b for square nonsingular a; nullopt if singular.
inline std::optional<RVec> solve(const RMatrix& a, const RVec& b) {
  const std::size_t n = a.rows();
  RMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  RVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

inline std::optional<RMatrix> inverse(const RMatrix& a) {
  const std::size_t n = a.rows();
  RMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Orthogonal projector (standard dot product) onto the span of `basis`.
inline RMatrix orthogonal_projector(const std::vector<RVec>& basis, std::size_t dim) {
  if (basis.empty()) return RMatrix(dim, dim);
  const RMatrix b = RMatrix::from_columns(basis);
  const RMatrix bt = b.transpose();
  const auto gram_inv = inverse(bt * b);
  if (!gram_inv) throw InternalError("orthogonal_projector: basis is linearly dependent");
  return b * (*gram_inv) * bt;
}

/// Least common multiple of the denominators of `v`.
inline Integer common_denominator(const RVec& v) {
  Integer l = 1;
  for (const auto& q : v) {
    const Integer d = boost::multiprecision::denominator(q);
    l = boost::multiprecision::lcm(l, d);
  }
  return l;
}

/// Row-style Hermite normal form of the integer lattice generated by `gens`
/// (all of equal length). Returns a basis (nonzero rows, echelon form).
inline std::vector<std::vector<Integer>> hermite_basis(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c over rows r..end until a single nonzero entry remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const Integer q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      // reduce entries above the pivot into [0, pivot)
      Integer q = rows[i][c] / rows[r][c];
      if (rows[i][c] - q * rows[r][c] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace twistcvx
