// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERIGID_EXACT_LINALG_HPP
#define PERIGID_EXACT_LINALG_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perigid {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den" or "num" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  const std::string num = text.substr(0, slash);
  const std::string den =
      slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  Integer n(num[0] == '+' ? num.substr(1) : num, 10);
  Integer d(den[0] == '+' ? den.substr(1) : den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Dense row-major matrix over an exact scalar type.
template <class Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix rows");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<Scalar> row(std::size_t r) {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const Scalar> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }

  void append_row(std::span<const Scalar> values) {
    if (values.size() != cols_) throw std::invalid_argument("row width mismatch");
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
  }

  /// Appends `other` below this matrix; column counts must agree.
  void append_rows(const Matrix& other) {
    if (other.cols_ != cols_) throw std::invalid_argument("column count mismatch");
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    rows_ += other.rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap(entries_[a * cols_ + c], entries_[b * cols_ + c]);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

namespace detail {

// Fraction-free (Bareiss) row echelon reduction in place. Every entry after
// step r is an (r+1)x(r+1) minor of the input, so all divisions are exact.
inline std::size_t bareiss_rank_in_place(IntegerMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t rank = 0;
  Integer prev = 1;
  Integer scratch;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(a(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    a.swap_rows(pivot, rank);
    const Integer& piv = a(rank, c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const bool lead_zero = sgn(a(r, c)) == 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer& target = a(r, j);
        if (lead_zero) {
          if (sgn(target) == 0) continue;
          mpz_mul(scratch.get_mpz_t(), piv.get_mpz_t(), target.get_mpz_t());
        } else {
          mpz_mul(scratch.get_mpz_t(), piv.get_mpz_t(), target.get_mpz_t());
          mpz_submul(scratch.get_mpz_t(), a(r, c).get_mpz_t(),
                     a(rank, j).get_mpz_t());
        }
        mpz_divexact(target.get_mpz_t(), scratch.get_mpz_t(), prev.get_mpz_t());
      }
      a(r, c) = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact rank over the rationals of an integer matrix.
inline std::size_t integer_rank(IntegerMatrix m) {
  if (m.empty()) return 0;
  return detail::bareiss_rank_in_place(m);
}

/// Rank of the integer vectors `rows`, each of width `width`.
inline std::size_t integer_rank(std::span<const std::vector<std::int64_t>> rows,
                                std::size_t width) {
  IntegerMatrix m(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw std::invalid_argument("row width mismatch");
    for (std::size_t c = 0; c < width; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return integer_rank(std::move(m));
}

/// Exact rank over the rationals. Each row is cleared of denominators
/// (scaling by a nonzero constant preserves rank) before fraction-free
/// elimination.
inline std::size_t rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  IntegerMatrix scaled(m.rows(), m.cols());
  Integer lcm;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    lcm = 1;
    for (const Rational& x : m.row(r)) {
      if (x.get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& x = m(r, c);
      if (lcm == 1) {
        scaled(r, c) = x.get_num();
      } else {
        scaled(r, c) = x.get_num() * (lcm / x.get_den());
      }
    }
  }
  return detail::bareiss_rank_in_place(scaled);
}

}  // namespace perigid

#endif  // PERIGID_EXACT_LINALG_HPP
