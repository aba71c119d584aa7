#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbic/errors.hpp"

namespace qbic {

template <class F>
concept Field = requires(const F& f, const typename F::Element& a, unsigned i) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.add(a, a) } -> std::same_as<typename F::Element>;
  { f.sub(a, a) } -> std::same_as<typename F::Element>;
  { f.mul(a, a) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.frobenius(a, i) } -> std::same_as<typename F::Element>;
  { f.qth_root(a) } -> std::same_as<std::optional<typename F::Element>>;
  { f.format(a) } -> std::same_as<std::string>;
  { F::perfect } -> std::convertible_to<bool>;
};

// Dense row-major matrix over F.
template <Field F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix column(std::size_t j) const { return columns(j, j + 1); }
  Matrix columns(std::size_t begin, std::size_t end) const {
    Matrix c(field_, rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j) c(i, j - begin) = (*this)(i, j);
    return c;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    const F& f = a.field_;
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const Element& x = a(i, l);
        if (f.is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!f.is_zero(b(l, j))) c(i, j) = f.add(c(i, j), f.mul(x, b(l, j)));
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return c;
  }

  template <class Fn>
  Matrix map(Fn fn) const {
    Matrix c = *this;
    for (auto& x : c.data_) x = fn(x);
    return c;
  }

 private:
  F field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

template <Field F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw InputError("hstack row mismatch");
  Matrix<F> c(a.field(), a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

template <Field F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> c(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

// Entrywise x -> x^(q^i).
template <Field F>
Matrix<F> twist(const Matrix<F>& m, unsigned i) {
  if (i == 0) return m;
  const F& f = m.field();
  return m.map([&](const auto& x) { return f.frobenius(x, i); });
}

// Reduced row echelon form in place; returns pivot columns.
template <Field F>
std::vector<std::size_t> row_reduce(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t s = r;
    while (s < m.rows() && f.is_zero(m(s, c))) ++s;
    if (s == m.rows()) continue;
    if (s != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(s, j), m(r, j));
    const auto iv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!f.is_zero(m(r, j))) m(r, j) = f.mul(m(r, j), iv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <Field F>
std::size_t rank(Matrix<F> m) {
  return row_reduce(m).size();
}

// Columns spanning {x : m x = 0}, one per free variable (not yet canonical).
template <Field F>
Matrix<F> null_basis(Matrix<F> m) {
  const F& f = m.field();
  const auto piv = row_reduce(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  Matrix<F> out(f, m.cols(), m.cols() - piv.size());
  std::size_t col = 0;
  for (std::size_t fr = 0; fr < m.cols(); ++fr) {
    if (is_piv[fr]) continue;
    out(fr, col) = f.one();
    for (std::size_t i = 0; i < piv.size(); ++i) out(piv[i], col) = f.neg(m(i, fr));
    ++col;
  }
  return out;
}

// Some x with a x = b (free variables set to zero), if consistent.
template <Field F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw InputError("solve dimension mismatch");
  Matrix<F> aug = hstack(a, b);
  const auto piv = row_reduce(aug);
  const F& f = a.field();
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(i, a.cols() + j);
  }
  return x;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (!a.square()) throw InputError("inverse of non-square matrix");
  Matrix<F> aug = hstack(a, Matrix<F>::identity(a.field(), a.rows()));
  const auto piv = row_reduce(aug);
  if (piv.size() < a.rows() || piv[a.rows() - 1] >= a.rows()) return std::nullopt;
  return aug.columns(a.rows(), 2 * a.rows());
}

// A^{[1]T} B A: the Gram matrix of the same form in the basis given by A's columns.
template <Field F>
Matrix<F> twisted_congruence(const Matrix<F>& b, const Matrix<F>& a) {
  if (!b.square() || !a.square() || b.rows() != a.rows()) throw InputError("twisted congruence dimension mismatch");
  if (rank(a) != a.rows()) throw InputError("basis change matrix is singular");
  return twist(a, 1).transpose() * b * a;
}

// Same product for a rectangular basis matrix (restriction to a subspace).
template <Field F>
Matrix<F> restricted_gram(const Matrix<F>& b, const Matrix<F>& basis) {
  return twist(basis, 1).transpose() * b * basis;
}

}  // namespace qbic
