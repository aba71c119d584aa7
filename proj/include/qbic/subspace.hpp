#pragma once

#include <cstddef>
#include <optional>

#include "qbic/errors.hpp"
#include "qbic/matrix.hpp"

namespace qbic {

// Column span in k^n, held as its reduced column echelon basis: pivot rows
// strictly increase, each pivot is 1 and the rest of a pivot row is 0.
template <Field F>
class Subspace {
 public:
  using Mat = Matrix<F>;

  static Subspace span(const Mat& generators) {
    Mat rows = generators.transpose();
    const auto piv = row_reduce(rows);
    return Subspace(rows.block(0, 0, piv.size(), rows.cols()).transpose());
  }
  static Subspace full(const F& f, std::size_t n) { return Subspace(Mat::identity(f, n)); }
  static Subspace zero(const F& f, std::size_t n) { return Subspace(Mat(f, n, 0)); }

  const Mat& basis() const { return basis_; }
  const F& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  bool is_full() const { return dim() == ambient(); }

  bool contains(const Mat& vectors) const {
    check_ambient(vectors.rows());
    return rank(hstack(basis_, vectors)) == dim();
  }
  bool is_subset_of(const Subspace& other) const { return other.contains(basis_); }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  explicit Subspace(Mat basis) : basis_(std::move(basis)) {}
  void check_ambient(std::size_t n) const {
    if (n != ambient()) throw InputError("subspace ambient dimension mismatch");
  }
  Mat basis_;
};

template <Field F>
Subspace<F> kernel(const Matrix<F>& m) {
  return Subspace<F>::span(null_basis(m));
}

template <Field F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::span(m);
}

template <Field F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient() != b.ambient()) throw InputError("subspace ambient dimension mismatch");
  return Subspace<F>::span(hstack(a.basis(), b.basis()));
}

template <Field F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient() != b.ambient()) throw InputError("subspace ambient dimension mismatch");
  const F& f = a.field();
  const auto negb = b.basis().map([&](const auto& x) { return f.neg(x); });
  const Matrix<F> coeffs = null_basis(hstack(a.basis(), negb));
  return Subspace<F>::span(a.basis() * coeffs.block(0, 0, a.dim(), coeffs.cols()));
}

// dim(outer / inner); inner must lie in outer.
template <Field F>
std::size_t quotient_dim(const Subspace<F>& inner, const Subspace<F>& outer) {
  if (!inner.is_subset_of(outer)) throw InputError("quotient of non-nested subspaces");
  return outer.dim() - inner.dim();
}

// Columns of outer's echelon basis, picked greedily, that extend inner to
// inner + outer. A complement of inner in outer when inner ⊆ outer.
template <Field F>
Matrix<F> complement_basis(const Subspace<F>& inner, const Subspace<F>& outer) {
  Matrix<F> acc = inner.basis();
  std::size_t have = rank(acc);
  Matrix<F> picked(outer.field(), outer.ambient(), 0);
  for (std::size_t j = 0; j < outer.dim(); ++j) {
    Matrix<F> trial = hstack(acc, outer.basis().column(j));
    const std::size_t r = rank(trial);
    if (r > have) {
      acc = std::move(trial);
      have = r;
      picked = hstack(picked, outer.basis().column(j));
    }
  }
  return picked;
}

// {w : w^T B s = 0 for all s in S}.
template <Field F>
Subspace<F> left_orthogonal(const Matrix<F>& b, const Subspace<F>& s) {
  if (!b.square() || b.rows() != s.ambient()) throw InputError("orthogonal dimension mismatch");
  return kernel((b * s.basis()).transpose());
}

// {v : t^T B v = 0 for all t in T}.
template <Field F>
Subspace<F> right_orthogonal(const Matrix<F>& b, const Subspace<F>& t) {
  if (!b.square() || b.rows() != t.ambient()) throw InputError("orthogonal dimension mismatch");
  return kernel(t.basis().transpose() * b);
}

// The Frobenius image keeps echelon shape and pivots, so this stays canonical.
template <Field F>
Subspace<F> twist(const Subspace<F>& s, unsigned i) {
  return Subspace<F>::span(twist(s.basis(), i));
}

// S' with twist(S', 1) = S, when every echelon entry has a q-th root.
template <Field F>
std::optional<Subspace<F>> descent_test(const Subspace<F>& s) {
  const F& f = s.field();
  Matrix<F> root(f, s.ambient(), s.dim());
  for (std::size_t i = 0; i < s.ambient(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      auto r = f.qth_root(s.basis()(i, j));
      if (!r) return std::nullopt;
      root(i, j) = std::move(*r);
    }
  return Subspace<F>::span(root);
}

}  // namespace qbic
