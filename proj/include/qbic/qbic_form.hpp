#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qbic/errors.hpp"
#include "qbic/matrix.hpp"
#include "qbic/subspace.hpp"
#include "qbic/type_signature.hpp"

namespace qbic {

// A q-bic form given by its Gram matrix: gram(i, j) = β(e_i^{[1]}, e_j), so
// β(x, y) = twist(x, 1)^T · gram · y.
template <Field F>
class QBicForm {
 public:
  explicit QBicForm(Matrix<F> gram) : gram_(std::move(gram)) {
    if (!gram_.square()) throw InputError("Gram matrix must be square");
  }

  const Matrix<F>& gram() const { return gram_; }
  const F& field() const { return gram_.field(); }
  std::size_t n() const { return gram_.rows(); }

  // β(x, y) for column matrices of size n, returned as a 1x1 matrix entry.
  typename F::Element pair(const Matrix<F>& x, const Matrix<F>& y) const {
    return (twist(x, 1).transpose() * gram_ * y)(0, 0);
  }

  QBicForm transformed(const Matrix<F>& a) const { return QBicForm(twisted_congruence(gram_, a)); }

 private:
  Matrix<F> gram_;
};

// P_{-1} = 0, P_0 = V, P_i = {v : β(P_{i-1}^{[1]}, v) = 0}. Odd pieces grow,
// even pieces shrink; once P_i = P_{i-2} the chains are constant.
template <Field F>
class PerpFiltration {
 public:
  explicit PerpFiltration(const QBicForm<F>& form) {
    const F& f = form.field();
    const std::size_t n = form.n();
    pieces_.push_back(Subspace<F>::zero(f, n));
    pieces_.push_back(Subspace<F>::full(f, n));
    for (std::size_t step = 0;; ++step) {
      ensure(step <= 2 * n + 4, "perp filtration failed to stabilize");
      const auto next = right_orthogonal(form.gram(), twist(pieces_.back(), 1));
      const bool stable = next == pieces_[pieces_.size() - 2];
      pieces_.push_back(next);
      if (stable) break;
    }
  }

  // P_i for any i >= -1.
  const Subspace<F>& at(int i) const {
    ensure(i >= -1, "filtration index below -1");
    const int last = static_cast<int>(pieces_.size()) - 2;
    while (i > last) i -= 2;
    return pieces_[static_cast<std::size_t>(i + 1)];
  }
  // First index i with P_i = P_{i-2}.
  int length() const { return static_cast<int>(pieces_.size()) - 2; }
  const Subspace<F>& p_minus() const { return at(length() % 2 ? length() : length() - 1); }
  const Subspace<F>& p_plus() const { return at(length() % 2 ? length() - 1 : length()); }

  std::size_t a_m(unsigned m) const {
    const int mi = static_cast<int>(m);
    if (m % 2) return quotient_dim(at(mi - 2), at(mi));
    return quotient_dim(at(mi), at(mi - 2));
  }

  TypeSignature type() const {
    TypeSignature t;
    t.a = quotient_dim(p_minus(), p_plus());
    const unsigned top = static_cast<unsigned>(length()) + 2;
    for (unsigned m = 1; m <= top; ++m) {
      const std::size_t am = a_m(m), an = a_m(m + 1);
      ensure(am >= an, "a_m must be non-increasing");
      t.add_blocks(m, am - an);
    }
    return t;
  }

 private:
  std::vector<Subspace<F>> pieces_;
};

// P'_0 = V and P'_i ⊆ V^{[i]} the left orthogonal of P'_{i-1} under β^{[i-1]}.
// Pieces are kept in V^{[i]} coordinates together with their descent levels.
template <Field F>
class PerpPrimeFiltration {
 public:
  explicit PerpPrimeFiltration(const QBicForm<F>& form) {
    const F& f = form.field();
    const std::size_t n = form.n();
    pieces_.push_back(Subspace<F>::full(f, n));
    for (std::size_t i = 1;; ++i) {
      ensure(i <= 2 * n + 4, "perp-prime filtration failed to stabilize");
      pieces_.push_back(left_orthogonal(twist(form.gram(), static_cast<unsigned>(i - 1)), pieces_.back()));
      if (i >= 2 && pieces_[i] == twist(pieces_[i - 2], 2)) break;
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      std::size_t level = i;
      Subspace<F> cur = pieces_[i];
      while (level > 0) {
        auto root = descent_test(cur);
        if (!root) break;
        cur = std::move(*root);
        --level;
      }
      levels_.push_back(level);
      descended_.push_back(std::move(cur));
    }
  }

  // P'_i in V^{[i]} coordinates, i >= 0.
  Subspace<F> on_twist(std::size_t i) const {
    std::size_t j = i;
    const std::size_t last = pieces_.size() - 1;
    while (j > last) j -= 2;
    return twist(pieces_[j], static_cast<unsigned>(i - j));
  }
  // Minimal j such that P'_i descends to V^{[j]}.
  std::size_t descent_level(std::size_t i) const {
    std::size_t j = i;
    while (j >= levels_.size()) j -= 2;
    return levels_[j];
  }
  // P'_i pulled back to V^{[descent_level(i)]}; equals P'_i on V over perfect fields.
  const Subspace<F>& descended(std::size_t i) const {
    std::size_t j = i;
    while (j >= descended_.size()) j -= 2;
    return descended_[j];
  }
  std::size_t computed() const { return pieces_.size(); }
  std::size_t nu() const { return *std::max_element(levels_.begin(), levels_.end()); }

 private:
  std::vector<Subspace<F>> pieces_;
  std::vector<std::size_t> levels_;
  std::vector<Subspace<F>> descended_;
};

template <Field F>
TypeSignature type_of(const QBicForm<F>& form) {
  return PerpFiltration<F>(form).type();
}

template <Field F>
std::pair<std::size_t, std::size_t> rank_corank(const QBicForm<F>& form) {
  const std::size_t r = rank(form.gram());
  return {r, form.n() - r};
}

// For S ⊆ V: the w in V^{[1]} with β(w, S) = 0 and β^{[1]}(S^{[2]}, w) = 0.
template <Field F>
Subspace<F> total_orthogonal(const QBicForm<F>& form, const Subspace<F>& s) {
  return intersect(left_orthogonal(form.gram(), s), right_orthogonal(twist(form.gram(), 1), twist(s, 2)));
}

template <Field F>
Subspace<F> radical(const QBicForm<F>& form) {
  return total_orthogonal(form, Subspace<F>::full(form.field(), form.n()));
}

template <Field F>
std::size_t nu_index(const QBicForm<F>& form) {
  if (F::perfect) return 0;
  return PerpPrimeFiltration<F>(form).nu();
}

// Twist level on which the perp-prime filtration is guaranteed to descend.
inline std::size_t nu_zero_bound(const TypeSignature& t) {
  if (!t.degenerate()) throw InputError("nu0 is undefined for a nonsingular type");
  const unsigned mu = t.max_block();
  bool even_blocks = false;
  for (const auto& [m, c] : t.b) even_blocks = even_blocks || (m % 2 == 0);
  if (mu > 1 && !even_blocks) return mu - 2;
  if (mu % 2 == 1 || t.a == 0) return mu - 1;
  return mu;
}

}  // namespace qbic
