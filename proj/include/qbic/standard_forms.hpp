#pragma once

#include "qbic/matrix.hpp"
#include "qbic/type_signature.hpp"

namespace qbic {

// m×m block with ones on the superdiagonal; N_1 is the 1×1 zero block.
template <Field F>
Matrix<F> jordan_block(const F& f, std::size_t m) {
  Matrix<F> b(f, m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) b(i, i + 1) = f.one();
  return b;
}

// 1^a first, then N_m^{b_m} for m increasing.
template <Field F>
Matrix<F> standard_gram(const F& f, const TypeSignature& t) {
  Matrix<F> g(f, t.n(), t.n());
  for (std::size_t i = 0; i < t.a; ++i) g(i, i) = f.one();
  std::size_t at = t.a;
  for (const auto& [m, c] : t.b)
    for (std::size_t r = 0; r < c; ++r, at += m) g.set_block(at, at, jordan_block(f, m));
  return g;
}

}  // namespace qbic
