#pragma once

#include <random>
#include <string>
#include <vector>

#include "qbic/field.hpp"
#include "qbic/function_field.hpp"
#include "qbic/matrix.hpp"
#include "qbic/matrix_io.hpp"
#include "qbic/type_signature.hpp"

namespace qbic::testing {

inline FiniteField gf4() { return FiniteField::make(2, 1, 2); }
inline FunctionField gf4t() { return FunctionField(gf4()); }

template <Field F>
Matrix<F> mat(const F& f, const std::vector<std::vector<std::string>>& rows) {
  return matrix_from_rows(f, rows);
}

template <Field F>
Matrix<F> col(const F& f, const std::vector<std::string>& entries) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : entries) rows.push_back({e});
  return matrix_from_rows(f, rows);
}

template <class Rng>
Matrix<FiniteField> random_matrix(const FiniteField& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix<FiniteField> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.random(rng);
  return m;
}

template <class Rng>
Matrix<FunctionField> random_matrix(const FunctionField& f, std::size_t r, std::size_t c, Rng& rng,
                                    int max_degree = 1, double zero_prob = 0.3) {
  Matrix<FunctionField> m(f, r, c);
  std::bernoulli_distribution zero(zero_prob);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = zero(rng) ? f.zero() : f.random(rng, max_degree);
  return m;
}

template <Field F, class Rng>
Matrix<F> random_invertible(const F& f, std::size_t n, Rng& rng) {
  for (;;) {
    auto a = random_matrix(f, n, n, rng);
    if (rank(a) == n) return a;
  }
}

// Product of a random n×r and r×n matrix: rank at most r.
template <class Rng>
Matrix<FiniteField> random_rank_at_most(const FiniteField& f, std::size_t n, std::size_t r, Rng& rng) {
  return random_matrix(f, n, r, rng) * random_matrix(f, r, n, rng);
}

// Every type of dimension exactly `budget` with blocks of size <= max_block.
// Test-side enumerator, independent of the moduli module.
inline std::vector<TypeSignature> all_types(unsigned max_block, std::size_t budget) {
  std::vector<TypeSignature> out;
  if (max_block == 0) {
    TypeSignature t;
    t.a = budget;
    out.push_back(t);
    return out;
  }
  for (std::size_t c = 0; c * max_block <= budget; ++c)
    for (auto t : all_types(max_block - 1, budget - c * max_block)) {
      t.add_blocks(max_block, c);
      out.push_back(t);
    }
  return out;
}

inline std::vector<TypeSignature> all_types(std::size_t n) { return all_types(static_cast<unsigned>(n), n); }

}  // namespace qbic::testing
