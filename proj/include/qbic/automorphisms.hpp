#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qbic/hermitian.hpp"
#include "qbic/type_signature.hpp"

namespace qbic {

// dim Lie Aut = dim Hom(V, P_1 V) = n · corank.
std::size_t lie_dim(const TypeSignature& t);

// Dimension of the automorphism group scheme of a form of type t.
std::size_t group_dim(const TypeSignature& t);

// Coefficient of b_m(s) in the growth of group_dim(t ⊕ s); m ≥ 1.
std::size_t phi(const TypeSignature& t, unsigned m);

struct PointOptions {
  std::size_t max_samples = 10;
  // Refuse when |K|^{n^2} candidate matrices exceed this.
  std::uint64_t max_candidates = std::uint64_t{1} << 24;
  std::size_t max_n = 3;
  std::size_t jobs = 1;
};

struct PointCount {
  std::uint64_t count = 0;
  std::vector<FfMatrix> samples;  // in enumeration order
};

// Invertible A with twist(A,1)^T · B · A = B, by exhaustive search.
PointCount enumerate_points(const FfForm& f, const PointOptions& opts = {});

// |{φ : β(u, φ v) = 0 for all u, v}|, from the nullity of the linear system.
BigInt lie_points(const FfForm& f);

struct AutReport {
  TypeSignature type;
  std::size_t lie_dim = 0;
  std::size_t group_dim = 0;
  std::optional<FieldSpec> point_field;
  std::optional<std::uint64_t> point_count;
};

AutReport aut_report(const TypeSignature& t);

}  // namespace qbic
