#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "qbic/field.hpp"
#include "qbic/matrix.hpp"
#include "qbic/qbic_form.hpp"

namespace qbic {

using BigInt = boost::multiprecision::cpp_int;
using FfMatrix = Matrix<FiniteField>;
using FfForm = QBicForm<FiniteField>;

// The field of a form together with a degree-r extension L and the maps
// K -> L and GF(q^2) -> L. For r = 1, L is K itself and K -> L is the identity.
class ScalarExtension {
 public:
  ScalarExtension(const FiniteField& base, std::uint32_t r);

  const FiniteField& base() const { return base_; }
  const FiniteField& field() const { return big_; }
  const FiniteField& fq2() const { return fq2_.small(); }
  std::uint32_t degree() const { return r_; }

  Gf lift(Gf a) const { return to_big_ ? to_big_->lift(a) : a; }
  FfMatrix lift(const FfMatrix& m) const;
  Gf lift_fq2(Gf a) const { return fq2_.lift(a); }
  std::optional<Gf> restrict_fq2(Gf a) const { return fq2_.restrict(a); }
  // GF(p)-basis of the copy of GF(q^2) inside the extension.
  const std::vector<Gf>& fq2_basis() const { return fq2_.image_basis(); }

 private:
  FiniteField base_;
  FiniteField big_;
  std::uint32_t r_;
  std::optional<FieldEmbedding> to_big_;
  FieldEmbedding fq2_;
};

// Hermitian vectors v (B v = twist(B,1)^T v^{(q^2)}) with coordinates in the
// degree-r extension; they form a GF(q^2)-space of dimension d.
struct HermitianSpace {
  ScalarExtension ext;
  FfMatrix basis;  // n × d over ext.field()
  std::size_t dim() const { return basis.cols(); }
  BigInt point_count() const;
};

// Throws CostGuardError when the extension field is not representable.
HermitianSpace hermitian_space(const FfForm& form, std::uint32_t r);

// Gram matrix of β on the Hermitian basis, over GF(q^2).
FfMatrix hermitian_gram(const HermitianSpace& h, const FfForm& form);

// Whether GF(|K|^r) fits the packed element representation.
bool extension_representable(const FiniteField& base, std::uint32_t r);

}  // namespace qbic
