#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qbic/hermitian.hpp"
#include "qbic/standard_forms.hpp"
#include "qbic/type_signature.hpp"

namespace qbic {

// Splitting f = f_block ⊥ f_rest with f_block of Gram N_m^{⊕b}.
struct PeelResult {
  unsigned m = 0;
  std::size_t b = 0;
  FfMatrix block_basis;  // n × mb; columns ordered block by block
  FfMatrix complement;   // n × (n − mb), orthogonal to the block on both sides
  // The subspaces V'_1, ..., V'_m before the recognition adjustment (n × b each).
  std::vector<FfMatrix> layers;

  FfMatrix transform() const { return hstack(block_basis, complement); }
  FfForm block_form(const FfForm& f) const { return FfForm(restricted_gram(f.gram(), block_basis)); }
  FfForm rest_form(const FfForm& f) const { return FfForm(restricted_gram(f.gram(), complement)); }
};

// Requires b_m(f) > 0; finite fields only.
PeelResult peel(const FfForm& f, unsigned m);

struct NormalFormCertificate {
  FfMatrix source;  // Gram matrix of the input form
  TypeSignature target;
  std::uint32_t extension_degree = 1;
  // Basis change over the degree-r extension; absent when an extension was
  // needed but not allowed.
  std::optional<ScalarExtension> ext;
  std::optional<FfMatrix> transform;
  bool verified = false;

  bool needs_extension() const { return !transform.has_value(); }
};

// Identity Gram for a nonsingular f, extending scalars only as far as needed.
NormalFormCertificate orthonormalize_nonsingular(const FfForm& f, bool allow_extension);

NormalFormCertificate normal_form(const FfForm& f, bool allow_extension);

// Exact check of twist(U,1)^T · B · U = standard_gram(target) over the extension.
bool verify_certificate(const NormalFormCertificate& cert);

enum class IsoMode { geometric, rational };
enum class IsoVerdict { no, yes, geometric_yes_rational_undetermined };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::no;
  std::optional<FfMatrix> witness;  // twisted_congruence(f, witness) = g, rational mode
};

IsoResult is_isomorphic(const FfForm& f, const FfForm& g, IsoMode mode);

}  // namespace qbic
