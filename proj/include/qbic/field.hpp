#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qbic {

enum class FieldKind { finite, rational_function };

// Textual description of a coefficient field: "p^k[(t)] q=p^e [mod=[c0,...,ck]]".
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::uint32_t k = 2;
  std::vector<std::uint32_t> modulus;  // constant term first; empty selects the default
  FieldKind kind = FieldKind::finite;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

FieldSpec parse_field_spec(std::string_view text);
std::string to_string(const FieldSpec& spec);
// "2^2" or "2^2(t)".
std::string short_name(const FieldSpec& spec);

bool is_prime(std::uint64_t n);

namespace gfp {
// Dense polynomials over the prime field, coefficients low to high.
using Poly = std::vector<std::uint32_t>;
bool is_irreducible(const Poly& f, std::uint32_t p);
// Shipped table for small fields, otherwise the first irreducible monic
// polynomial when enumerating c0 + c1 p + ... + c_{k-1} p^{k-1} upward.
Poly default_modulus(std::uint32_t p, std::uint32_t k);

// Row-major matrices over GF(p) for the occasional prime-field linear solve.
using Mat = std::vector<std::vector<std::uint32_t>>;
std::vector<Poly> kernel(Mat rows, std::size_t ncols, std::uint32_t p);
std::optional<Poly> solve(const Mat& a, const Poly& b, std::size_t ncols, std::uint32_t p);
}  // namespace gfp

// Element of GF(p^k) packed as the integer sum c_i p^i of its coordinates in
// the power basis of the generator z.
struct Gf {
  std::uint64_t v = 0;
  friend auto operator<=>(const Gf&, const Gf&) = default;
};

namespace detail {
struct GfImpl;
}

// GF(p^k) with q = p^e and 2e | k. Cheap to copy; instances share tables.
class FiniteField {
 public:
  using Element = Gf;

  static FiniteField make(std::uint32_t p, std::uint32_t e, std::uint32_t k,
                          std::vector<std::uint32_t> modulus = {});
  static FiniteField from_spec(const FieldSpec& spec);
  // GF(q^2) itself.
  static FiniteField base_q2(std::uint32_t p, std::uint32_t e);

  std::uint32_t characteristic() const;
  std::uint32_t q_exponent() const;
  std::uint32_t degree() const;
  std::uint64_t order() const;
  std::uint64_t q() const;
  const std::vector<std::uint32_t>& modulus() const;
  FieldSpec spec() const;

  // Degree-r extension with the default modulus of degree k*r.
  FiniteField extension(std::uint32_t r) const;

  Gf zero() const { return {0}; }
  Gf one() const { return {1}; }
  Gf from_int(std::int64_t n) const;
  Gf generator() const;  // z
  Gf element(std::uint64_t index) const;  // 0 <= index < order

  Gf add(Gf a, Gf b) const;
  Gf sub(Gf a, Gf b) const;
  Gf neg(Gf a) const;
  Gf mul(Gf a, Gf b) const;
  Gf inv(Gf a) const;
  Gf div(Gf a, Gf b) const { return mul(a, inv(b)); }
  Gf pow(Gf a, std::uint64_t n) const;
  bool is_zero(Gf a) const { return a.v == 0; }

  Gf frobenius(Gf a, unsigned i = 1) const;  // a^(q^i)
  std::optional<Gf> qth_root(Gf a) const;    // always engaged
  static constexpr bool perfect = true;

  std::vector<std::uint32_t> digits(Gf a) const;
  Gf from_digits(const std::vector<std::uint32_t>& d) const;

  std::string format(Gf a) const;
  Gf parse(std::string_view text) const;

  template <class Rng>
  Gf random(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, order() - 1);
    return {dist(rng)};
  }

  friend bool operator==(const FiniteField& a, const FiniteField& b);

 private:
  explicit FiniteField(std::shared_ptr<const detail::GfImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::GfImpl> impl_;
};

// Embedding of a subfield `small` into `big` sending z to a fixed root of
// small's modulus (the least root in packed order).
class FieldEmbedding {
 public:
  FieldEmbedding(FiniteField small, FiniteField big);

  const FiniteField& small() const { return small_; }
  const FiniteField& big() const { return big_; }
  Gf lift(Gf a) const;
  std::optional<Gf> restrict(Gf b) const;
  // GF(p)-basis of the image: lift(z^i), i < degree(small).
  const std::vector<Gf>& image_basis() const { return basis_; }

 private:
  FiniteField small_;
  FiniteField big_;
  std::vector<Gf> basis_;
};

}  // namespace qbic
