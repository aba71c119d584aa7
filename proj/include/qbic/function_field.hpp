#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qbic/field.hpp"

namespace qbic {

// Dense polynomial over a finite field, coefficients low to high, no trailing zeros.
using GfPoly = std::vector<Gf>;

// Element t^val * num / den of GF(p^k)(t). Canonical: num(0) != 0, den(0) != 0,
// den monic and coprime to num; zero is the empty numerator with val = 0.
struct RatFn {
  std::int64_t val = 0;
  GfPoly num;
  GfPoly den{Gf{1}};

  friend bool operator==(const RatFn&, const RatFn&) = default;
};

class FunctionField {
 public:
  using Element = RatFn;

  explicit FunctionField(FiniteField base) : base_(std::move(base)) {}
  static FunctionField from_spec(const FieldSpec& spec);

  const FiniteField& base() const { return base_; }
  std::uint32_t characteristic() const { return base_.characteristic(); }
  std::uint64_t q() const { return base_.q(); }
  FieldSpec spec() const;

  RatFn zero() const { return {}; }
  RatFn one() const { return constant(base_.one()); }
  RatFn constant(Gf c) const;
  RatFn from_int(std::int64_t n) const { return constant(base_.from_int(n)); }
  RatFn variable() const;  // t
  RatFn from_polys(const GfPoly& num, const GfPoly& den) const;

  RatFn add(const RatFn& a, const RatFn& b) const;
  RatFn sub(const RatFn& a, const RatFn& b) const { return add(a, neg(b)); }
  RatFn neg(const RatFn& a) const;
  RatFn mul(const RatFn& a, const RatFn& b) const;
  RatFn inv(const RatFn& a) const;
  RatFn div(const RatFn& a, const RatFn& b) const { return mul(a, inv(b)); }
  RatFn pow(RatFn a, std::uint64_t n) const;
  bool is_zero(const RatFn& a) const { return a.num.empty(); }

  RatFn frobenius(const RatFn& a, unsigned i = 1) const;
  std::optional<RatFn> qth_root(const RatFn& a) const;
  static constexpr bool perfect = false;

  // Value at t = 0 when the element is regular there.
  std::optional<Gf> at_zero(const RatFn& a) const;
  // Reduced numerator and denominator as plain polynomials.
  std::pair<GfPoly, GfPoly> fraction(const RatFn& a) const;

  std::string format(const RatFn& a) const;
  RatFn parse(std::string_view text) const;

  // Small random element: numerator and denominator of degree <= max_degree.
  template <class Rng>
  RatFn random(Rng& rng, int max_degree = 1) const {
    std::uniform_int_distribution<int> deg(0, max_degree);
    auto poly = [&](int d) {
      GfPoly f(static_cast<std::size_t>(d) + 1);
      for (auto& c : f) c = base_.random(rng);
      return f;
    };
    GfPoly den = poly(deg(rng));
    while (std::all_of(den.begin(), den.end(), [](Gf c) { return c.v == 0; })) den = poly(deg(rng));
    return from_polys(poly(deg(rng)), den);
  }

  friend bool operator==(const FunctionField& a, const FunctionField& b) { return a.base_ == b.base_; }

 private:
  RatFn normalize(std::int64_t val, GfPoly num, GfPoly den) const;
  FiniteField base_;
};

// Polynomial helpers over a finite field.
namespace poly {
void trim(GfPoly& f);
GfPoly add(const FiniteField& k, const GfPoly& a, const GfPoly& b);
GfPoly mul(const FiniteField& k, const GfPoly& a, const GfPoly& b);
GfPoly scale(const FiniteField& k, const GfPoly& a, Gf c);
// Quotient and remainder.
std::pair<GfPoly, GfPoly> divmod(const FiniteField& k, const GfPoly& a, const GfPoly& b);
GfPoly gcd(const FiniteField& k, GfPoly a, GfPoly b);  // monic
std::string format(const FiniteField& k, const GfPoly& f, char var);
}  // namespace poly

}  // namespace qbic
