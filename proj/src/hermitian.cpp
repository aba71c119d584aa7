#include "qbic/hermitian.hpp"

#include <cmath>

#include "qbic/errors.hpp"

namespace qbic {

namespace {

FiniteField make_big(const FiniteField& base, std::uint32_t r) {
  if (!extension_representable(base, r))
    throw CostGuardError("extension of degree " + std::to_string(r) + " over GF(" +
                         std::to_string(base.characteristic()) + "^" + std::to_string(base.degree()) +
                         ") exceeds the packed field size");
  return r == 1 ? base : base.extension(r);
}

// Inverse of a square GF(p) matrix, row-major.
gfp::Mat inverse_mod_p(const gfp::Mat& a, std::uint32_t p) {
  const std::size_t n = a.size();
  gfp::Mat inv(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t t = 0; t < n; ++t) {
    gfp::Poly e(n, 0);
    e[t] = 1;
    const auto x = gfp::solve(a, e, n, p);
    ensure(x.has_value(), "coordinate matrix is singular");
    for (std::size_t i = 0; i < n; ++i) inv[i][t] = (*x)[i];
  }
  return inv;
}

}  // namespace

bool extension_representable(const FiniteField& base, std::uint32_t r) {
  const long double bits = static_cast<long double>(base.degree()) * r * std::log2(static_cast<long double>(base.characteristic()));
  return bits < 62.0L;
}

ScalarExtension::ScalarExtension(const FiniteField& base, std::uint32_t r)
    : base_(base),
      big_(make_big(base, r)),
      r_(r),
      to_big_(r == 1 ? std::nullopt : std::optional<FieldEmbedding>(FieldEmbedding(base, big_))),
      fq2_(FiniteField::base_q2(base.characteristic(), base.q_exponent()), big_) {}

FfMatrix ScalarExtension::lift(const FfMatrix& m) const {
  if (!to_big_) return m;
  FfMatrix out(big_, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_big_->lift(m(i, j));
  return out;
}

BigInt HermitianSpace::point_count() const {
  BigInt q2 = ext.fq2().order();
  BigInt out = 1;
  for (std::size_t i = 0; i < dim(); ++i) out *= q2;
  return out;
}

HermitianSpace hermitian_space(const FfForm& form, std::uint32_t r) {
  if (r == 0) throw InputError("extension degree must be positive");
  ScalarExtension ext(form.field(), r);
  const FiniteField& big = ext.field();
  const FiniteField& fq2 = ext.fq2();
  const std::uint32_t p = big.characteristic();
  const std::size_t n = form.n();
  const std::size_t two_e = fq2.degree();
  const std::size_t kb = big.degree();
  const std::size_t dd = kb / two_e;  // dimension of L over GF(q^2)

  // GF(p)-coordinates of y in the basis w_j z^i, with w_j spanning GF(q^2).
  const Gf z = big.generator();
  std::vector<Gf> zpow(dd);
  zpow[0] = big.one();
  for (std::size_t i = 1; i < dd; ++i) zpow[i] = big.mul(zpow[i - 1], z);
  gfp::Mat coord(kb, std::vector<std::uint32_t>(kb, 0));
  const auto& w = ext.fq2_basis();
  for (std::size_t i = 0; i < dd; ++i)
    for (std::size_t j = 0; j < two_e; ++j) {
      const auto d = big.digits(big.mul(w[j], zpow[i]));
      for (std::size_t r2 = 0; r2 < kb; ++r2) coord[r2][i * two_e + j] = d[r2];
    }
  const gfp::Mat coord_inv = inverse_mod_p(coord, p);
  auto decompose = [&](Gf y) {
    const auto d = big.digits(y);
    std::vector<Gf> out(dd);
    for (std::size_t i = 0; i < dd; ++i) {
      std::vector<std::uint32_t> c(two_e, 0);
      for (std::size_t j = 0; j < two_e; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t s = 0; s < kb; ++s) acc += static_cast<std::uint64_t>(coord_inv[i * two_e + j][s]) * d[s];
        c[j] = static_cast<std::uint32_t>(acc % p);
      }
      out[i] = fq2.from_digits(c);
    }
    return out;
  };

  const FfMatrix b = ext.lift(form.gram());
  const FfMatrix bt1 = twist(b, 1).transpose();
  // Column (j, i) is the image of e_j z^i under x -> B x - B^{[1]T} x^{(q^2)}.
  FfMatrix system(fq2, n * dd, n * dd);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < dd; ++i) {
      const Gf zi = zpow[i];
      const Gf zi2 = big.frobenius(zi, 2);
      for (std::size_t l = 0; l < n; ++l) {
        const Gf val = big.sub(big.mul(b(l, j), zi), big.mul(bt1(l, j), zi2));
        const auto c = decompose(val);
        for (std::size_t i2 = 0; i2 < dd; ++i2) system(l * dd + i2, j * dd + i) = c[i2];
      }
    }
  const FfMatrix ker = null_basis(system);
  FfMatrix basis(big, n, ker.cols());
  for (std::size_t c = 0; c < ker.cols(); ++c)
    for (std::size_t j = 0; j < n; ++j) {
      Gf x = big.zero();
      for (std::size_t i = 0; i < dd; ++i) x = big.add(x, big.mul(ext.lift_fq2(ker(j * dd + i, c)), zpow[i]));
      basis(j, c) = x;
    }
  ensure((b * basis - bt1 * twist(basis, 2)).is_zero(), "Hermitian basis fails its defining equation");
  return HermitianSpace{std::move(ext), std::move(basis)};
}

FfMatrix hermitian_gram(const HermitianSpace& h, const FfForm& form) {
  const FfMatrix gl = restricted_gram(h.ext.lift(form.gram()), h.basis);
  FfMatrix out(h.ext.fq2(), gl.rows(), gl.cols());
  for (std::size_t i = 0; i < gl.rows(); ++i)
    for (std::size_t j = 0; j < gl.cols(); ++j) {
      const auto v = h.ext.restrict_fq2(gl(i, j));
      ensure(v.has_value(), "Hermitian pairing left GF(q^2)");
      out(i, j) = *v;
    }
  return out;
}

}  // namespace qbic
