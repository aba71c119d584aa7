#include "qbic/classification.hpp"

#include "qbic/errors.hpp"
#include "qbic/qbic_form.hpp"

namespace qbic {

namespace {

using Sub = Subspace<FiniteField>;

FfMatrix coordinate_block(const FiniteField& k, std::size_t total, std::size_t start, std::size_t count) {
  FfMatrix m(k, total, count);
  for (std::size_t j = 0; j < count; ++j) m(start + j, j) = k.one();
  return m;
}

FfMatrix hstack_all(const FiniteField& k, std::size_t rows, const std::vector<FfMatrix>& parts) {
  FfMatrix out(k, rows, 0);
  for (const auto& p : parts) out = hstack(out, p);
  return out;
}

// The recognition conditions on a decomposition of k^{mb} into coordinate blocks.
void check_recognition(const FfMatrix& g, unsigned m, std::size_t b) {
  const auto& k = g.field();
  const std::size_t total = g.rows();
  auto block = [&](unsigned i) { return Sub::span(coordinate_block(k, total, (i - 1) * b, b)); };
  ensure(kernel(g) == block(1), "peel: V_1 is not the right kernel");
  ensure(kernel(g.transpose()) == block(m), "peel: V_m is not the left kernel");
  ensure(rank(g.block(0, b, b, b)) == b, "peel: pairing of V_1 with V_2 is degenerate");
  const FfMatrix dual = twist(g, 1).transpose();
  for (unsigned i = 2; i < m; ++i)
    ensure(image(g.columns(i * b, (i + 1) * b)) == image(dual.columns((i - 2) * b, (i - 1) * b)),
           "peel: image condition fails at layer " + std::to_string(i));
}

// Adjusts the layers so only consecutive ones pair, then builds the chain
// basis. Returns T with restricted_gram(g, T) = N_m^{⊕b}.
FfMatrix recognition_basis(const FfMatrix& g, unsigned m, std::size_t b) {
  const auto& k = g.field();
  const std::size_t total = g.rows();
  std::vector<FfMatrix> lay;  // lay[i] for 1 <= i <= m
  lay.push_back(FfMatrix(k, total, 0));
  for (unsigned i = 1; i <= m; ++i) lay.push_back(coordinate_block(k, total, (i - 1) * b, b));
  auto pairing = [&](const FfMatrix& x, const FfMatrix& y) { return twist(x, 1).transpose() * g * y; };
  auto kernel_in = [&](const FfMatrix& span, const FfMatrix& conditions) {
    const FfMatrix out = span * kernel(conditions).basis();
    ensure(out.cols() == b, "peel: adjusted layer has wrong dimension");
    return out;
  };

  if (m % 2 == 1) {
    for (unsigned kk = 1; 2 * kk < m; ++kk) {
      std::vector<FfMatrix> tail(lay.begin() + 2 * kk, lay.end());
      const FfMatrix w = hstack_all(k, total, tail);
      lay[2 * kk] = kernel_in(w, pairing(w, w));
      for (unsigned i = 2 * kk + 2; i <= m; i += 2) {
        const FfMatrix z = hstack(lay[2 * kk + 1], lay[i]);
        lay[i] = kernel_in(z, pairing(lay[2 * kk], z));
      }
    }
  } else {
    std::vector<FfMatrix> next = lay;
    for (unsigned kk = 1; 2 * kk < m; ++kk) {
      std::vector<FfMatrix> evens, odds;
      for (unsigned l = kk; 2 * l <= m; ++l) evens.push_back(lay[2 * l]);
      for (unsigned l = kk + 1; 2 * l <= m; ++l) odds.push_back(lay[2 * l - 1]);
      const FfMatrix z = hstack_all(k, total, evens);
      next[2 * kk] = kernel_in(z, pairing(hstack_all(k, total, odds), z));
    }
    lay = std::move(next);
  }

  std::vector<FfMatrix> chain{lay[1]};
  for (unsigned i = 1; i < m; ++i) {
    const auto inv = inverse(pairing(chain.back(), lay[i + 1]));
    ensure(inv.has_value(), "peel: consecutive layers pair degenerately");
    chain.push_back(lay[i + 1] * *inv);
  }
  FfMatrix t(k, total, total);
  for (std::size_t c = 0; c < b; ++c)
    for (unsigned i = 0; i < m; ++i)
      for (std::size_t r = 0; r < total; ++r) t(r, c * m + i) = chain[i](r, c);
  return t;
}

FfMatrix n_blocks(const FiniteField& k, unsigned m, std::size_t b) {
  TypeSignature t;
  t.add_blocks(m, b);
  return standard_gram(k, t);
}

}  // namespace

PeelResult peel(const FfForm& f, unsigned m) {
  const auto& k = f.field();
  const std::size_t n = f.n();
  const FfMatrix& bm = f.gram();
  const PerpFiltration<FiniteField> perp(f);
  const PerpPrimeFiltration<FiniteField> prime(f);
  const std::size_t b = perp.type().b_at(m);
  if (m == 0 || b == 0) throw InputError("form has no N" + std::to_string(m) + " summand to split off");
  auto d = [&](int j) {
    if (j < 0) return Sub::zero(k, n);
    ensure(prime.descent_level(static_cast<std::size_t>(j)) == 0, "peel needs a descended filtration");
    return prime.descended(static_cast<std::size_t>(j));
  };
  const Sub full = Sub::full(k, n);
  const Sub& p1 = perp.at(1);

  PeelResult out{m, b, FfMatrix(k, n, 0), FfMatrix(k, n, 0), {}};
  if (m == 1) {
    const Sub v = intersect(p1, d(1));
    ensure(v.dim() == b, "peel: radical has wrong dimension");
    out.block_basis = v.basis();
    out.complement = complement_basis(v, full);
    out.layers = {v.basis()};
  } else {
    const int mi = static_cast<int>(m);
    const int eps = m % 2 == 0 ? 1 : -1;
    const FfMatrix v1 = complement_basis(intersect(p1, d(mi + eps - 1)), intersect(p1, d(mi - eps - 1)));
    ensure(v1.cols() == b, "peel: first layer has wrong dimension");
    const Sub x = d(mi + eps - 2);
    const FfMatrix c = complement_basis(sum(Sub::span(v1), d(mi + eps - 1)), full);
    const Sub y = intersect(x, right_orthogonal(bm, Sub::span(twist(c, 1))));
    const FfMatrix v2 = complement_basis(intersect(x, p1), y);
    ensure(v2.cols() == b, "peel: second layer has wrong dimension");
    out.layers = {v1, v2};
    const FfMatrix dual = twist(bm, 1).transpose();
    for (int t = 3; t <= mi; ++t) {
      const Sub s = t % 2 ? intersect(perp.at(t), d(mi - eps - t)) : intersect(perp.at(t - 2), d(mi + eps - t));
      const auto coeffs = solve(bm * s.basis(), dual * twist(out.layers[static_cast<std::size_t>(t - 3)], 2));
      ensure(coeffs.has_value(), "peel: propagation has no solution at layer " + std::to_string(t));
      out.layers.push_back(s.basis() * *coeffs);
    }
    const FfMatrix vp = hstack_all(k, n, out.layers);
    ensure(rank(vp) == m * b, "peel: layers are not independent");
    const FfMatrix g = restricted_gram(bm, vp);
    check_recognition(g, m, b);
    out.block_basis = vp * recognition_basis(g, m, b);

    // Two-sided orthogonal of the block; the left condition is q-linear in u,
    // so it is solved on V^{[1]} and descended.
    const auto left = descent_test(kernel((bm * vp).transpose()));
    ensure(left.has_value(), "peel: orthogonal does not descend");
    const Sub rest = intersect(*left, right_orthogonal(bm, Sub::span(twist(vp, 1))));
    ensure(rest.dim() == n - m * b, "peel: orthogonal complement has wrong dimension");
    out.complement = rest.basis();
  }
  const FfMatrix u = out.transform();
  ensure(rank(u) == n, "peel: block and complement are not complementary");
  const FfMatrix g = restricted_gram(bm, u);
  const std::size_t mb = m * b;
  ensure(g.block(0, 0, mb, mb) == n_blocks(k, m, b), "peel: block Gram is not standard");
  ensure(g.block(0, mb, mb, n - mb).is_zero() && g.block(mb, 0, n - mb, mb).is_zero(), "peel: split is not orthogonal");
  return out;
}

NormalFormCertificate orthonormalize_nonsingular(const FfForm& f, bool allow_extension) {
  const std::size_t n = f.n();
  if (rank(f.gram()) != n) throw InputError("orthonormalization needs a nonsingular form");
  NormalFormCertificate cert{f.gram(), TypeSignature{n, {}}, 1, std::nullopt, std::nullopt, false};

  std::optional<HermitianSpace> h;
  for (std::uint32_t r = 1;; ++r) {
    if (!extension_representable(f.field(), r))
      throw CostGuardError("Hermitian vectors do not span over any representable extension (tried degree < " +
                           std::to_string(r) + ")");
    h.emplace(hermitian_space(f, r));
    if (h->dim() == n) break;
  }
  cert.extension_degree = h->ext.degree();
  if (!allow_extension && cert.extension_degree > 1) return cert;

  const ScalarExtension& ext = h->ext;
  const FiniteField& big = ext.field();
  const FiniteField& fq2 = ext.fq2();
  if (fq2.order() > (std::uint64_t{1} << 24)) throw CostGuardError("GF(q^2) too large to search norms");
  const FfMatrix bl = ext.lift(f.gram());
  auto herm = [&](const FfMatrix& u, const FfMatrix& w) { return (twist(u, 1).transpose() * bl * w)(0, 0); };
  auto scaled = [&](const FfMatrix& u, Gf c) { return u.map([&](Gf x) { return big.mul(x, c); }); };

  std::vector<FfMatrix> rest;
  for (std::size_t j = 0; j < n; ++j) rest.push_back(h->basis.column(j));
  std::vector<FfMatrix> done;
  while (!rest.empty()) {
    std::size_t pick = rest.size();
    for (std::size_t j = 0; j < rest.size() && pick == rest.size(); ++j)
      if (!big.is_zero(herm(rest[j], rest[j]))) pick = j;
    if (pick == rest.size()) {
      // Every remaining vector is isotropic: mix rest[0] with a partner.
      std::size_t partner = 1;
      while (partner < rest.size() && big.is_zero(herm(rest[0], rest[partner]))) ++partner;
      ensure(partner < rest.size(), "Hermitian form is degenerate");
      const Gf h01 = herm(rest[0], rest[partner]);
      for (std::uint64_t idx = 1; idx < fq2.order(); ++idx) {
        const Gf lam = ext.lift_fq2(fq2.element(idx));
        const Gf t = big.mul(lam, h01);
        if (!big.is_zero(big.add(t, big.frobenius(t, 1)))) {
          rest[0] = rest[0] + scaled(rest[partner], lam);
          break;
        }
      }
      ensure(!big.is_zero(herm(rest[0], rest[0])), "no anisotropic combination found");
      pick = 0;
    }
    const FfMatrix u = rest[pick];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    const Gf huu = herm(u, u);
    for (auto& w : rest) w = w - scaled(u, big.div(herm(u, w), huu));
    const Gf goal = big.inv(huu);
    std::optional<Gf> x;
    for (std::uint64_t idx = 1; idx < fq2.order() && !x; ++idx) {
      const Gf cand = ext.lift_fq2(fq2.element(idx));
      if (big.pow(cand, fq2.q() + 1) == goal) x = cand;
    }
    ensure(x.has_value(), "norm equation has no solution in GF(q^2)");
    done.push_back(scaled(u, *x));
  }
  cert.transform = hstack_all(big, n, done);
  cert.ext = ext;
  cert.verified = verify_certificate(cert);
  ensure(cert.verified, "orthonormal basis fails verification");
  return cert;
}

NormalFormCertificate normal_form(const FfForm& f, bool allow_extension) {
  const auto& k = f.field();
  const std::size_t n = f.n();
  const TypeSignature t = type_of(f);
  if (f.gram() == standard_gram(k, t)) {
    NormalFormCertificate cert{f.gram(), t, 1, ScalarExtension(k, 1), FfMatrix::identity(k, n), false};
    cert.verified = verify_certificate(cert);
    return cert;
  }
  FfMatrix residual = FfMatrix::identity(k, n);
  std::vector<FfMatrix> blocks;
  for (const auto& [m, count] : t.b) {
    const FfForm sub(restricted_gram(f.gram(), residual));
    const PeelResult pr = peel(sub, m);
    ensure(pr.b == count, "peel found an unexpected number of blocks");
    blocks.push_back(residual * pr.block_basis);
    residual = residual * pr.complement;
  }
  ensure(residual.cols() == t.a, "nonsingular residue has wrong dimension");
  NormalFormCertificate nonsingular =
      orthonormalize_nonsingular(FfForm(restricted_gram(f.gram(), residual)), allow_extension);

  NormalFormCertificate cert{f.gram(), t, nonsingular.extension_degree, std::nullopt, std::nullopt, false};
  if (nonsingular.needs_extension()) return cert;
  const ScalarExtension& ext = *nonsingular.ext;
  FfMatrix u = ext.lift(residual) * *nonsingular.transform;
  for (const auto& blk : blocks) u = hstack(u, ext.lift(blk));
  cert.ext = ext;
  cert.transform = std::move(u);
  cert.verified = verify_certificate(cert);
  ensure(cert.verified, "normal form certificate fails verification");
  return cert;
}

bool verify_certificate(const NormalFormCertificate& cert) {
  if (!cert.transform || !cert.ext) return false;
  const FfMatrix& u = *cert.transform;
  const std::size_t n = cert.source.rows();
  if (u.rows() != n || u.cols() != n || rank(u) != n) return false;
  return restricted_gram(cert.ext->lift(cert.source), u) == standard_gram(cert.ext->field(), cert.target);
}

IsoResult is_isomorphic(const FfForm& f, const FfForm& g, IsoMode mode) {
  if (f.n() != g.n()) throw InputError("forms have different dimensions");
  if (mode == IsoMode::rational && !(f.field() == g.field()))
    throw InputError("rational comparison needs both forms over the same field");
  if (type_of(f) != type_of(g)) return {IsoVerdict::no, std::nullopt};
  if (mode == IsoMode::geometric) return {IsoVerdict::yes, std::nullopt};
  const auto cf = normal_form(f, false);
  const auto cg = normal_form(g, false);
  if (cf.needs_extension() || cg.needs_extension())
    return {IsoVerdict::geometric_yes_rational_undetermined, std::nullopt};
  const auto ug_inv = inverse(*cg.transform);
  ensure(ug_inv.has_value(), "certificate transform is singular");
  FfMatrix a = *cf.transform * *ug_inv;
  ensure(twisted_congruence(f.gram(), a) == g.gram(), "composed certificates do not match");
  return {IsoVerdict::yes, std::move(a)};
}

}  // namespace qbic
