#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qbic/classification.hpp"
#include "qbic/hermitian.hpp"

using namespace qbic;
using namespace qbic::testing;

TEST_CASE("standard Gram matrices") {
  const auto k = gf4();
  CHECK(standard_gram(k, parse_type("1^2")) == FfMatrix::identity(k, 2));
  CHECK(standard_gram(k, parse_type("N2")) == mat(k, {{"0", "1"}, {"0", "0"}}));
  CHECK(standard_gram(k, parse_type("1+0+N2")) ==
        mat(k, {{"1", "0", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "1"}, {"0", "0", "0", "0"}}));
  CHECK(all_types(5).size() == 19);
}

TEST_CASE("Hermitian spaces of standard forms") {
  const auto k = gf4();
  for (std::size_t n = 1; n <= 4; ++n) {
    const FfForm f(FfMatrix::identity(k, n));
    const auto h = hermitian_space(f, 1);
    CHECK(h.dim() == n);
    CHECK(h.point_count() == BigInt(1) << (2 * n));
    CHECK(hermitian_gram(h, f) == FfMatrix::identity(k, n));
  }
  for (std::uint32_t r = 1; r <= 3; ++r) {
    const auto h2 = hermitian_space(FfForm(jordan_block(k, 2)), r);
    CHECK(h2.dim() == 0);
    CHECK(h2.point_count() == 1);
    CHECK(hermitian_gram(h2, FfForm(jordan_block(k, 2))).rows() == 0);
    const auto h3 = hermitian_space(FfForm(jordan_block(k, 3)), r);
    CHECK(h3.point_count() == BigInt(1) << (2 * r));
  }
}

TEST_CASE("Hermitian spaces of random nonsingular forms") {
  const auto k = gf4();
  std::mt19937_64 rng(21);
  for (int it = 0; it < 15; ++it) {
    const std::size_t n = 1 + it % 3;
    const FfForm f(random_invertible(k, n, rng));
    for (std::uint32_t r = 1; r <= 6; ++r) {
      const auto h = hermitian_space(f, r);
      const FiniteField& big = h.ext.field();
      const FfMatrix bl = h.ext.lift(f.gram());
      // Closure: sums and GF(q^2)-multiples stay Hermitian.
      if (h.dim() >= 1) {
        FfMatrix v = h.basis.column(0);
        if (h.dim() >= 2) v = v + h.basis.column(1).map([&](Gf x) { return big.mul(x, h.ext.lift_fq2(Gf{2})); });
        CHECK((bl * v - twist(bl, 1).transpose() * twist(v, 2)).is_zero());
      }
      const auto hg = hermitian_gram(h, f);
      CHECK(hg.transpose() == twist(hg, 1));
      if (h.dim() == n) CHECK(rank(hg) == n);
    }
  }
}

TEST_CASE("Hermitian spaces split over orthogonal sums") {
  const auto k = gf4();
  std::mt19937_64 rng(22);
  for (int it = 0; it < 10; ++it) {
    const FfForm f(random_rank_at_most(k, 2, it % 3, rng));
    const FfForm g(random_rank_at_most(k, 2, (it + 1) % 3, rng));
    const FfForm fg(block_diag(f.gram(), g.gram()));
    for (std::uint32_t r = 1; r <= 3; ++r)
      CHECK(hermitian_space(fg, r).dim() == hermitian_space(f, r).dim() + hermitian_space(g, r).dim());
  }
}

TEST_CASE("Hermitian space needs a finite field of representable size") {
  const auto k = gf4();
  CHECK_THROWS_AS(hermitian_space(FfForm(FfMatrix::identity(k, 1)), 40), CostGuardError);
}

TEST_CASE("orthonormalization") {
  const auto k = gf4();
  const auto id = orthonormalize_nonsingular(FfForm(FfMatrix::identity(k, 3)), false);
  CHECK(id.extension_degree == 1);
  CHECK(*id.transform == FfMatrix::identity(k, 3));

  // [[z]] needs x with x^3 = z^{-1}; find the least extension by brute force.
  const FfForm zf(mat(k, {{"z"}}));
  std::uint32_t want = 0;
  for (std::uint32_t r = 1; r <= 6 && !want; ++r) {
    const ScalarExtension ext(k, r);
    const Gf goal = ext.field().inv(ext.lift(k.generator()));
    for (std::uint64_t i = 1; i < ext.field().order() && !want; ++i)
      if (ext.field().pow(ext.field().element(i), 3) == goal) want = r;
  }
  CHECK(want == 3);
  const auto no = orthonormalize_nonsingular(zf, false);
  CHECK(no.needs_extension());
  CHECK(no.extension_degree == want);
  const auto yes = orthonormalize_nonsingular(zf, true);
  CHECK(yes.extension_degree == want);
  CHECK(yes.verified);
  CHECK(verify_certificate(yes));

  std::mt19937_64 rng(23);
  for (int it = 0; it < 10; ++it) {
    const auto c = orthonormalize_nonsingular(FfForm(random_invertible(k, 3, rng)), true);
    CHECK(c.verified);
  }
  CHECK_THROWS_AS(orthonormalize_nonsingular(FfForm(jordan_block(k, 2)), true), InputError);
}

TEST_CASE("peel examples") {
  const auto k = gf4();
  std::mt19937_64 rng(24);
  const FfForm f = FfForm(standard_gram(k, parse_type("1+N2"))).transformed(random_invertible(k, 3, rng));
  const auto pr = peel(f, 2);
  CHECK(pr.block_form(f).gram() == jordan_block(k, 2));
  CHECK(pr.rest_form(f).n() == 1);
  CHECK(rank(pr.rest_form(f).gram()) == 1);
  const auto u = pr.transform();
  const auto g = twisted_congruence(f.gram(), u);
  CHECK(g.block(0, 2, 2, 1).is_zero());
  CHECK(g.block(2, 0, 1, 2).is_zero());

  const FfForm n3(jordan_block(k, 3));
  const auto p3 = peel(n3, 3);
  CHECK(p3.block_form(n3).gram() == jordan_block(k, 3));
  CHECK(p3.rest_form(n3).n() == 0);

  const FfForm z(FfMatrix(k, 2, 2));
  const auto p1 = peel(z, 1);
  CHECK(p1.block_form(z).gram() == FfMatrix(k, 2, 2));
  CHECK(p1.rest_form(z).n() == 0);

  CHECK_THROWS_AS(peel(n3, 2), InputError);
}

TEST_CASE("peel recognition conditions on conjugated forms") {
  const auto k = gf4();
  std::mt19937_64 rng(25);
  for (const char* s : {"N3^2+1", "N4+N2+1", "N5+0", "N2^2+N3", "N4^2", "N6+1"}) {
    const auto t = parse_type(s);
    for (int it = 0; it < 4; ++it) {
      const FfForm f = FfForm(standard_gram(k, t)).transformed(random_invertible(k, t.n(), rng));
      for (const auto& [m, c] : t.b) {
        if (m < 2) continue;
        const auto pr = peel(f, m);
        CHECK(pr.b == c);
        REQUIRE(pr.layers.size() == m);
        FfMatrix vp = pr.layers[0];
        for (std::size_t i = 1; i < m; ++i) vp = hstack(vp, pr.layers[i]);
        const auto g = restricted_gram(f.gram(), vp);
        const std::size_t b = c;
        // V_1 is the right kernel and V_m the left kernel of the restriction.
        CHECK(kernel(g).dim() == b);
        CHECK((g * FfMatrix::identity(k, m * b).columns(0, b)).is_zero());
        CHECK((g.transpose() * FfMatrix::identity(k, m * b).columns((m - 1) * b, m * b)).is_zero());
        CHECK(rank(g.block(0, b, b, b)) == b);
        CHECK(pr.block_form(f).gram() == standard_gram(k, [&] {
                TypeSignature x;
                x.add_blocks(m, c);
                return x;
              }()));
        CHECK(type_of(pr.rest_form(f)) == [&] {
          TypeSignature x = t;
          x.remove_blocks(m, c);
          return x;
        }());
      }
    }
  }
}

TEST_CASE("normal form fixed points and round trips") {
  const auto k = gf4();
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& t : all_types(n)) {
      const auto c = normal_form(FfForm(standard_gram(k, t)), false);
      CHECK(c.verified);
      CHECK(c.target == t);
      CHECK(*c.transform == FfMatrix::identity(k, n));
    }
  std::mt19937_64 rng(26);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& t : all_types(n))
      for (int it = 0; it < 5; ++it) {
        const FfForm f = FfForm(standard_gram(k, t)).transformed(random_invertible(k, n, rng));
        const auto c = normal_form(f, false);
        CHECK(c.verified);
        CHECK(c.extension_degree == 1);
        CHECK(c.target == t);
      }
  const auto zc = normal_form(FfForm(FfMatrix(k, 3, 3)), false);
  CHECK(format_type(zc.target) == "0^3");
  CHECK(*zc.transform == FfMatrix::identity(k, 3));
}

TEST_CASE("normal form of random forms, with extension when needed") {
  const auto k = gf4();
  std::mt19937_64 rng(27);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 2 + it % 3;
    const FfForm f(random_rank_at_most(k, n, it % (n + 1), rng));
    const auto c = normal_form(f, true);
    CHECK(c.verified);
    CHECK(c.target == type_of(f));
  }
}

TEST_CASE("isomorphism verdicts") {
  const auto k = gf4();
  std::mt19937_64 rng(28);
  const FfForm n2(jordan_block(k, 2));
  const auto a = random_invertible(k, 2, rng);
  const auto r = is_isomorphic(n2, n2.transformed(a), IsoMode::rational);
  CHECK(r.verdict == IsoVerdict::yes);
  REQUIRE(r.witness.has_value());
  CHECK(twisted_congruence(n2.gram(), *r.witness) == n2.transformed(a).gram());
  CHECK(is_isomorphic(FfForm(FfMatrix::identity(k, 2)), n2, IsoMode::geometric).verdict == IsoVerdict::no);
  const FfForm zz(mat(k, {{"z", "0"}, {"0", "1"}}));
  CHECK(is_isomorphic(FfForm(FfMatrix::identity(k, 2)), zz, IsoMode::geometric).verdict == IsoVerdict::yes);
  CHECK(is_isomorphic(FfForm(FfMatrix::identity(k, 2)), zz, IsoMode::rational).verdict ==
        IsoVerdict::geometric_yes_rational_undetermined);
  CHECK_THROWS_AS(is_isomorphic(n2, FfForm(jordan_block(k, 3)), IsoMode::geometric), InputError);
}
