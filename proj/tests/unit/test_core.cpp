#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qbic/qbic_form.hpp"
#include "qbic/standard_forms.hpp"

using namespace qbic;
using namespace qbic::testing;

namespace {

using FF = FiniteField;
using Form = QBicForm<FF>;

Subspace<FF> coords(const FF& k, std::size_t n, std::initializer_list<std::size_t> idx) {
  Matrix<FF> m(k, n, idx.size());
  std::size_t j = 0;
  for (auto i : idx) m(i, j++) = k.one();
  return Subspace<FF>::span(m);
}

// Rank-one 2×2 oracle: B = u v^T is N2 exactly when p^{(q)} · u != 0 for p
// spanning the kernel of v^T; otherwise it is 1+0.
std::string oracle_type_2x2(const Matrix<FF>& b) {
  const auto& k = b.field();
  const std::size_t r = rank(b);
  if (r == 2) return "1^2";
  if (r == 0) return "0^2";
  Matrix<FF> u(k, 2, 1), v(k, 1, 2);
  const std::size_t row = k.is_zero(b(0, 0)) && k.is_zero(b(0, 1)) ? 1 : 0;
  v(0, 0) = b(row, 0);
  v(0, 1) = b(row, 1);
  const std::size_t c = k.is_zero(v(0, 0)) ? 1 : 0;
  u(0, 0) = k.div(b(0, c), v(0, c));
  u(1, 0) = k.div(b(1, c), v(0, c));
  Matrix<FF> p(k, 2, 1);
  p(0, 0) = v(0, 1);
  p(1, 0) = k.neg(v(0, 0));
  const auto val = (twist(p, 1).transpose() * u)(0, 0);
  return k.is_zero(val) ? "0+1" : "N2";
}

}  // namespace

TEST_CASE("perp filtration of N3") {
  const auto k = gf4();
  const Form f(jordan_block(k, 3));
  const PerpFiltration<FF> p(f);
  CHECK(p.at(-1) == Subspace<FF>::zero(k, 3));
  CHECK(p.at(0) == Subspace<FF>::full(k, 3));
  CHECK(p.at(1) == coords(k, 3, {0}));
  CHECK(p.at(2) == coords(k, 3, {0, 2}));
  CHECK(p.at(3) == coords(k, 3, {0, 2}));
  CHECK(p.p_minus() == coords(k, 3, {0, 2}));
  CHECK(p.p_plus() == coords(k, 3, {0, 2}));
  CHECK(p.a_m(1) == 1);
  CHECK(p.a_m(2) == 1);
  CHECK(p.a_m(3) == 1);
  CHECK(p.a_m(4) == 0);
  CHECK(format_type(p.type()) == "N3");

  const PerpPrimeFiltration<FF> pp(f);
  CHECK(pp.descended(1) == coords(k, 3, {2}));
  CHECK(pp.descended(2) == coords(k, 3, {0, 2}));
  CHECK(pp.nu() == 0);
}

TEST_CASE("nonsingular and zero forms") {
  const auto k = gf4();
  std::mt19937_64 rng(9);
  const Form ns(random_invertible(k, 4, rng));
  const PerpFiltration<FF> p(ns);
  CHECK(p.at(1).dim() == 0);
  CHECK(p.p_minus().dim() == 0);
  CHECK(p.p_plus().is_full());
  CHECK(type_of(ns).a == 4);
  CHECK(radical(ns).dim() == 0);
  const PerpPrimeFiltration<FF> pp(ns);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK((pp.on_twist(i).dim() == 0 || pp.on_twist(i).is_full()));
    CHECK(pp.descent_level(i) == 0);
  }

  const Form z(Matrix<FF>(k, 3, 3));
  const PerpFiltration<FF> pz(z);
  CHECK(pz.at(1).is_full());
  CHECK(pz.at(2).is_full());
  CHECK(format_type(type_of(z)) == "0^3");
  CHECK(radical(z).is_full());
  CHECK(rank_corank(z) == std::pair<std::size_t, std::size_t>{0, 3});
}

TEST_CASE("radical of 0+1 is one-dimensional") {
  const auto k = gf4();
  const Form f(mat(k, {{"0", "0"}, {"0", "1"}}));
  CHECK(radical(f) == coords(k, 2, {0}));
}

TEST_CASE("type of standard forms and their conjugates") {
  const auto k = gf4();
  std::mt19937_64 rng(10);
  for (const char* s : {"1^3", "N3", "0+1^2+N2", "N2^2+1", "0^2+N3", "N5", "1+N4", "N2+N3"}) {
    const auto t = parse_type(s);
    const Form f(standard_gram(k, t));
    CHECK(type_of(f) == t);
    for (int it = 0; it < 10; ++it) CHECK(type_of(f.transformed(random_invertible(k, t.n(), rng))) == t);
  }
  const auto t = type_of(Form(standard_gram(k, parse_type("1+N2"))).transformed(random_invertible(k, 3, rng)));
  CHECK(t.a == 1);
  CHECK(t.b_at(2) == 1);
}

TEST_CASE("exhaustive 2x2 over GF(4) matches the rank-one oracle") {
  const auto k = gf4();
  std::map<std::string, int> counts;
  for (std::uint64_t code = 0; code < 256; ++code) {
    Matrix<FF> b(k, 2, 2);
    for (std::size_t i = 0; i < 4; ++i) b(i / 2, i % 2) = k.element((code >> (2 * i)) & 3);
    const auto t = format_type(type_of(Form(b)));
    CHECK(t == oracle_type_2x2(b));
    ++counts[t];
  }
  CHECK(counts == std::map<std::string, int>{{"1^2", 180}, {"N2", 60}, {"0+1", 15}, {"0^2", 1}});
}

TEST_CASE("type invariants on random forms") {
  const auto k = gf4();
  std::mt19937_64 rng(12);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 2 + it % 5;
    const Form f(random_rank_at_most(k, n, it % 4 == 0 ? n : it % n, rng));
    const auto t = type_of(f);
    CHECK(t.n() == n);
    CHECK(t.corank() == rank_corank(f).second);
    CHECK(type_of(f.transformed(random_invertible(k, n, rng))) == t);

    const PerpFiltration<FF> p(f);
    const PerpPrimeFiltration<FF> pp(f);
    // b_m from P_1 ∩ P'_• dimensions.
    auto cap_dim = [&](int j) -> std::size_t {
      if (j < 0) return 0;
      return intersect(p.at(1), pp.descended(static_cast<std::size_t>(j))).dim();
    };
    for (unsigned m = 1; m <= n + 1; ++m) {
      const int eps = m % 2 ? -1 : 1;
      const int mi = static_cast<int>(m);
      CHECK(t.b_at(m) == cap_dim(mi - eps - 1) - cap_dim(mi + eps - 1));
    }
    // Odd-block count formula.
    std::size_t odd = 0;
    for (int kk = 1; 2 * kk - 1 <= static_cast<int>(n) + 2; ++kk) {
      odd += t.b_at(static_cast<unsigned>(2 * kk - 1));
      CHECK(intersect(twist(p.at(2 * kk - 1), 1), pp.on_twist(1)).dim() == odd);
    }
    // P_- is the radical of the restriction to P_+, and the induced form on P_+/P_- is nonsingular.
    const auto& pm = p.p_minus();
    const auto& pl = p.p_plus();
    CHECK(pm.is_subset_of(pl));
    const auto g = restricted_gram(f.gram(), pl.basis());
    CHECK(Subspace<FF>::span(pl.basis() * kernel(g).basis()) == pm);
    CHECK(Subspace<FF>::span(twist(pl.basis(), 1) * kernel(g.transpose()).basis()) == twist(pm, 1));
    const auto c = complement_basis(pm, pl);
    CHECK(rank(restricted_gram(f.gram(), c)) == c.cols());
    CHECK(nu_index(f) == 0);
    CHECK(pp.nu() == 0);
  }
}

TEST_CASE("orthogonal sums split filtrations") {
  const auto k = gf4();
  std::mt19937_64 rng(13);
  for (int it = 0; it < 30; ++it) {
    const Form f(random_rank_at_most(k, 3, it % 3, rng));
    const Form g(random_rank_at_most(k, 2, it % 2, rng));
    const Form fg(block_diag(f.gram(), g.gram()));
    CHECK(type_of(fg) == direct_sum(type_of(f), type_of(g)));
    const PerpFiltration<FF> pf(f), pg(g), pfg(fg);
    for (int i = -1; i < 8; ++i)
      CHECK(pfg.at(i) == Subspace<FF>::span(block_diag(pf.at(i).basis(), pg.at(i).basis())));
    const PerpPrimeFiltration<FF> qf(f), qg(g), qfg(fg);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(qfg.on_twist(i) == Subspace<FF>::span(block_diag(qf.on_twist(i).basis(), qg.on_twist(i).basis())));
  }
}

TEST_CASE("symmetry of filtration intersections") {
  const auto k = gf4();
  std::mt19937_64 rng(14);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 2 + it % 4;
    const Form f(random_rank_at_most(k, n, it % n, rng));
    const PerpFiltration<FF> p(f);
    const PerpPrimeFiltration<FF> pp(f);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        const auto dij = intersect(twist(p.at(static_cast<int>(i)), static_cast<unsigned>(j)), pp.on_twist(j)).dim();
        const auto dji = intersect(twist(p.at(static_cast<int>(j)), static_cast<unsigned>(i)), pp.on_twist(i)).dim();
        CHECK(dij == dji);
      }
  }
}

TEST_CASE("nu0 cases") {
  CHECK(nu_zero_bound(parse_type("N3")) == 1);
  CHECK(nu_zero_bound(parse_type("N2")) == 1);
  CHECK(nu_zero_bound(parse_type("1+N2")) == 2);
  CHECK(nu_zero_bound(parse_type("0")) == 0);
  CHECK(nu_zero_bound(parse_type("1+N4+N3")) == 4);
  CHECK_THROWS_AS(nu_zero_bound(parse_type("1^3")), InputError);
}

TEST_CASE("descent over GF(4)(t)") {
  const auto f = gf4t();
  const QBicForm<FunctionField> w(mat(f, {{"0", "1"}, {"0", "t"}}));
  CHECK(format_type(type_of(w)) == "N2");
  const PerpPrimeFiltration<FunctionField> pp(w);
  CHECK(pp.descent_level(1) == 1);
  CHECK(nu_index(w) == 1);
  CHECK(nu_index(w) <= nu_zero_bound(type_of(w)));
  const QBicForm<FunctionField> c(mat(f, {{"0", "1"}, {"0", "0"}}));
  CHECK(nu_index(c) == 0);
  const QBicForm<FunctionField> ns(mat(f, {{"t", "1"}, {"1", "0"}}));
  CHECK(nu_index(ns) == 0);
}

TEST_CASE("type strings") {
  CHECK(format_type(parse_type("1^2+N3")) == "1^2+N3");
  CHECK(format_type(parse_type("N3+1^2+N1")) == "0+1^2+N3");
  CHECK(format_type(parse_type("N3^2 + 0^2")) == "0^2+N3^2");
  CHECK(parse_type("0+N5").n() == 6);
  CHECK_THROWS_AS(parse_type("N0"), InputError);
  CHECK_THROWS_AS(parse_type("2^3"), InputError);
  CHECK_THROWS_AS(parse_type("N3+"), InputError);
  CHECK_THROWS_AS(parse_type(""), InputError);
}
