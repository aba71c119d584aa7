#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qbic/automorphisms.hpp"
#include "qbic/moduli.hpp"

using namespace qbic;
using namespace qbic::testing;

namespace {

std::vector<TypeSignature> types_of(std::initializer_list<const char*> names) {
  std::vector<TypeSignature> out;
  for (const char* s : names) out.push_back(parse_type(s));
  return out;
}

std::set<std::pair<std::string, std::string>> edge_set(const ModuliPoset& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : p.edges) out.emplace(format_type(p.nodes[e.from].type), format_type(p.nodes[e.to].type));
  return out;
}

// Ψ_m(from) <= Ψ_m(to) checked far past the truncation point.
bool necessary_long(const TypeSignature& from, const TypeSignature& to) {
  for (unsigned m = 1; m <= 12 * from.n() + 12; ++m)
    if (psi(from, m) > psi(to, m)) return false;
  return true;
}

}  // namespace

TEST_CASE("type enumeration") {
  CHECK(enumerate_types(1).size() == 2);
  CHECK(enumerate_types(2).size() == 4);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto ts = enumerate_types(n);
    CHECK(std::is_sorted(ts.begin(), ts.end()));
    auto expected = all_types(n);
    std::sort(expected.begin(), expected.end());
    CHECK(ts == expected);
  }
  const auto five = enumerate_types(5);
  for (const auto& t : types_of({"1^5", "1^3+N2", "1+N4", "N5", "1^2+N3", "1+N2^2", "0+1^4", "N2+N3", "0+1^2+N2"}))
    CHECK(std::find(five.begin(), five.end(), t) != five.end());
  CHECK_THROWS_AS(enumerate_types(0), InputError);
}

TEST_CASE("psi and theta") {
  CHECK(theta(parse_type("N3^2"), 2) == 2);
  CHECK(theta(parse_type("0+N5"), 2) == 1);
  CHECK(theta_limit(parse_type("0+N5+N2")) == 2);
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& t : enumerate_types(n)) {
      CHECK(psi(t, 2) == t.corank());
      for (unsigned m = 1; m <= 2 * n + 2; ++m) {
        if (m % 2)
          CHECK(phi(t, m) == psi(t, m) + n);
        else
          CHECK(phi(t, m) == 2 * psi(t, m));
      }
    }
  for (unsigned m = 1; m <= 8; ++m) CHECK(psi(parse_type("1^4"), m) == 0);
  // Ψ and Θ are additive in orthogonal sums.
  const auto x = parse_type("1+N2+N3"), y = parse_type("0+N4");
  for (unsigned m = 1; m <= 10; ++m) {
    CHECK(psi(direct_sum(x, y), m) == psi(x, m) + psi(y, m));
    CHECK(theta(direct_sum(x, y), m) == theta(x, m) + theta(y, m));
  }
}

TEST_CASE("specialization predicates") {
  CHECK_FALSE(necessary(parse_type("N5"), parse_type("1+N2^2")));
  CHECK(first_psi_violation(parse_type("N5"), parse_type("1+N2^2")) == 5u);
  CHECK(necessary(parse_type("N3^2"), parse_type("0+N5")));
  CHECK_FALSE(sufficient(parse_type("N3^2"), parse_type("0+N5")));
  CHECK(sufficient(parse_type("1+N4"), parse_type("N5")));
  CHECK_THROWS_AS(necessary(parse_type("N2"), parse_type("N3")), InputError);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto ts = enumerate_types(n);
    for (const auto& a : ts) {
      CHECK(necessary(a, a));
      CHECK(sufficient(a, a));
      for (const auto& b : ts) {
        CHECK(necessary(a, b) == necessary_long(a, b));
        if (sufficient(a, b)) CHECK(necessary(a, b));
      }
    }
  }
}

TEST_CASE("family sides and parameter ranges") {
  CHECK(format_type(generic_side({Family::F1, 2, 0})) == "N5");
  CHECK(format_type(special_side({Family::F1, 2, 0})) == "1^2+N3");
  CHECK(format_type(generic_side({Family::F3, 1, 0})) == "1^2");
  CHECK(format_type(special_side({Family::F4, 1, 1})) == "N2^2");
  CHECK(format_type(generic_side({Family::F4, 1, 1})) == "N4");
  CHECK(format_type(generic_side({Family::F6, 0, 1})) == "1");
  CHECK(format_type(special_side({Family::F6, 2, 3})) == "N5");
  CHECK(format_type(generic_side({Family::F6, 2, 3})) == "1+N4");
  CHECK_THROWS_AS(validate({Family::F1, 0, 0}), InputError);
  CHECK_THROWS_AS(validate({Family::F2, 1, 1}), InputError);
  CHECK_THROWS_AS(validate({Family::F4, 1, 2}), InputError);
  CHECK_THROWS_AS(validate({Family::F5, 2, 0}), InputError);
  CHECK_THROWS_AS(validate({Family::F6, 2, 2}), InputError);
  CHECK(parse_family("F5") == Family::F5);
  CHECK(parse_family("3") == Family::F3);
  CHECK_THROWS_AS(parse_family("F7"), InputError);
}

TEST_CASE("witness matrices") {
  const auto k = gf4();
  const auto f3 = witness({Family::F3, 1, 0}, k);
  CHECK(f3.gram == mat(FunctionField(k), {{"0", "1"}, {"t", "0"}}));
  CHECK(format_type(f3.generic_type) == "1^2");
  CHECK(format_type(f3.special_type) == "N2");
  const auto f2 = witness({Family::F2, 1, 0}, k);
  CHECK(format_type(f2.generic_type) == "N2");
  CHECK(format_type(f2.special_type) == "0+1");
  const auto f1 = witness({Family::F1, 1, 0}, k);
  CHECK(f1.gram.rows() == 3);
  CHECK(format_type(f1.generic_type) == "N3");
  CHECK(format_type(f1.special_type) == "0+1^2");
  for (unsigned s = 1; s <= 5; ++s)
    for (unsigned t = 0; t <= s; ++t)
      for (Family fam : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5}) {
        const FamilyInstance inst{fam, s, t};
        const bool needs_t = fam == Family::F4 || fam == Family::F5;
        if (needs_t != (t > 0) || generic_side(inst).n() > 10) continue;
        const auto w = witness(inst, k);
        INFO(to_string(fam), " s=", s, " t=", t);
        CHECK(w.verified());
        CHECK(w.gram.rows() == generic_side(inst).n());
      }
  for (unsigned t = 1; t <= 5; ++t)
    for (unsigned s = 0; s < t; ++s) CHECK(witness({Family::F6, s, t}, k).verified());
  // Over a larger field of the same characteristic.
  CHECK(witness({Family::F5, 1, 1}, FiniteField::make(2, 2, 4)).verified());
  CHECK(failed_instances().empty());
}

TEST_CASE("generator steps") {
  auto targets = [](const char* from) {
    std::vector<std::pair<std::string, Family>> out;
    for (const auto& st : generator_steps(parse_type(from))) out.emplace_back(format_type(st.to), st.instance.family);
    return out;
  };
  auto has = [&](const char* from, const char* to, Family fam) {
    const auto v = targets(from);
    return std::find(v.begin(), v.end(), std::pair<std::string, Family>{to, fam}) != v.end();
  };
  CHECK(has("N5", "1^2+N3", Family::F1));
  CHECK(has("N3^2", "0+N5", Family::F5));
  CHECK(has("1^2", "N2", Family::F3));
  CHECK(has("1+N4", "N5", Family::F6));
  CHECK(targets("0").empty());
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& t : enumerate_types(n))
      for (const auto& st : generator_steps(t)) {
        CHECK(st.to.n() == n);
        CHECK(necessary(t, st.to));
        CHECK(stratum_dim(st.to) < stratum_dim(t));
      }
}

TEST_CASE("posets") {
  const auto one = build_poset(1);
  REQUIRE(one.nodes.size() == 2);
  REQUIRE(one.edges.size() == 1);
  CHECK(format_type(one.nodes[one.edges[0].from].type) == "1");
  CHECK(format_type(one.nodes[one.edges[0].to].type) == "0");

  const auto five = restrict_poset(
      build_poset(5),
      types_of({"1^5", "1^3+N2", "1+N4", "N5", "1^2+N3", "1+N2^2", "0+1^4", "N2+N3", "0+1^2+N2"}));
  CHECK(edge_set(five) == std::set<std::pair<std::string, std::string>>{{"1^5", "1^3+N2"},
                                                                        {"1^3+N2", "1+N4"},
                                                                        {"1+N4", "N5"},
                                                                        {"1+N4", "1+N2^2"},
                                                                        {"N5", "1^2+N3"},
                                                                        {"1+N2^2", "N2+N3"},
                                                                        {"1^2+N3", "N2+N3"},
                                                                        {"1^2+N3", "0+1^4"},
                                                                        {"N2+N3", "0+1^2+N2"},
                                                                        {"0+1^4", "0+1^2+N2"}});
  for (const auto& e : five.edges) CHECK(five.nodes[e.from].stratum_dim > five.nodes[e.to].stratum_dim);

  const auto six = build_poset(6);
  bool saw = false;
  for (const auto& e : six.edges)
    if (six.nodes[e.from].type == parse_type("N3^2") && six.nodes[e.to].type == parse_type("0+N5")) {
      saw = true;
      CHECK(e.evidence == Evidence::generator);
      REQUIRE(e.step.has_value());
      CHECK(e.step->instance.family == Family::F5);
    }
  CHECK(saw);
  // 1+N2+N3 cannot reach N2^3: Ψ_3 drops from 1 to 0.
  CHECK(first_psi_violation(parse_type("1+N2+N3"), parse_type("N2^3")) == 3u);
  CHECK(edge_set(six).contains({"N2+N4", "N2^3"}));

  for (std::size_t n = 2; n <= 8; ++n) {
    const auto p = build_poset(n);
    CHECK(p.nodes.size() == enumerate_types(n).size());
    for (const auto& node : p.nodes) CHECK(node.stratum_dim + node.codim == n * n);
    for (const auto& e : p.edges) CHECK(necessary(p.nodes[e.from].type, p.nodes[e.to].type));
  }
  CHECK(build_poset(8).unknown.size() == 1);
  CHECK_THROWS_AS(build_poset(9), CostGuardError);
  PosetOptions wide;
  wide.max_n = 9;
  wide.jobs = 2;
  CHECK(build_poset(9, wide).nodes.size() == enumerate_types(9).size());
  CHECK_THROWS_AS(restrict_poset(five, types_of({"N6"})), InputError);
}

TEST_CASE("DOT export") {
  const auto p = build_poset(2);
  const auto dot = to_dot(p, true);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("label=\"N2\\ndim 3\"") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == static_cast<long>(p.edges.size()));
}

TEST_CASE("specialization queries") {
  const auto r1 = specialize_query(parse_type("1^5"), parse_type("0^5"));
  CHECK(r1.verdict == Verdict::yes);
  const auto r2 = specialize_query(parse_type("0+1^4"), parse_type("1^2+N3"));
  CHECK(r2.verdict == Verdict::no);
  CHECK(r2.violated_m == 1u);
  const auto r3 = specialize_query(parse_type("N3^2"), parse_type("0+N5"));
  CHECK(r3.verdict == Verdict::yes);
  CHECK(r3.evidence == Evidence::generator);
  REQUIRE(r3.path.size() == 1);
  CHECK(r3.path[0].instance->family == Family::F5);
  const auto open = specialize_query(parse_type("1+N3^2+N8"), parse_type("0+N7^2"));
  CHECK(open.verdict == Verdict::unknown);
  CHECK(necessary(parse_type("1+N3^2+N8"), parse_type("0+N7^2")));
  CHECK_THROWS_AS(specialize_query(parse_type("N2"), parse_type("0")), InputError);

  // Paths are chains of valid steps.
  for (const auto& t : enumerate_types(5)) {
    const auto r = specialize_query(t, parse_type("0^5"));
    REQUIRE(r.verdict == Verdict::yes);
    TypeSignature cur = t;
    for (const auto& st : r.path) {
      CHECK(st.from == cur);
      if (!st.instance) CHECK(sufficient(st.from, st.to));
      cur = st.to;
    }
    CHECK(cur == parse_type("0^5"));
  }
}

TEST_CASE("specialization transports along added summands") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto p = build_poset(n);
    for (const auto& e : p.edges)
      for (const char* extra : {"1", "0", "N2", "1+N3"}) {
        const auto s = parse_type(extra);
        const auto a = direct_sum(p.nodes[e.from].type, s), b = direct_sum(p.nodes[e.to].type, s);
        CHECK(specialize_query(a, b).verdict == Verdict::yes);
      }
  }
}
