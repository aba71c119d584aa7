#include "qbic/function_field.hpp"

#include "expr.hpp"
#include "qbic/errors.hpp"

namespace qbic {

namespace poly {

void trim(GfPoly& f) {
  while (!f.empty() && f.back().v == 0) f.pop_back();
}

GfPoly add(const FiniteField& k, const GfPoly& a, const GfPoly& b) {
  GfPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Gf x = i < a.size() ? a[i] : Gf{};
    const Gf y = i < b.size() ? b[i] : Gf{};
    r[i] = k.add(x, y);
  }
  trim(r);
  return r;
}

GfPoly mul(const FiniteField& k, const GfPoly& a, const GfPoly& b) {
  if (a.empty() || b.empty()) return {};
  GfPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j].v != 0) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

GfPoly scale(const FiniteField& k, const GfPoly& a, Gf c) {
  GfPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<GfPoly, GfPoly> divmod(const FiniteField& k, const GfPoly& a, const GfPoly& b) {
  if (b.empty()) throw InputError("polynomial division by zero");
  GfPoly rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {GfPoly{}, rem};
  GfPoly quo(rem.size() - b.size() + 1);
  const Gf lead_inv = k.inv(b.back());
  for (std::size_t d = rem.size(); d-- >= b.size();) {
    const Gf c = k.mul(rem[d], lead_inv);
    if (c.v == 0) continue;
    const std::size_t shift = d - (b.size() - 1);
    quo[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = k.sub(rem[shift + i], k.mul(c, b[i]));
  }
  trim(rem);
  trim(quo);
  return {quo, rem};
}

GfPoly gcd(const FiniteField& k, GfPoly a, GfPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (b.size() == 1) return GfPoly{k.one()};
    GfPoly r = divmod(k, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return scale(k, a, k.inv(a.back()));
}

std::string format(const FiniteField& k, const GfPoly& f, char var) {
  std::string out;
  for (std::size_t d = f.size(); d-- > 0;) {
    if (f[d].v == 0) continue;
    if (!out.empty()) out += '+';
    std::string cs = k.format(f[d]);
    if (d == 0) {
      out += cs;
      continue;
    }
    if (cs != "1") {
      if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      out += cs + "*";
    }
    out += var;
    if (d > 1) out += '^' + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

}  // namespace poly

namespace {

struct RatBuilder {
  using Value = RatFn;
  const FunctionField& f;
  Value constant(std::uint64_t n) const { return f.from_int(static_cast<std::int64_t>(n % f.characteristic())); }
  std::optional<Value> variable(char c) const {
    if (c == 'z') return f.constant(f.base().generator());
    if (c == 't') return f.variable();
    return std::nullopt;
  }
  Value add(const Value& a, const Value& b) const { return f.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return f.sub(a, b); }
  Value mul(const Value& a, const Value& b) const { return f.mul(a, b); }
  Value div(const Value& a, const Value& b) const { return f.div(a, b); }
  Value neg(const Value& a) const { return f.neg(a); }
  Value pow(const Value& a, std::uint64_t n) const { return f.pow(a, n); }
  bool is_zero(const Value& a) const { return f.is_zero(a); }
};

GfPoly shifted(const GfPoly& a, std::int64_t s) {
  GfPoly r(a.size() + static_cast<std::size_t>(s));
  std::copy(a.begin(), a.end(), r.begin() + s);
  return r;
}

GfPoly exact_div(const FiniteField& k, const GfPoly& a, const GfPoly& g) {
  if (g.size() == 1 && g[0].v == 1) return a;
  return poly::divmod(k, a, g).first;
}

}  // namespace

FunctionField FunctionField::from_spec(const FieldSpec& spec) {
  FieldSpec base = spec;
  base.kind = FieldKind::finite;
  return FunctionField(FiniteField::from_spec(base));
}

FieldSpec FunctionField::spec() const {
  FieldSpec s = base_.spec();
  s.kind = FieldKind::rational_function;
  return s;
}

RatFn FunctionField::constant(Gf c) const {
  if (c.v == 0) return {};
  return RatFn{0, GfPoly{c}, GfPoly{base_.one()}};
}

RatFn FunctionField::variable() const { return RatFn{1, GfPoly{base_.one()}, GfPoly{base_.one()}}; }

RatFn FunctionField::from_polys(const GfPoly& num, const GfPoly& den) const { return normalize(0, num, den); }

RatFn FunctionField::normalize(std::int64_t val, GfPoly num, GfPoly den) const {
  poly::trim(num);
  poly::trim(den);
  if (den.empty()) throw InputError("zero denominator");
  if (num.empty()) return {};
  std::size_t sn = 0, sd = 0;
  while (num[sn].v == 0) ++sn;
  while (den[sd].v == 0) ++sd;
  val += static_cast<std::int64_t>(sn) - static_cast<std::int64_t>(sd);
  if (sn) num.erase(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(sn));
  if (sd) den.erase(den.begin(), den.begin() + static_cast<std::ptrdiff_t>(sd));
  if (den.size() > 1 && num.size() > 1) {
    const GfPoly g = poly::gcd(base_, num, den);
    if (g.size() > 1) {
      num = exact_div(base_, num, g);
      den = exact_div(base_, den, g);
    }
  }
  if (den.back().v != 1) {
    const Gf c = base_.inv(den.back());
    num = poly::scale(base_, num, c);
    den = poly::scale(base_, den, c);
  }
  return RatFn{val, std::move(num), std::move(den)};
}

RatFn FunctionField::add(const RatFn& a, const RatFn& b) const {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  const std::int64_t v = std::min(a.val, b.val);
  if (a.den == b.den) {
    GfPoly n = poly::add(base_, shifted(a.num, a.val - v), shifted(b.num, b.val - v));
    return normalize(v, std::move(n), a.den);
  }
  GfPoly n = poly::add(base_, shifted(poly::mul(base_, a.num, b.den), a.val - v),
                       shifted(poly::mul(base_, b.num, a.den), b.val - v));
  return normalize(v, std::move(n), poly::mul(base_, a.den, b.den));
}

RatFn FunctionField::neg(const RatFn& a) const {
  RatFn r = a;
  for (auto& c : r.num) c = base_.neg(c);
  return r;
}

RatFn FunctionField::mul(const RatFn& a, const RatFn& b) const {
  if (is_zero(a) || is_zero(b)) return {};
  const bool trivial = a.den.size() == 1 && b.den.size() == 1;
  if (trivial) return RatFn{a.val + b.val, poly::mul(base_, a.num, b.num), GfPoly{base_.one()}};
  const GfPoly g1 = poly::gcd(base_, a.num, b.den);
  const GfPoly g2 = poly::gcd(base_, b.num, a.den);
  GfPoly n = poly::mul(base_, exact_div(base_, a.num, g1), exact_div(base_, b.num, g2));
  GfPoly d = poly::mul(base_, exact_div(base_, a.den, g2), exact_div(base_, b.den, g1));
  return RatFn{a.val + b.val, std::move(n), std::move(d)};
}

RatFn FunctionField::inv(const RatFn& a) const {
  if (is_zero(a)) throw InputError("inverse of zero");
  const Gf c = base_.inv(a.num.back());
  return RatFn{-a.val, poly::scale(base_, a.den, c), poly::scale(base_, a.num, c)};
}

RatFn FunctionField::pow(RatFn a, std::uint64_t n) const {
  RatFn r = one();
  while (n) {
    if (n & 1) r = mul(r, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return r;
}

RatFn FunctionField::frobenius(const RatFn& a, unsigned i) const {
  if (is_zero(a) || i == 0) return a;
  std::uint64_t Q = 1;
  for (unsigned j = 0; j < i; ++j) {
    Q *= base_.q();
    if (Q > (std::uint64_t{1} << 24)) throw CostGuardError("Frobenius power too large for dense polynomials");
  }
  auto lift = [&](const GfPoly& f) {
    GfPoly r((f.size() - 1) * Q + 1);
    for (std::size_t j = 0; j < f.size(); ++j) r[j * Q] = base_.frobenius(f[j], i);
    return r;
  };
  return RatFn{a.val * static_cast<std::int64_t>(Q), lift(a.num), lift(a.den)};
}

std::optional<RatFn> FunctionField::qth_root(const RatFn& a) const {
  if (is_zero(a)) return a;
  const auto q = static_cast<std::int64_t>(base_.q());
  if (a.val % q != 0) return std::nullopt;
  auto root = [&](const GfPoly& f) -> std::optional<GfPoly> {
    GfPoly r((f.size() - 1) / static_cast<std::size_t>(q) + 1);
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f[j].v == 0) continue;
      if (j % static_cast<std::size_t>(q) != 0) return std::nullopt;
      r[j / static_cast<std::size_t>(q)] = *base_.qth_root(f[j]);
    }
    return r;
  };
  auto n = root(a.num);
  auto d = root(a.den);
  if (!n || !d) return std::nullopt;
  return RatFn{a.val / q, std::move(*n), std::move(*d)};
}

std::optional<Gf> FunctionField::at_zero(const RatFn& a) const {
  if (is_zero(a) || a.val > 0) return Gf{};
  if (a.val < 0) return std::nullopt;
  return base_.div(a.num[0], a.den[0]);
}

std::pair<GfPoly, GfPoly> FunctionField::fraction(const RatFn& a) const {
  if (is_zero(a)) return {GfPoly{}, GfPoly{base_.one()}};
  if (a.val >= 0) return {shifted(a.num, a.val), a.den};
  return {a.num, shifted(a.den, -a.val)};
}

std::string FunctionField::format(const RatFn& a) const {
  const auto [n, d] = fraction(a);
  std::string ns = poly::format(base_, n, 't');
  if (d.size() == 1) return ns;
  std::string ds = poly::format(base_, d, 't');
  if (ns.find('+') != std::string::npos) ns = "(" + ns + ")";
  if (ds.find_first_of("+*") != std::string::npos) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

RatFn FunctionField::parse(std::string_view text) const {
  RatBuilder b{*this};
  return detail::ExprReader<RatBuilder>(b, text).read();
}

}  // namespace qbic
