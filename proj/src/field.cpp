#include "qbic/field.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "expr.hpp"
#include "qbic/errors.hpp"

namespace qbic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace gfp {
namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return mod(std::move(r), m, p);
}

Poly powmod(Poly a, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  r = mod(r, m, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, m, p);
    a = mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// x^(p^j) mod f by repeated p-th powers.
Poly frob_x(std::uint32_t j, const Poly& f, std::uint32_t p) {
  Poly x = mod(Poly{0, 1}, f, p);
  for (std::uint32_t i = 0; i < j; ++i) x = powmod(x, p, f, p);
  return x;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

}  // namespace

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const auto k = static_cast<std::uint32_t>(f.size() - 1);
  if (k == 1) return true;
  if (f[0] == 0) return false;
  const Poly x = mod(Poly{0, 1}, f, p);
  if (frob_x(k, f, p) != x) return false;
  for (std::uint32_t l : prime_factors(k)) {
    Poly g = gcd(f, sub(frob_x(k / l, f, p), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly default_modulus(std::uint32_t p, std::uint32_t k) {
  if (p == 2 && k == 2) return {1, 1, 1};
  if (p == 3 && k == 2) return {1, 0, 1};
  if (p == 2 && k == 4) return {1, 1, 0, 0, 1};
  for (std::uint64_t idx = 0;; ++idx) {
    Poly f(k + 1, 0);
    f[k] = 1;
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (v != 0) throw InternalError("no irreducible polynomial found");
    if (is_irreducible(f, p)) return f;
  }
}

std::vector<Poly> kernel(Mat a, std::size_t ncols, std::uint32_t p) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t s = r;
    while (s < a.size() && a[s][c] == 0) ++s;
    if (s == a.size()) continue;
    std::swap(a[r], a[s]);
    const std::uint64_t iv = inv_mod(a[r][c], p);
    for (auto& x : a[r]) x = static_cast<std::uint32_t>(x * iv % p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = a[i][c];
      for (std::size_t j = 0; j < ncols; ++j)
        a[i][j] = static_cast<std::uint32_t>((a[i][j] + (p - f) * a[r][j]) % p);
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<Poly> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    Poly v(ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - a[i][f]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Poly> solve(const Mat& a, const Poly& b, std::size_t ncols, std::uint32_t p) {
  Mat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back((p - b[i] % p) % p);
  // Kernel vectors of [A | -b] with last coordinate 1 give solutions.
  for (const auto& v : kernel(aug, ncols + 1, p)) {
    if (v[ncols] == 0) continue;
    const std::uint64_t iv = inv_mod(v[ncols], p);
    Poly x(ncols);
    for (std::size_t j = 0; j < ncols; ++j) x[j] = static_cast<std::uint32_t>(v[j] * iv % p);
    return x;
  }
  return std::nullopt;
}

}  // namespace gfp

namespace detail {

struct GfImpl {
  std::uint32_t p = 2, e = 1, k = 2;
  std::uint64_t order = 4;
  std::uint64_t q = 2;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint64_t> pw;  // p^i
  std::uint64_t mod_bits = 0;     // p == 2: modulus as a bit mask
  std::vector<std::uint32_t> exp, log;  // filled when order is small

  bool tables() const { return !exp.empty(); }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (p == 2) return a ^ b;
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      r += ((a % p + b % p) % p) * pw[i];
      a /= p;
      b /= p;
    }
    return r;
  }
  std::uint64_t neg(std::uint64_t a) const {
    if (p == 2) return a;
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      r += ((p - a % p) % p) * pw[i];
      a /= p;
    }
    return r;
  }
  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    if (p == 2) {
      std::uint64_t r = 0;
      const std::uint64_t top = std::uint64_t{1} << k;
      while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= mod_bits;
      }
      return r;
    }
    std::vector<std::uint64_t> da(k), db(k), prod(2 * k - 1, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      da[i] = a % p;
      a /= p;
      db[i] = b % p;
      b /= p;
    }
    for (std::uint32_t i = 0; i < k; ++i) {
      if (!da[i]) continue;
      for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    for (std::size_t d = prod.size(); d-- > k;) {
      const std::uint64_t c = prod[d];
      if (!c) continue;
      for (std::uint32_t i = 0; i <= k; ++i)
        prod[d - k + i] = (prod[d - k + i] + (p - c) * modulus[i]) % p;
    }
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < k; ++i) r += prod[i] * pw[i];
    return r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables()) {
      std::uint64_t s = std::uint64_t{log[a]} + log[b];
      if (s >= order - 1) s -= order - 1;
      return exp[s];
    }
    return slow_mul(a, b);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    n %= (order - 1);
    if (tables()) return exp[static_cast<std::uint64_t>(log[a]) * n % (order - 1)];
    std::uint64_t r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }

  void build_tables() {
    if (order > (1u << 16)) return;
    std::vector<std::uint32_t> factors;
    {
      std::uint64_t m = order - 1;
      for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
          factors.push_back(static_cast<std::uint32_t>(d));
          while (m % d == 0) m /= d;
        }
      }
      if (m > 1) factors.push_back(static_cast<std::uint32_t>(m));
    }
    auto slow_pow = [&](std::uint64_t a, std::uint64_t n) {
      std::uint64_t r = 1;
      while (n) {
        if (n & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        n >>= 1;
      }
      return r;
    };
    std::uint64_t g = 2;
    for (;; ++g) {
      bool primitive = true;
      for (auto f : factors)
        if (slow_pow(g, (order - 1) / f) == 1) primitive = false;
      if (primitive) break;
    }
    exp.assign(order - 1, 0);
    log.assign(order, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < order - 1; ++i) {
      exp[i] = static_cast<std::uint32_t>(x);
      log[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, g);
    }
  }
};

}  // namespace detail

namespace {

struct GfBuilder {
  using Value = Gf;
  const FiniteField& f;
  Value constant(std::uint64_t n) const { return f.from_int(static_cast<std::int64_t>(n % f.characteristic())); }
  std::optional<Value> variable(char c) const {
    if (c == 'z') return f.generator();
    return std::nullopt;
  }
  Value add(Value a, Value b) const { return f.add(a, b); }
  Value sub(Value a, Value b) const { return f.sub(a, b); }
  Value mul(Value a, Value b) const { return f.mul(a, b); }
  Value div(Value a, Value b) const { return f.div(a, b); }
  Value neg(Value a) const { return f.neg(a); }
  Value pow(Value a, std::uint64_t n) const { return f.pow(a, n); }
  bool is_zero(Value a) const { return f.is_zero(a); }
};

}  // namespace

FiniteField FiniteField::make(std::uint32_t p, std::uint32_t e, std::uint32_t k,
                              std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || k == 0) throw InputError("field degrees must be positive");
  if (k % (2 * e) != 0)
    throw InputError("2e = " + std::to_string(2 * e) + " does not divide k = " + std::to_string(k));
  long double bound = 1;
  for (std::uint32_t i = 0; i < k; ++i) bound *= p;
  if (bound >= 4.6e18L) throw CostGuardError("field GF(" + std::to_string(p) + "^" + std::to_string(k) + ") is too large");
  if (modulus.empty()) {
    modulus = gfp::default_modulus(p, k);
  } else {
    if (modulus.size() != k + 1) throw InputError("modulus must have degree k = " + std::to_string(k));
    for (auto& c : modulus)
      if (c >= p) throw InputError("modulus coefficient out of range");
    if (modulus.back() != 1) throw InputError("modulus must be monic");
    if (!gfp::is_irreducible(modulus, p)) throw InputError("modulus is reducible over GF(" + std::to_string(p) + ")");
  }
  auto impl = std::make_shared<detail::GfImpl>();
  impl->p = p;
  impl->e = e;
  impl->k = k;
  impl->modulus = std::move(modulus);
  impl->pw.resize(k + 1);
  impl->pw[0] = 1;
  for (std::uint32_t i = 1; i <= k; ++i) impl->pw[i] = impl->pw[i - 1] * p;
  impl->order = impl->pw[k];
  impl->q = impl->pw[e];
  if (p == 2)
    for (std::uint32_t i = 0; i <= k; ++i)
      if (impl->modulus[i]) impl->mod_bits |= std::uint64_t{1} << i;
  impl->build_tables();
  return FiniteField(std::move(impl));
}

FiniteField FiniteField::from_spec(const FieldSpec& spec) { return make(spec.p, spec.e, spec.k, spec.modulus); }

FiniteField FiniteField::base_q2(std::uint32_t p, std::uint32_t e) { return make(p, e, 2 * e); }

std::uint32_t FiniteField::characteristic() const { return impl_->p; }
std::uint32_t FiniteField::q_exponent() const { return impl_->e; }
std::uint32_t FiniteField::degree() const { return impl_->k; }
std::uint64_t FiniteField::order() const { return impl_->order; }
std::uint64_t FiniteField::q() const { return impl_->q; }
const std::vector<std::uint32_t>& FiniteField::modulus() const { return impl_->modulus; }

FieldSpec FiniteField::spec() const {
  return FieldSpec{impl_->p, impl_->e, impl_->k, impl_->modulus, FieldKind::finite};
}

FiniteField FiniteField::extension(std::uint32_t r) const {
  if (r == 0) throw InputError("extension degree must be positive");
  if (r == 1) return *this;
  return make(impl_->p, impl_->e, impl_->k * r);
}

Gf FiniteField::from_int(std::int64_t n) const {
  const auto p = static_cast<std::int64_t>(impl_->p);
  return {static_cast<std::uint64_t>(((n % p) + p) % p)};
}

Gf FiniteField::generator() const { return {impl_->k == 1 ? 0 : impl_->p}; }

Gf FiniteField::element(std::uint64_t index) const {
  if (index >= impl_->order) throw InputError("element index out of range");
  return {index};
}

Gf FiniteField::add(Gf a, Gf b) const { return {impl_->add(a.v, b.v)}; }
Gf FiniteField::sub(Gf a, Gf b) const { return {impl_->add(a.v, impl_->neg(b.v))}; }
Gf FiniteField::neg(Gf a) const { return {impl_->neg(a.v)}; }
Gf FiniteField::mul(Gf a, Gf b) const { return {impl_->mul(a.v, b.v)}; }

Gf FiniteField::inv(Gf a) const {
  if (a.v == 0) throw InputError("inverse of zero");
  if (impl_->tables()) return {impl_->exp[(impl_->order - 1 - impl_->log[a.v]) % (impl_->order - 1)]};
  return {impl_->pow(a.v, impl_->order - 2)};
}

Gf FiniteField::pow(Gf a, std::uint64_t n) const { return {impl_->pow(a.v, n)}; }

Gf FiniteField::frobenius(Gf a, unsigned i) const {
  const std::uint32_t period = impl_->k / impl_->e;
  i %= period;
  if (i == 0 || a.v <= 1) return a;
  return {impl_->pow(a.v, impl_->pw[impl_->e * i])};
}

std::optional<Gf> FiniteField::qth_root(Gf a) const {
  const std::uint32_t period = impl_->k / impl_->e;
  return frobenius(a, period - 1);
}

std::vector<std::uint32_t> FiniteField::digits(Gf a) const {
  std::vector<std::uint32_t> d(impl_->k);
  for (std::uint32_t i = 0; i < impl_->k; ++i) {
    d[i] = static_cast<std::uint32_t>(a.v % impl_->p);
    a.v /= impl_->p;
  }
  return d;
}

Gf FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint64_t v = 0;
  for (std::uint32_t i = 0; i < impl_->k && i < d.size(); ++i) v += (d[i] % impl_->p) * impl_->pw[i];
  return {v};
}

std::string FiniteField::format(Gf a) const {
  if (a.v == 0) return "0";
  const auto d = digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += 'z';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

Gf FiniteField::parse(std::string_view text) const {
  GfBuilder b{*this};
  return detail::ExprReader<GfBuilder>(b, text).read();
}

bool operator==(const FiniteField& a, const FiniteField& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->p == b.impl_->p && a.impl_->e == b.impl_->e && a.impl_->k == b.impl_->k &&
         a.impl_->modulus == b.impl_->modulus;
}

FieldEmbedding::FieldEmbedding(FiniteField small, FiniteField big) : small_(std::move(small)), big_(std::move(big)) {
  const std::uint32_t p = big_.characteristic();
  const std::uint32_t ks = small_.degree(), kb = big_.degree();
  if (small_.characteristic() != p || kb % ks != 0) throw InputError("field does not embed");
  if (small_.order() > (std::uint64_t{1} << 20)) throw CostGuardError("subfield too large to embed");
  // GF(p)-kernel of x -> x^(p^ks) - x cuts out the copy of GF(p^ks).
  std::uint64_t pks = 1;
  for (std::uint32_t i = 0; i < ks; ++i) pks *= p;
  gfp::Mat rows(kb, std::vector<std::uint32_t>(kb, 0));
  Gf zi = big_.one();
  for (std::uint32_t i = 0; i < kb; ++i) {
    const Gf img = big_.sub(big_.pow(zi, pks), zi);
    const auto d = big_.digits(img);
    for (std::uint32_t r = 0; r < kb; ++r) rows[r][i] = d[r];
    zi = big_.mul(zi, big_.generator());
  }
  const auto ker = gfp::kernel(rows, kb, p);
  ensure(ker.size() == ks, "subfield kernel has wrong dimension");
  std::vector<Gf> kb_elems;
  for (const auto& v : ker) kb_elems.push_back(big_.from_digits(v));
  const auto& f = small_.modulus();
  std::optional<Gf> root;
  std::vector<std::uint32_t> coeff(ks, 0);
  for (std::uint64_t idx = 0; idx < small_.order(); ++idx) {
    std::uint64_t t = idx;
    Gf x = big_.zero();
    for (std::uint32_t j = 0; j < ks; ++j) {
      x = big_.add(x, big_.mul(big_.from_int(t % p), kb_elems[j]));
      t /= p;
    }
    Gf acc = big_.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = big_.add(big_.mul(acc, x), big_.from_int(f[i]));
    if (big_.is_zero(acc) && (!root || x < *root)) root = x;
  }
  ensure(root.has_value(), "no root of subfield modulus");
  basis_.resize(ks);
  basis_[0] = big_.one();
  for (std::uint32_t i = 1; i < ks; ++i) basis_[i] = big_.mul(basis_[i - 1], *root);
}

Gf FieldEmbedding::lift(Gf a) const {
  const auto d = small_.digits(a);
  Gf x = big_.zero();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) x = big_.add(x, big_.mul(big_.from_int(d[i]), basis_[i]));
  return x;
}

std::optional<Gf> FieldEmbedding::restrict(Gf b) const {
  const std::uint32_t kb = big_.degree();
  gfp::Mat a(kb, std::vector<std::uint32_t>(basis_.size(), 0));
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const auto d = big_.digits(basis_[j]);
    for (std::uint32_t r = 0; r < kb; ++r) a[r][j] = d[r];
  }
  const auto sol = gfp::solve(a, big_.digits(b), basis_.size(), big_.characteristic());
  if (!sol) return std::nullopt;
  return small_.from_digits(*sol);
}

// ---- field spec strings ----------------------------------------------------

namespace {

std::uint32_t parse_uint(std::string_view s, const std::string& what) {
  if (s.empty()) throw InputError("missing " + what);
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad " + what + " '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > 1000000000) throw InputError(what + " too large");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

FieldSpec parse_field_spec(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  FieldSpec spec;
  if (!(in >> tok)) throw InputError("empty field spec");
  if (tok.size() > 3 && tok.substr(tok.size() - 3) == "(t)") {
    spec.kind = FieldKind::rational_function;
    tok.resize(tok.size() - 3);
  }
  const auto caret = tok.find('^');
  if (caret == std::string::npos) throw InputError("field spec must start with p^k, got '" + tok + "'");
  spec.p = parse_uint(std::string_view(tok).substr(0, caret), "characteristic");
  spec.k = parse_uint(std::string_view(tok).substr(caret + 1), "degree");
  if (!is_prime(spec.p)) throw InputError("characteristic " + std::to_string(spec.p) + " is not prime");
  bool have_q = false;
  while (in >> tok) {
    if (tok.rfind("q=", 0) == 0) {
      const std::string val = tok.substr(2);
      std::uint64_t q;
      const auto c = val.find('^');
      if (c != std::string::npos) {
        const auto base = parse_uint(std::string_view(val).substr(0, c), "q");
        const auto ex = parse_uint(std::string_view(val).substr(c + 1), "q");
        if (base != spec.p) throw InputError("q must be a power of the characteristic");
        q = 1;
        for (std::uint32_t i = 0; i < ex; ++i) q *= base;
      } else {
        q = parse_uint(val, "q");
      }
      std::uint32_t e = 0;
      std::uint64_t acc = 1;
      while (acc < q) {
        acc *= spec.p;
        ++e;
      }
      if (acc != q || e == 0) throw InputError("q=" + val + " is not a positive power of " + std::to_string(spec.p));
      spec.e = e;
      have_q = true;
    } else if (tok.rfind("mod=", 0) == 0) {
      std::string val = tok.substr(4);
      if (val.size() < 2 || val.front() != '[' || val.back() != ']') throw InputError("modulus must look like mod=[c0,...,ck]");
      val = val.substr(1, val.size() - 2);
      std::stringstream ss(val);
      std::string part;
      while (std::getline(ss, part, ',')) spec.modulus.push_back(parse_uint(part, "modulus coefficient"));
    } else {
      throw InputError("unknown field spec token '" + tok + "'");
    }
  }
  if (!have_q) throw InputError("field spec needs q=p^e");
  if (spec.k % (2 * spec.e) != 0)
    throw InputError("2e = " + std::to_string(2 * spec.e) + " does not divide k = " + std::to_string(spec.k));
  return spec;
}

std::string short_name(const FieldSpec& spec) {
  std::string s = std::to_string(spec.p) + "^" + std::to_string(spec.k);
  if (spec.kind == FieldKind::rational_function) s += "(t)";
  return s;
}

std::string to_string(const FieldSpec& spec) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.e; ++i) q *= spec.p;
  std::string s = short_name(spec) + " q=" + std::to_string(q);
  if (!spec.modulus.empty()) {
    s += " mod=[";
    for (std::size_t i = 0; i < spec.modulus.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(spec.modulus[i]);
    }
    s += ']';
  }
  return s;
}

}  // namespace qbic
