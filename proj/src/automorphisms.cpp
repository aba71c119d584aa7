#include "qbic/automorphisms.hpp"


#include "qbic/parallel.hpp"

namespace qbic {

namespace {

// Σ_{m ≥ from} b_m and Σ_{m ≥ from} m·b_m.
std::size_t tail_count(const TypeSignature& t, unsigned from) {
  std::size_t s = 0;
  for (auto it = t.b.lower_bound(from); it != t.b.end(); ++it) s += it->second;
  return s;
}

std::size_t tail_size(const TypeSignature& t, unsigned from) {
  std::size_t s = 0;
  for (auto it = t.b.lower_bound(from); it != t.b.end(); ++it) s += it->first * it->second;
  return s;
}

std::size_t odd_total(const TypeSignature& t) {
  std::size_t s = 0;
  for (const auto& [m, c] : t.b)
    if (m % 2) s += c;
  return s;
}

}  // namespace

std::size_t lie_dim(const TypeSignature& t) { return t.n() * t.corank(); }

std::size_t group_dim(const TypeSignature& t) {
  std::size_t d = 0;
  for (unsigned k = 1; 2 * k - 1 <= t.max_block(); ++k) {
    const std::size_t bo = t.b_at(2 * k - 1), be = t.b_at(2 * k);
    d += k * (bo * bo + be * be);
    d += (t.a + tail_size(t, 2 * k)) * bo;
    d += 2 * k * tail_count(t, 2 * k + 1) * be;
  }
  return d;
}

std::size_t phi(const TypeSignature& t, unsigned m) {
  if (m == 0) throw InputError("phi index must be positive");
  const unsigned k = (m + 1) / 2;
  if (m % 2) {
    std::size_t v = t.n() + t.b_at(m);
    for (unsigned l = 1; l < k; ++l) v += 2 * (k - l) * t.b_at(2 * l - 1);
    return v;
  }
  std::size_t v = 0;
  for (unsigned l = 1; l < k; ++l) v += 2 * l * t.b_at(2 * l);
  std::size_t even_tail = 0;
  for (const auto& [mm, c] : t.b)
    if (mm % 2 == 0 && mm >= m) even_tail += c;
  return v + 2 * k * (odd_total(t) + even_tail);
}

PointCount enumerate_points(const FfForm& f, const PointOptions& opts) {
  const FiniteField& k = f.field();
  const std::size_t n = f.n();
  const std::size_t cells = n * n;
  if (n > opts.max_n) throw CostGuardError("point enumeration limited to n <= " + std::to_string(opts.max_n));
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) {
    if (total > opts.max_candidates / k.order())
      throw CostGuardError("point enumeration would visit more than " + std::to_string(opts.max_candidates) +
                           " matrices");
    total *= k.order();
  }
  const FfMatrix& b = f.gram();

  auto scan = [&](std::size_t lo, std::size_t hi) {
    PointCount part;
    std::vector<Gf> a(cells), aq(cells), ba(cells);
    for (std::uint64_t code = lo; code < hi; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < cells; ++i) {
        a[i] = k.element(c % k.order());
        aq[i] = k.frobenius(a[i]);
        c /= k.order();
      }
      // a is row-major: a[r*n + col].
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < n; ++col) {
          Gf s = k.zero();
          for (std::size_t j = 0; j < n; ++j) s = k.add(s, k.mul(b(r, j), a[j * n + col]));
          ba[r * n + col] = s;
        }
      bool ok = true;
      for (std::size_t r = 0; r < n && ok; ++r)
        for (std::size_t col = 0; col < n && ok; ++col) {
          Gf s = k.zero();
          for (std::size_t j = 0; j < n; ++j) s = k.add(s, k.mul(aq[j * n + r], ba[j * n + col]));
          ok = s == b(r, col);
        }
      if (!ok) continue;
      FfMatrix am(k, n, n);
      for (std::size_t i = 0; i < cells; ++i) am(i / n, i % n) = a[i];
      if (rank(am) != n) continue;
      ++part.count;
      if (part.samples.size() < opts.max_samples) part.samples.push_back(std::move(am));
    }
    return part;
  };

  PointCount out;
  for (auto& part : map_ranges(static_cast<std::size_t>(total), opts.jobs, scan)) {
    out.count += part.count;
    for (auto& s : part.samples)
      if (out.samples.size() < opts.max_samples) out.samples.push_back(std::move(s));
  }
  return out;
}

BigInt lie_points(const FfForm& f) {
  const FiniteField& k = f.field();
  const std::size_t n = f.n();
  // Unknowns φ(i, j) at index j*n + i; equations β(e_r, φ e_j) = Σ_i B(r,i) φ(i,j).
  FfMatrix sys(k, n * n, n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < n; ++i) sys(j * n + r, j * n + i) = f.gram()(r, i);
  const std::size_t nullity = n * n - rank(sys);
  return boost::multiprecision::pow(BigInt(k.order()), static_cast<unsigned>(nullity));
}

AutReport aut_report(const TypeSignature& t) {
  AutReport r;
  r.type = t;
  r.lie_dim = lie_dim(t);
  r.group_dim = group_dim(t);
  return r;
}

}  // namespace qbic
