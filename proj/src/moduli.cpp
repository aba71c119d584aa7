#include "qbic/moduli.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>

#include "qbic/automorphisms.hpp"
#include "qbic/parallel.hpp"
#include "qbic/qbic_form.hpp"

namespace qbic {

namespace {

void enumerate_into(unsigned max_block, std::size_t budget, TypeSignature partial, std::vector<TypeSignature>& out) {
  if (max_block == 0) {
    partial.a = budget;
    out.push_back(std::move(partial));
    return;
  }
  for (std::size_t c = 0; c * max_block <= budget; ++c) {
    TypeSignature next = partial;
    next.add_blocks(max_block, c);
    enumerate_into(max_block - 1, budget - c * max_block, std::move(next), out);
  }
}

void require_same_n(const TypeSignature& x, const TypeSignature& y) {
  if (x.n() != y.n())
    throw InputError("types " + format_type(x) + " and " + format_type(y) + " have different dimensions");
}

bool contains(const TypeSignature& big, const TypeSignature& part) {
  if (part.a > big.a) return false;
  for (const auto& [m, c] : part.b)
    if (big.b_at(m) < c) return false;
  return true;
}

TypeSignature blocks(std::size_t ones, std::initializer_list<unsigned> sizes) {
  TypeSignature t;
  t.a = ones;
  for (unsigned m : sizes)
    if (m > 0) t.add_blocks(m, 1);
  return t;
}

}  // namespace

std::vector<TypeSignature> enumerate_types(std::size_t n) {
  if (n == 0) throw InputError("dimension must be positive");
  std::vector<TypeSignature> out;
  enumerate_into(static_cast<unsigned>(n), n, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t stratum_dim(const TypeSignature& t) { return t.n() * t.n() - group_dim(t); }

std::size_t psi(const TypeSignature& t, unsigned m) {
  if (m == 0) throw InputError("psi index must be positive");
  const unsigned k = (m + 1) / 2;
  if (m % 2) {
    std::size_t v = t.b_at(m);
    for (unsigned l = 1; l < k; ++l) v += 2 * (k - l) * t.b_at(2 * l - 1);
    return v;
  }
  std::size_t v = 0, rest = theta_limit(t);
  for (unsigned l = 1; l < k; ++l) v += l * t.b_at(2 * l);
  for (const auto& [mm, c] : t.b)
    if (mm % 2 == 0 && mm >= m) rest += c;
  return v + k * rest;
}

std::size_t theta(const TypeSignature& t, unsigned m) {
  std::size_t v = 0;
  for (unsigned k = 1; k <= m; ++k) v += t.b_at(2 * k - 1);
  return v;
}

std::size_t theta_limit(const TypeSignature& t) { return theta(t, (t.max_block() + 1) / 2); }

std::optional<unsigned> first_psi_violation(const TypeSignature& from, const TypeSignature& to) {
  require_same_n(from, to);
  const auto bound = static_cast<unsigned>(2 * from.n() + 2);
  for (unsigned m = 1; m <= bound; ++m)
    if (psi(from, m) > psi(to, m)) return m;
  // Past every block both parities of Ψ grow affinely with slope set by Θ_∞.
  if (theta_limit(from) <= theta_limit(to)) return std::nullopt;
  for (unsigned m = bound + 1;; ++m) {
    ensure(m <= 8 * bound + 16, "psi violation not found despite larger slope");
    if (psi(from, m) > psi(to, m)) return m;
  }
}

bool necessary(const TypeSignature& from, const TypeSignature& to) { return !first_psi_violation(from, to); }

bool sufficient(const TypeSignature& from, const TypeSignature& to) {
  if (!necessary(from, to)) return false;
  for (unsigned m = 1; m <= from.n() + 1; ++m)
    if (theta(from, m) > theta(to, m)) return false;
  return true;
}

std::string to_string(Family f) { return "F" + std::to_string(static_cast<int>(f)); }

Family parse_family(std::string_view text) {
  std::string s(text);
  if (s.size() == 1) s = "F" + s;
  for (int i = 1; i <= 6; ++i)
    if (s == "F" + std::to_string(i) || s == "f" + std::to_string(i)) return static_cast<Family>(i);
  throw InputError("unknown family '" + std::string(text) + "' (expected F1..F6)");
}

void validate(const FamilyInstance& inst) {
  const unsigned s = inst.s, t = inst.t;
  auto fail = [&](const std::string& why) {
    throw InputError(to_string(inst.family) + " with s=" + std::to_string(s) + ", t=" + std::to_string(t) + ": " +
                     why);
  };
  switch (inst.family) {
    case Family::F1:
    case Family::F2:
    case Family::F3:
      if (s < 1) fail("needs s >= 1");
      if (t != 0) fail("takes no t parameter");
      return;
    case Family::F4:
    case Family::F5:
      if (!(s >= t && t >= 1)) fail("needs s >= t >= 1");
      return;
    case Family::F6:
      if (!(t > s)) fail("needs t > s >= 0");
      return;
  }
}

TypeSignature generic_side(const FamilyInstance& inst) {
  validate(inst);
  const unsigned s = inst.s, t = inst.t;
  switch (inst.family) {
    case Family::F1: return blocks(0, {2 * s + 1});
    case Family::F2: return blocks(0, {2 * s});
    case Family::F3: return blocks(2, {2 * s - 2});
    case Family::F4: return blocks(0, {2 * s - 2 * t, 2 * s + 2});
    case Family::F5: return blocks(0, {2 * s + 1, 2 * s + 2 * t - 1});
    case Family::F6: return blocks(2 * t - 2 * s - 1, {2 * s});
  }
  throw InternalError("unhandled family");
}

TypeSignature special_side(const FamilyInstance& inst) {
  validate(inst);
  const unsigned s = inst.s, t = inst.t;
  switch (inst.family) {
    case Family::F1: return blocks(2, {2 * s - 1});
    case Family::F2: return blocks(1, {2 * s - 1});
    case Family::F3: return blocks(0, {2 * s});
    case Family::F4: return blocks(0, {2 * s - 2 * t + 2, 2 * s});
    case Family::F5: return blocks(0, {2 * s - 1, 2 * s + 2 * t + 1});
    case Family::F6: return blocks(0, {2 * t - 1});
  }
  throw InternalError("unhandled family");
}

SpecializationWitness witness(const FamilyInstance& inst, const FiniteField& k) {
  validate(inst);
  const FunctionField kt(k);
  const auto one = kt.one(), pi = kt.variable();
  const unsigned s = inst.s, t = inst.t;
  const std::size_t n = generic_side(inst).n();
  Matrix<FunctionField> g(kt, n, n);
  auto jordan_at = [&](std::size_t offset, std::size_t m) {
    for (std::size_t i = 0; i + 1 < m; ++i) g(offset + i, offset + i + 1) = one;
  };
  // Indices below are 0-based.
  switch (inst.family) {
    case Family::F1:
      jordan_at(0, 2 * s - 1);
      g(2 * s - 1, 2 * s) = one;
      g(2 * s, 2 * s - 1) = one;
      g(2 * s - 2, 2 * s - 1) = pi;
      break;
    case Family::F2:
      jordan_at(0, 2 * s - 1);
      g(2 * s - 1, 2 * s - 1) = one;
      g(2 * s - 2, 2 * s - 1) = pi;
      break;
    case Family::F3:
      jordan_at(0, 2 * s - 2);
      g(2 * s - 2, 2 * s - 1) = one;
      g(2 * s - 1, 2 * s - 2) = pi;
      if (s >= 2) g(2 * s - 3, 2 * s - 2) = one;
      break;
    case Family::F4:
    case Family::F5: {
      const std::size_t first = inst.family == Family::F4 ? 2 * s : 2 * s - 1;
      const std::size_t second = inst.family == Family::F4 ? 2 * s - 2 * t : 2 * s + 2 * t - 1;
      const std::size_t tail = first + second;
      jordan_at(0, first);
      jordan_at(first, second);
      jordan_at(tail, 2);
      g(first - 1, tail) = pi;
      if (second > 0) g(tail - 1, tail) = one;
      break;
    }
    case Family::F6:
      jordan_at(0, 2 * t - 1);
      g(2 * t - 2, 2 * s) = pi;
      break;
  }
  SpecializationWitness w{inst, g, generic_side(inst), special_side(inst), {}, {}};
  w.generic_type = type_of(QBicForm<FunctionField>(g));
  Matrix<FiniteField> special(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = kt.at_zero(g(i, j));
      ensure(v.has_value(), "witness entry has a pole at 0");
      special(i, j) = *v;
    }
  w.special_type = type_of(QBicForm<FiniteField>(special));
  return w;
}

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<FamilyInstance, bool>& verification_cache() {
  static std::map<FamilyInstance, bool> cache;
  return cache;
}

}  // namespace

bool instance_verified(const FamilyInstance& inst) {
  {
    std::lock_guard lock(cache_mutex());
    const auto& c = verification_cache();
    if (const auto it = c.find(inst); it != c.end()) return it->second;
  }
  const bool ok = witness(inst, FiniteField::make(2, 1, 2)).verified();
  std::lock_guard lock(cache_mutex());
  verification_cache().emplace(inst, ok);
  return ok;
}

std::vector<FamilyInstance> failed_instances() {
  std::lock_guard lock(cache_mutex());
  std::vector<FamilyInstance> out;
  for (const auto& [inst, ok] : verification_cache())
    if (!ok) out.push_back(inst);
  return out;
}

std::vector<GeneratorStep> generator_steps(const TypeSignature& t) {
  const auto n = static_cast<unsigned>(t.n());
  std::vector<GeneratorStep> out;
  auto consider = [&](FamilyInstance inst) {
    const auto lhs = generic_side(inst);
    if (lhs.n() > n || !contains(t, lhs)) return;
    if (!instance_verified(inst)) return;
    TypeSignature to = t;
    to.a -= lhs.a;
    for (const auto& [m, c] : lhs.b) to.remove_blocks(m, c);
    to = direct_sum(to, special_side(inst));
    ensure(necessary(t, to), "generator step violates the necessary condition");
    ensure(stratum_dim(to) < stratum_dim(t), "generator step does not lower the stratum dimension");
    out.push_back({t, std::move(to), inst});
  };
  for (unsigned s = 1; 2 * s <= n + 1; ++s) {
    consider({Family::F1, s, 0});
    consider({Family::F2, s, 0});
    consider({Family::F3, s, 0});
    for (unsigned tt = 1; tt <= s; ++tt) {
      consider({Family::F4, s, tt});
      consider({Family::F5, s, tt});
    }
  }
  for (unsigned tt = 1; 2 * tt - 1 <= n; ++tt)
    for (unsigned s = 0; s < tt; ++s) consider({Family::F6, s, tt});
  return out;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::sufficient: return "S";
    case Evidence::generator: return "G";
    case Evidence::both: return "SG";
    case Evidence::chain: return "chain";
  }
  return "?";
}

std::optional<std::size_t> ModuliPoset::index_of(const TypeSignature& t) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].type == t) return i;
  return std::nullopt;
}

ModuliPoset build_poset(std::size_t n, const PosetOptions& opts) {
  if (n > opts.max_n)
    throw CostGuardError("poset construction limited to n <= " + std::to_string(opts.max_n));
  ModuliPoset p;
  p.n = n;
  for (auto& t : enumerate_types(n)) {
    const std::size_t gd = group_dim(t);
    p.nodes.push_back({std::move(t), n * n - gd, gd});
  }
  const std::size_t count = p.nodes.size();
  using Row = std::vector<char>;
  struct RowData {
    Row suff, nec, gen;
    std::vector<GeneratorStep> steps;
  };
  auto rows = map_ranges(count, opts.jobs, [&](std::size_t lo, std::size_t hi) {
    std::vector<RowData> part;
    for (std::size_t i = lo; i < hi; ++i) {
      RowData r{Row(count, 0), Row(count, 0), Row(count, 0), generator_steps(p.nodes[i].type)};
      for (std::size_t j = 0; j < count; ++j) {
        r.nec[j] = necessary(p.nodes[i].type, p.nodes[j].type);
        r.suff[j] = r.nec[j] && sufficient(p.nodes[i].type, p.nodes[j].type);
      }
      for (const auto& st : r.steps) r.gen[*p.index_of(st.to)] = 1;
      part.push_back(std::move(r));
    }
    return part;
  });
  std::vector<RowData> data;
  for (auto& part : rows)
    for (auto& r : part) data.push_back(std::move(r));

  auto closure = [&](std::vector<Row> rel) {
    for (std::size_t i = 0; i < count; ++i) rel[i][i] = 1;
    for (std::size_t k = 0; k < count; ++k)
      for (std::size_t i = 0; i < count; ++i)
        if (rel[i][k])
          for (std::size_t j = 0; j < count; ++j) rel[i][j] |= rel[k][j];
    return rel;
  };
  std::vector<Row> base(count), gen(count);
  for (std::size_t i = 0; i < count; ++i) {
    gen[i] = data[i].gen;
    base[i] = data[i].gen;
    for (std::size_t j = 0; j < count; ++j) base[i][j] |= data[i].suff[j];
  }
  const auto proven = closure(base);
  const auto gen_reach = closure(gen);

  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j) continue;
      if (proven[i][j]) {
        ensure(data[i].nec[j], "proven relation violates the necessary condition");
        ensure(!proven[j][i], "proven relation has a 2-cycle");
        ensure(p.nodes[j].stratum_dim < p.nodes[i].stratum_dim, "stratum dimension must drop along a relation");
      } else if (data[i].nec[j]) {
        p.unknown.emplace_back(i, j);
      }
    }

  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      if (i == j || !proven[i][j]) continue;
      bool immediate = true;
      for (std::size_t k = 0; k < count && immediate; ++k)
        if (k != i && k != j && proven[i][k] && proven[k][j]) immediate = false;
      if (!immediate) continue;
      SpecEdge e{i, j, Evidence::sufficient, std::nullopt};
      const bool s = data[i].suff[j], g = gen_reach[i][j];
      ensure(s || data[i].gen[j], "immediate relation must come from a single base step");
      e.evidence = s && g ? Evidence::both : (s ? Evidence::sufficient : Evidence::generator);
      if (g)
        for (const auto& st : data[i].steps)
          if (st.to == p.nodes[j].type) {
            e.step = st;
            break;
          }
      p.edges.push_back(std::move(e));
    }
  return p;
}

ModuliPoset restrict_poset(const ModuliPoset& p, const std::vector<TypeSignature>& keep) {
  ModuliPoset r;
  r.n = p.n;
  std::vector<std::optional<std::size_t>> remap(p.nodes.size());
  for (const auto& t : keep) {
    const auto i = p.index_of(t);
    if (!i) throw InputError("type " + format_type(t) + " is not a node of the dimension-" + std::to_string(p.n) +
                             " poset");
    if (remap[*i]) continue;
    remap[*i] = r.nodes.size();
    r.nodes.push_back(p.nodes[*i]);
  }
  for (const auto& e : p.edges)
    if (remap[e.from] && remap[e.to]) {
      SpecEdge c = e;
      c.from = *remap[e.from];
      c.to = *remap[e.to];
      r.edges.push_back(std::move(c));
    }
  for (const auto& [a, b] : p.unknown)
    if (remap[a] && remap[b]) r.unknown.emplace_back(*remap[a], *remap[b]);
  return r;
}

std::string to_dot(const ModuliPoset& p, bool show_unknown) {
  std::ostringstream out;
  out << "digraph moduli_" << p.n << " {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < p.nodes.size(); ++i)
    out << "  n" << i << " [label=\"" << format_type(p.nodes[i].type) << "\\ndim " << p.nodes[i].stratum_dim
        << "\"];\n";
  for (const auto& e : p.edges) {
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.evidence);
    if (e.step) out << " " << to_string(e.step->instance.family);
    out << "\"];\n";
  }
  if (show_unknown)
    for (const auto& [a, b] : p.unknown) out << "  n" << a << " -> n" << b << " [style=dashed, label=\"?\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

namespace {

// Breadth-first search from `from` to `to` among types that can still reach
// `to`; predicate steps are allowed only when `with_predicate` is set.
std::optional<std::vector<PathStep>> search_path(const TypeSignature& from, const TypeSignature& to,
                                                 bool with_predicate) {
  std::vector<TypeSignature> universe;
  if (with_predicate)
    for (auto& t : enumerate_types(from.n()))
      if (necessary(t, to)) universe.push_back(std::move(t));
  std::map<TypeSignature, std::optional<PathStep>> parent;
  std::deque<TypeSignature> queue{from};
  parent.emplace(from, std::nullopt);
  while (!queue.empty()) {
    const TypeSignature cur = queue.front();
    queue.pop_front();
    if (cur == to) {
      std::vector<PathStep> path;
      for (TypeSignature x = to; parent.at(x);) {
        path.push_back(*parent.at(x));
        x = path.back().from;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    auto visit = [&](const TypeSignature& next, std::optional<FamilyInstance> inst) {
      if (parent.contains(next) || !necessary(next, to)) return;
      parent.emplace(next, PathStep{cur, next, inst});
      queue.push_back(next);
    };
    for (const auto& st : generator_steps(cur)) visit(st.to, st.instance);
    if (with_predicate)
      for (const auto& t : universe)
        if (t != cur && sufficient(cur, t)) visit(t, std::nullopt);
  }
  return std::nullopt;
}

}  // namespace

SpecializeResult specialize_query(const TypeSignature& from, const TypeSignature& to) {
  require_same_n(from, to);
  SpecializeResult r;
  if (auto m = first_psi_violation(from, to)) {
    r.verdict = Verdict::no;
    r.violated_m = m;
    return r;
  }
  const bool suff = sufficient(from, to);
  auto gpath = search_path(from, to, false);
  if (suff || gpath) {
    r.verdict = Verdict::yes;
    r.evidence = suff && gpath ? Evidence::both : (suff ? Evidence::sufficient : Evidence::generator);
    if (gpath)
      r.path = std::move(*gpath);
    else if (from != to)
      r.path.push_back({from, to, std::nullopt});
    return r;
  }
  if (auto mixed = search_path(from, to, true)) {
    r.verdict = Verdict::yes;
    r.evidence = Evidence::chain;
    r.path = std::move(*mixed);
    return r;
  }
  return r;
}

}  // namespace qbic
