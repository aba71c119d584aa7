#include "qbic/type_signature.hpp"

#include <cctype>

#include "qbic/errors.hpp"

namespace qbic {

void TypeSignature::add_blocks(unsigned m, std::size_t count) {
  if (m == 0) throw InputError("block size must be positive");
  if (count) b[m] += count;
}

bool TypeSignature::remove_blocks(unsigned m, std::size_t count) {
  if (count == 0) return true;
  const auto it = b.find(m);
  if (it == b.end() || it->second < count) return false;
  if ((it->second -= count) == 0) b.erase(it);
  return true;
}

std::size_t TypeSignature::n() const {
  std::size_t s = a;
  for (const auto& [m, c] : b) s += m * c;
  return s;
}

std::size_t TypeSignature::corank() const {
  std::size_t s = 0;
  for (const auto& [m, c] : b) s += c;
  return s;
}

TypeSignature direct_sum(const TypeSignature& x, const TypeSignature& y) {
  TypeSignature s = x;
  s.a += y.a;
  for (const auto& [m, c] : y.b) s.add_blocks(m, c);
  return s;
}

namespace {

std::size_t read_count(std::string_view s, std::size_t& pos, std::string_view whole) {
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw InputError("expected a number at offset " + std::to_string(pos) + " in type '" + std::string(whole) + "'");
  std::size_t v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + static_cast<std::size_t>(s[pos] - '0');
    if (v > 1'000'000) throw InputError("type multiplicity too large in '" + std::string(whole) + "'");
    ++pos;
  }
  return v;
}

}  // namespace

TypeSignature parse_type(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty type string");
  TypeSignature t;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t start = pos;
    std::size_t block = 0;  // 0 marks the identity summand
    if (pos < s.size() && (s[pos] == 'N' || s[pos] == 'n')) {
      ++pos;
      block = read_count(s, pos, text);
      if (block == 0) throw InputError("N0 is not a block in type '" + std::string(text) + "'");
    } else {
      const std::size_t v = read_count(s, pos, text);
      if (v > 1) throw InputError("term must start with 0, 1 or N at offset " + std::to_string(start) + " in '" + std::string(text) + "'");
      block = v == 0 ? 1 : 0;
    }
    std::size_t mult = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      mult = read_count(s, pos, text);
    }
    if (block == 0)
      t.a += mult;
    else
      t.add_blocks(static_cast<unsigned>(block), mult);
    if (pos == s.size()) break;
    if (s[pos] != '+') throw InputError("expected '+' at offset " + std::to_string(pos) + " in type '" + std::string(text) + "'");
    ++pos;
  }
  return t;
}

std::string format_type(const TypeSignature& t) {
  std::string out;
  auto term = [&](const std::string& base, std::size_t mult) {
    if (mult == 0) return;
    if (!out.empty()) out += '+';
    out += base;
    if (mult > 1) out += '^' + std::to_string(mult);
  };
  term("0", t.b_at(1));
  term("1", t.a);
  for (const auto& [m, c] : t.b)
    if (m > 1) term("N" + std::to_string(m), c);
  return out.empty() ? "1^0" : out;
}

}  // namespace qbic
