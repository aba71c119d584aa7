#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace qbic {

// (a; b_1, b_2, ...): a identity summands plus b_m Jordan blocks N_m.
struct TypeSignature {
  std::size_t a = 0;
  std::map<unsigned, std::size_t> b;  // only positive multiplicities are stored

  std::size_t b_at(unsigned m) const {
    const auto it = b.find(m);
    return it == b.end() ? 0 : it->second;
  }
  void add_blocks(unsigned m, std::size_t count);
  // Removes count blocks N_m; returns false (leaving *this unchanged) if too few.
  bool remove_blocks(unsigned m, std::size_t count);

  std::size_t n() const;
  std::size_t corank() const;
  unsigned max_block() const { return b.empty() ? 0 : b.rbegin()->first; }
  bool degenerate() const { return !b.empty(); }

  friend bool operator==(const TypeSignature&, const TypeSignature&) = default;
  friend auto operator<=>(const TypeSignature& x, const TypeSignature& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    const unsigned top = std::max(x.max_block(), y.max_block());
    for (unsigned m = 1; m <= top; ++m)
      if (auto c = x.b_at(m) <=> y.b_at(m); c != 0) return c;
    return std::strong_ordering::equal;
  }
};

TypeSignature direct_sum(const TypeSignature& x, const TypeSignature& y);

// Terms joined by '+': 1^a, N<m>, N<m>^<b>, 0^c (0 is N1). Example: "0+1^2+N3^2".
TypeSignature parse_type(std::string_view text);
std::string format_type(const TypeSignature& t);

}  // namespace qbic
