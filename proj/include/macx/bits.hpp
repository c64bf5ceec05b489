#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace macx {

/// A subset of {0..63}; bit i set means element i is present. Vertex i is
/// shown to users as i+1.
using Mask = std::uint64_t;

inline constexpr int kMaxVertices = 64;

inline int popcount(Mask s) { return std::popcount(s); }
inline bool contains(Mask s, int i) { return (s >> i) & 1U; }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask bit(int i) { return Mask{1} << i; }
inline Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }
inline int lowest(Mask s) { return std::countr_zero(s); }

/// Ascending list of the elements of s.
inline std::vector<int> elements(Mask s) {
  std::vector<int> out;
  out.reserve(popcount(s));
  while (s) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

inline Mask from_elements(const std::vector<int>& xs) {
  Mask s = 0;
  for (int x : xs) s |= bit(x);
  return s;
}

/// Lexicographic order on the ascending element lists.
inline bool lex_less(Mask a, Mask b) {
  while (a && b) {
    int x = lowest(a), y = lowest(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

/// Order used for serialized vertex labels: by cardinality, then lexicographic.
inline bool card_lex_less(Mask a, Mask b) {
  int pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  return lex_less(a, b);
}

/// Number of elements of s strictly below i.
inline int count_below(Mask s, int i) { return popcount(s & low_bits(i)); }

/// 1-based "{1,3,4}" rendering.
std::string to_string(Mask s);

}  // namespace macx
