#pragma once

#include <cstdint>
#include <vector>

#include "proplie/padic.hpp"

namespace proplie {

// One word over the two-letter alphabet {X=0, Y=1}, first letter at the most
// significant position of bits. q is the Dynkin coefficient:
//   log(exp X exp Y) = sum over words q_w [w]
// with [w] the left-nested bracket [[..[l0,l1],l2]..,l_{n-1}].
struct CHWord {
  int len;
  uint32_t bits;
  bigrat q;
};

// Campbell-Hausdorff table truncated at a fixed total degree.
class CHTable {
 public:
  explicit CHTable(int degree);

  int degree() const { return deg_; }

  // Nonzero-coefficient words, ordered by (len, bits).
  const std::vector<CHWord>& words() const { return words_; }

  // Process-wide cache keyed by degree.
  static const CHTable& shared(int degree);

 private:
  int deg_;
  std::vector<CHWord> words_;
};

// Largest degree the series backend will expand. Beyond this the word count
// (~2^(D+1)) makes the rational table impractical; callers surface a BadInput
// suggesting lower precision or the matrix backend.
inline constexpr int kChMaxDegree = 12;

// Least D >= 1 such that every dropped word of degree m > D satisfies
// m*vfloor + (m-1) - floor((m-1)/(p-1)) - v_p(m) >= target, so the series
// tail vanishes mod p^target on inputs of coordinate valuation >= vfloor.
// floor((m-1)/(p-1)) + v_p(m) bounds v_p(den q_w) for every degree-m word.
// Uncapped; compare with kChMaxDegree at the call site.
int ch_truncation_degree(uint64_t p, int target, int vfloor);

bigint factorial(int n);

}  // namespace proplie
