#include "proplie/chseries.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "proplie/errors.hpp"

namespace proplie {

bigint factorial(int n) {
  bigint r = 1;
  for (int i = 2; i <= n; i++) r *= i;
  return r;
}

namespace {

// Truncated free associative Q-algebra on X, Y. Key = (len << 16) | bits,
// so map order is (len, bits) and concatenation is a shift-or.
using Poly = std::map<uint32_t, bigrat>;

inline uint32_t wkey(int len, uint32_t bits) { return (uint32_t(len) << 16) | bits; }
inline int wlen(uint32_t key) { return int(key >> 16); }
inline uint32_t wbits(uint32_t key) { return key & 0xffffu; }

void add_term(Poly& p, uint32_t key, const bigrat& c) {
  if (c == 0) return;
  auto it = p.find(key);
  if (it == p.end()) {
    p.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly mul_trunc(const Poly& a, const Poly& b, int maxdeg) {
  Poly r;
  for (const auto& [ka, ca] : a) {
    const int la = wlen(ka);
    if (la >= maxdeg) break;
    for (const auto& [kb, cb] : b) {
      const int lb = wlen(kb);
      if (la + lb > maxdeg) break;
      add_term(r, wkey(la + lb, (wbits(ka) << lb) | wbits(kb)), ca * cb);
    }
  }
  return r;
}

}  // namespace

CHTable::CHTable(int degree) : deg_(degree) {
  if (degree < 1 || degree > kChMaxDegree)
    fail(ErrKind::Internal, "CH table degree out of range");

  // S = exp(X) exp(Y) - 1: only words X^a Y^b occur, coefficient 1/(a! b!).
  Poly S;
  for (int a = 0; a <= degree; a++) {
    for (int b = 0; a + b <= degree; b++) {
      if (a + b == 0) continue;
      bigrat c(bigint(1), factorial(a) * factorial(b));
      add_term(S, wkey(a + b, (uint32_t(1) << b) - 1), c);
    }
  }

  // log(1 + S) = sum_{k>=1} (-1)^(k+1) S^k / k, truncated past `degree`.
  Poly Z;
  Poly pw = S;
  for (int k = 1; k <= degree; k++) {
    if (k > 1) pw = mul_trunc(pw, S, degree);
    const bigrat f(bigint((k % 2) ? 1 : -1), bigint(k));
    for (const auto& [key, c] : pw) add_term(Z, key, f * c);
  }

  // Dynkin projection of the (Lie) element Z: q_w = c_w / |w|.
  for (const auto& [key, c] : Z) {
    CHWord w;
    w.len = wlen(key);
    w.bits = wbits(key);
    w.q = c / w.len;
    words_.push_back(std::move(w));
  }

  // Degrees 1 and 2 are pinned by the expansion: c_X = c_Y = 1,
  // c_XY = 1/2, c_YX = -1/2, c_XX = c_YY = 0.
  auto coeff = [&](int len, uint32_t bits) -> bigrat {
    for (const auto& w : words_)
      if (w.len == len && w.bits == bits) return w.q * w.len;
    return bigrat(0);
  };
  const bigrat half(bigint(1), bigint(2));
  bool pinned = coeff(1, 0) == 1 && coeff(1, 1) == 1;
  if (degree >= 2)
    pinned = pinned && coeff(2, 1) == half && coeff(2, 2) == -half &&
             coeff(2, 0) == 0 && coeff(2, 3) == 0;
  if (!pinned) fail(ErrKind::Internal, "CH table low-degree coefficients are off");

  // The left-nested bracket of a word whose first two letters agree starts
  // with [X,X] or [Y,Y]; those words evaluate to zero and are dropped here.
  std::erase_if(words_, [](const CHWord& w) {
    if (w.len < 2) return false;
    const uint32_t top = w.bits >> (w.len - 1);
    const uint32_t second = (w.bits >> (w.len - 2)) & 1u;
    return top == second;
  });
}

const CHTable& CHTable::shared(int degree) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CHTable>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(degree);
  if (it == cache.end())
    it = cache.emplace(degree, std::make_unique<CHTable>(degree)).first;
  return *it->second;
}

int ch_truncation_degree(uint64_t p, int target, int vfloor) {
  if (target < 1) fail(ErrKind::Internal, "truncation target must be positive");
  if (p < 3) fail(ErrKind::Internal, "truncation certificate needs p >= 3");
  // A dropped word w of degree m contributes q_w [w](x,y).  The nested
  // bracket has coordinate valuation >= m*vfloor + (m-1).  Each Goldberg
  // term of the word coefficient c_w has denominator k * prod(a_i! b_i!)
  // with v_p <= (k-1)/(p-1) + (m-k)/(p-1), and q_w = c_w / m, so
  // v_p(den q_w) <= floor((m-1)/(p-1)) + v_p(m).  The v_p(m) debit is not
  // monotone in m, so every dropped degree is checked up to 4*target + 64;
  // past that point (m-1)/2 - log_3(m) >= 3m/8 - 1/2 > target for p >= 3.
  const long long pm1 = (long long)p - 1;
  auto net = [&](long long m) {
    long long vp = 0;
    for (long long t = m; t % (long long)p == 0; t /= (long long)p) vp++;
    return m * vfloor + (m - 1) - (m - 1) / pm1 - vp;
  };
  long long D = 1;
  for (long long m = 2; m <= 4LL * target + 64; m++)
    if (net(m) < target) D = m;
  return (int)D;
}

}  // namespace proplie
