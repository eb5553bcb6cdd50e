#include "proplie/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "proplie/errors.hpp"

namespace proplie {
namespace {

void check_prime_order(int ell, const char* who) {
  if (ell < 2 || !is_prime_u64(static_cast<uint64_t>(ell)))
    fail(ErrKind::BadInput, std::string(who) + ": automorphism order must be prime");
}

// Result sizes grow like 2^(ell-1) log2(ell-1) bits.
constexpr int kMaxFormulaEll = 23;

void check_formula_size(int ell, const char* who) {
  if (ell > kMaxFormulaEll)
    fail(ErrKind::BudgetExceeded,
         std::string(who) + ": closed form exceeds the size budget for ell > 23");
}

bigint pow_big(const bigint& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

// smallest c >= 0 with 2^c >= q, for q >= 1
bigint ceil_log2(const bigint& q) {
  if (q <= 0) fail(ErrKind::Internal, "ceil_log2: positive argument required");
  if (q == 1) return 0;
  std::size_t top = boost::multiprecision::msb(q);
  bigint c(top);
  if ((q & (q - 1)) != 0) c += 1;
  return c;
}

bigint rat_ceil(const bigrat& x) {
  bigint n = boost::multiprecision::numerator(x);
  bigint d = boost::multiprecision::denominator(x);
  bigint q = n / d;  // truncation; exact when d divides n
  if (q * d < n) q += 1;
  return q;
}

void check_nonneg(const bigint& v, const char* name, const char* who) {
  if (v < 0)
    fail(ErrKind::BadInput, std::string(who) + ": " + name + " must be non-negative");
}

}  // namespace

NilpotencyBound n_ell(int ell) {
  check_prime_order(ell, "n_ell");
  NilpotencyBound out;
  if (ell == 2) {
    out.abelian = true;
    return out;
  }
  if (ell == 3) {
    out.value = 2;
    return out;
  }
  check_formula_size(ell, "n_ell");
  unsigned exp = (1u << (ell - 1)) - 1;
  bigint num = pow_big(bigint(ell - 1), exp) - 1;
  // (ell-1)^k = 1 mod (ell-2), so the division is exact
  out.value = num / (ell - 2);
  return out;
}

bigint m_ell(int ell) {
  check_prime_order(ell, "m_ell");
  if (ell == 2) return 1;
  if (ell == 3) return 2;
  check_formula_size(ell, "m_ell");
  bigint a = pow_big(bigint(ell - 1), 1u << (ell - 1));
  bigint b = bigint(ell - 1) * (ell - 2);
  bigint q = (a + b - 1) / b;  // ceil(a/b)
  // smallest c with 2^c b >= a, i.e. 2^c >= ceil(a/b)
  return 1 + ceil_log2(q);
}

DerivedLengthBound shalev_dl(int d, int ell, bool uniform) {
  if (d < 1) fail(ErrKind::BadInput, "shalev_dl: generator rank must be at least 1");
  check_prime_order(ell, "shalev_dl");
  constexpr int kMaxExponentArg = 1 << 20;
  if (d > kMaxExponentArg || ell > kMaxExponentArg)
    fail(ErrKind::BudgetExceeded, "shalev_dl: exponent exceeds the size budget");
  DerivedLengthBound out;
  bigint log_term = ceil_log2(bigint(d));
  out.rank_bound = pow_big(bigint(2), static_cast<unsigned>(d) + 1) - d - 4 + log_term;
  bigint order_factor = pow_big(bigint(2), static_cast<unsigned>(ell) - 1) - 1;
  out.order_bound = bigint(d) * order_factor + log_term;
  out.minimum = out.rank_bound < out.order_bound ? out.rank_bound : out.order_bound;
  if (uniform) {
    out.uniform_bound = order_factor;
    if (*out.uniform_bound < out.minimum) out.minimum = *out.uniform_bound;
  }
  return out;
}

bool golod_shafarevich_infinite(const bigint& d, const bigint& t_size,
                                const bigint& r1, const bigint& r2) {
  check_nonneg(d, "d", "golod_shafarevich_infinite");
  check_nonneg(t_size, "|T|", "golod_shafarevich_infinite");
  check_nonneg(r1, "r1", "golod_shafarevich_infinite");
  check_nonneg(r2, "r2", "golod_shafarevich_infinite");
  if (d < 2) return false;
  return (d - 2) * (d - 2) >= 4 * (t_size + r1 + r2 + 1);
}

UnitRankBound unit_rank_bound(const BoundsInput& in) {
  const char* who = "unit_rank_bound";
  check_nonneg(in.r1, "r1", who);
  check_nonneg(in.r2, "r2", who);
  check_nonneg(in.d_inf, "d_inf", who);
  check_nonneg(in.r_inf, "r_inf", who);
  check_nonneg(in.s_size, "|S|", who);
  check_nonneg(in.s_ram, "|S_ram|", who);
  check_nonneg(in.t_size, "|T|", who);
  check_nonneg(in.dp_cl, "dp_cl", who);
  check_nonneg(in.dp_h2, "dp_h2", who);
  if (in.order_g < 1) fail(ErrKind::BadInput, "unit_rank_bound: |G| must be at least 1");

  bigrat half_r_inf = bigrat(in.r_inf) / 2;
  bigrat base = bigrat(in.t_size) + bigrat(in.d_inf) + half_r_inf;
  bigrat paren;
  if (in.mu_p_in_l) {
    paren = bigrat(in.r1) + bigrat(in.r2) + 1 - bigrat(in.d_inf) - half_r_inf +
            bigrat(in.dp_cl) + bigrat(in.order_g * in.s_size) +
            bigrat(in.order_g * in.s_ram) + bigrat(in.dp_h2);
  } else {
    base -= 1;
    paren = bigrat(in.r1) + bigrat(in.r2) - bigrat(in.d_inf) - half_r_inf +
            bigrat(in.dp_cl) + bigrat(in.order_g * in.s_size) + bigrat(in.s_ram);
  }
  UnitRankBound out;
  out.t_lower = base - bigrat(in.order_g - 1) * paren;
  out.a = bigrat(in.t_size) - out.t_lower;
  return out;
}

RequiredT required_T(const bigrat& a, const bigint& s, const bigint& order_g,
                     const bigint& s_size) {
  check_nonneg(s, "s", "required_T");
  check_nonneg(s_size, "|S|", "required_T");
  if (order_g < 1) fail(ErrKind::BadInput, "required_T: |G| must be at least 1");
  bigrat raw = a + bigrat(s * order_g * (s_size * order_g + 1));
  RequiredT out;
  out.value = rat_ceil(raw);
  if (out.value < 0) {
    out.value = 0;
    out.clamped = true;
  }
  return out;
}

int cyclo_n0_at(uint64_t p, const bigint& s, const bigint& r1,
                const bigint& order_c, const bigint& dp_c) {
  PadicCtx probe(p, 1);  // validates that p is an odd prime
  (void)probe;
  check_nonneg(s, "s", "cyclo_n0");
  check_nonneg(dp_c, "dp_c", "cyclo_n0");
  if (r1 < 1) fail(ErrKind::BadInput, "cyclo_n0: r1 must be at least 1");
  if (order_c < 1) fail(ErrKind::BadInput, "cyclo_n0: |C| must be at least 1");
  bigint rhs = s * order_c + (order_c - 1) * dp_c + 1;
  bigint lhs = r1;  // r1 p^n, starting at n = 0
  int n = 0;
  while (lhs < rhs) {
    lhs *= p;
    ++n;
  }
  return n;
}

int cyclo_n0(const bigint& s, const bigint& r1, const bigint& order_c,
             const bigint& dp_c) {
  return cyclo_n0_at(3, s, r1, order_c, dp_c);
}

}  // namespace proplie
