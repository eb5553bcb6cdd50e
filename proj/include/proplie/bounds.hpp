#pragma once

// Closed-form numeric bounds for pro-p groups acting on arithmetic data:
// nilpotency and solvability budgets attached to a fixed-point-free
// automorphism of prime order, derived-length bounds from p-rank,
// an infinitude criterion from generator/relation counts, and the
// unit-rank lower bounds that drive the required-T and tower-level
// calculators.  Everything is exact integer or rational arithmetic.

#include <optional>

#include "proplie/padic.hpp"

namespace proplie {

// Nilpotency class bound for a finite (or pro-p) group admitting a
// fixed-point-free automorphism of prime order ell.  ell = 2 forces the
// group to be abelian, which is a structural statement rather than a
// class value, so it is reported as a tag.
struct NilpotencyBound {
  bool abelian = false;
  bigint value = 0;  // meaningful only when !abelian
};

// ell must be prime.  ell = 3 gives class <= 2.  For ell >= 5 the value is
// ((ell-1)^(2^(ell-1)-1) - 1) / (ell-2), exactly.  The result has about
// 2^(ell-1) log2(ell-1) bits, so ell > 23 is refused (BudgetExceeded)
// rather than allocating gigabytes.
NilpotencyBound n_ell(int ell);

// Solvability-length budget for the same situation: m(2) = 1, m(3) = 2,
// and for ell >= 5 the smallest m with 2^(m-1) (ell-1)(ell-2) >= (ell-1)^(2^(ell-1)).
// Same size guard as n_ell.
bigint m_ell(int ell);

// Derived length bounds for a d-generated pro-p group with a
// fixed-point-free automorphism of prime order ell.
struct DerivedLengthBound {
  bigint rank_bound = 0;                 // 2^(d+1) - d - 4 + ceil(log2 d)
  bigint order_bound = 0;                // d (2^(ell-1) - 1) + ceil(log2 d)
  std::optional<bigint> uniform_bound;   // 2^(ell-1) - 1, only when the
                                         // uniform flag is set
  bigint minimum = 0;                    // least of the bounds present
};

// d >= 1; d = 1 makes rank_bound degenerate (it can be negative) and the
// raw values are reported unclamped.
DerivedLengthBound shalev_dl(int d, int ell, bool uniform);

// Generator/relation infinitude test: true when d >= 2 and
// (d-2)^2 >= 4 (t + r1 + r2 + 1).  All arguments must be non-negative.
bool golod_shafarevich_infinite(const bigint& d, const bigint& t_size,
                                const bigint& r1, const bigint& r2);

// Shared input block for the unit-rank bound.  Counts are non-negative;
// order_g >= 1.  r_inf enters all formulas as the exact rational r_inf/2.
struct BoundsInput {
  int ell = 0;           // auxiliary automorphism order (not used here,
  uint64_t p = 0;        //  carried for calculators that need them)
  bigint d = 0;          // generator rank
  bigint s = 0;          // target free-rank surplus
  bigint r1 = 0;         // real places of the base field
  bigint r2 = 0;         // complex places of the base field
  bigint d_inf = 0;      // archimedean places decomposed in the extension
  bigint r_inf = 0;      // archimedean places ramified in the extension
  bigint s_size = 0;     // |S|
  bigint s_ram = 0;      // |S_ram|
  bigint t_size = 0;     // |T|
  bigint order_g = 1;    // |G| of the acting group
  bigint dp_cl = 0;      // p-rank of the class group
  bigint dp_h2 = 0;      // p-rank of the auxiliary H^2 term
  bool mu_p_in_l = false;
};

// Lower bound for the norm-rank t of the S-unit module, together with the
// T-independent defect A satisfying  t_lower = |T| - A.  Two exact
// formulas, selected by mu_p_in_l:
//   without mu_p:
//     t >= |T| + d_inf + r_inf/2
//          - (|G|-1)(r1 + r2 - d_inf - r_inf/2 + dp_cl + |G||S| + |S_ram|) - 1
//   with mu_p:
//     t >= |T| + d_inf + r_inf/2
//          - (|G|-1)(r1 + r2 + 1 - d_inf - r_inf/2 + dp_cl + |G||S|
//                    + |G||S_ram| + dp_h2)
// (no trailing -1 in the second form).
struct UnitRankBound {
  bigrat t_lower = 0;
  bigrat a = 0;  // a = t_size - t_lower; independent of t_size
};
UnitRankBound unit_rank_bound(const BoundsInput& in);

// Smallest admissible |T|: ceil(a + s |G| (|S||G| + 1)), clamped at zero.
// clamped reports whether the raw value was negative.
struct RequiredT {
  bigint value = 0;
  bool clamped = false;
};
RequiredT required_T(const bigrat& a, const bigint& s, const bigint& order_g,
                     const bigint& s_size);

// Smallest level n >= 0 in the cyclotomic p-tower with
//   r1 p^n - (order_c - 1) dp_c - 1 >= s order_c.
// r1 >= 1 is required (otherwise the left side never grows and no level
// works).  cyclo_n0 fixes p = 3.
int cyclo_n0(const bigint& s, const bigint& r1, const bigint& order_c,
             const bigint& dp_c);
int cyclo_n0_at(uint64_t p, const bigint& s, const bigint& r1,
                const bigint& order_c, const bigint& dp_c);

}  // namespace proplie
