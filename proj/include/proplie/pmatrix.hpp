#pragma once

#include "proplie/linalg.hpp"
#include "proplie/padic.hpp"

namespace proplie {

// Square matrix over Z/p^N.
struct PadicMatrix {
    PadicCtx ctx;
    int n = 0;
    VecList a; // row major, residues

    PadicMatrix() = default;
    PadicMatrix(PadicCtx c, int n_) : ctx(c), n(n_), a(n_, Vec(n_, 0)) {}

    bool operator==(const PadicMatrix&) const = default;
};

PadicMatrix mat_add(const PadicMatrix& x, const PadicMatrix& y);
PadicMatrix mat_sub(const PadicMatrix& x, const PadicMatrix& y);
PadicMatrix mat_mul(const PadicMatrix& x, const PadicMatrix& y);

// exp of a matrix all of whose entries have valuation >= 1.  The series is
// truncated at the first K with K*(p-2) >= N*(p-1)-1; for every dropped term
// v_p(M^k/k!) >= k - (k-1)/(p-1) >= N, which the implementation asserts via
// the exact v_p(K!) = (K - digitsum_p(K))/(p-1).  Result is exact mod p^N and
// is congruent to I mod p.
PadicMatrix mat_exp(const PadicMatrix& m);

// log of a matrix congruent to I mod p, truncated at the first K with
// p^(K-N) >= K so every dropped Z^k/k term has valuation >= N.
PadicMatrix mat_log(const PadicMatrix& u);

// Internal-precision variants used by the group backends.  Entries are exact
// integers (or exact residues at precision >= the stated requirement); the
// result is exact mod p^P.
VecList mat_exp_exact(uint64_t p, int P, const std::vector<std::vector<bigint>>& m);
// input must be exact mod p^P (any lift); result exact mod p^P
VecList mat_log_exact(uint64_t p, int P, const VecList& u_lift);

int vp_factorial(uint64_t p, long long k); // (k - digitsum_p(k))/(p-1)

} // namespace proplie
