#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "proplie/errors.hpp"

namespace proplie {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Arithmetic context Z/p^N with p an odd prime and N >= 1.  Residues are
// canonical representatives in [0, p^N), stored in 64 bits; contexts where
// p^N would not fit in 63 bits are rejected at construction.
struct PadicCtx {
    uint64_t p = 0;
    int N = 0;
    uint64_t mod = 0; // p^N

    PadicCtx() = default;
    PadicCtx(uint64_t p_, int N_);

    bool operator==(const PadicCtx&) const = default;

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= mod ? s - mod : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : mod - (b - a); }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : mod - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return (uint64_t)((__uint128_t)a * b % mod);
    }

    // reduce an arbitrary (possibly negative) exact integer
    uint64_t reduce(const bigint& v) const;
    uint64_t reduce_ll(long long v) const;

    // valuation of a residue; 0 maps to N meaning "at least N"
    int val(uint64_t a) const;

    // inverse of a unit; ErrKind::NotAUnit if p | a
    uint64_t inv(uint64_t a) const;

    // exact division by p^k; ErrKind::Internal if p^k does not divide a.
    // The result is only meaningful modulo p^(N-k); callers that need full
    // precision must compute at an elevated context first.
    uint64_t divexact_p(uint64_t a, int k) const;

    uint64_t pow_p(int k) const; // p^k for 0 <= k <= N
};

// Value + context.  Kept small; most internal code works on raw residues
// against an ambient PadicCtx instead.
struct PadicInt {
    PadicCtx ctx;
    uint64_t r = 0;

    PadicInt() = default;
    PadicInt(PadicCtx c, uint64_t residue) : ctx(c), r(residue % c.mod) {}

    bool operator==(const PadicInt&) const = default;
};

PadicInt pad_make(uint64_t p, int N, const bigint& value);
int pad_val(const PadicInt& x);
PadicInt pad_inv(const PadicInt& x);
PadicInt pad_add(const PadicInt& a, const PadicInt& b);
PadicInt pad_sub(const PadicInt& a, const PadicInt& b);
PadicInt pad_mul(const PadicInt& a, const PadicInt& b);

// Image of num/den in Z/p^N.  Common powers of p cancel first; a denominator
// with strictly larger p-valuation than the numerator is rejected
// (ErrKind::NotPIntegral).
PadicInt rat_to_padic(const bigint& num, const bigint& den, uint64_t p, int N);

// serialization triple (p, N, residue as decimal string)
std::string pad_serialize(const PadicInt& x);
PadicInt pad_deserialize(const std::string& s);

// shared small helpers
bool is_prime_u64(uint64_t n);
int valuation_bigint(const bigint& v, uint64_t p); // -1 for v = 0 (infinite)

} // namespace proplie
