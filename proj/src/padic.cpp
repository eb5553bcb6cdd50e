#include "proplie/padic.hpp"

#include <sstream>

namespace proplie {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % d == 0) return n == d;
        if (d * d > n) return true;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    auto mulm = [&](uint64_t a, uint64_t b) { return (uint64_t)((__uint128_t)a * b % n); };
    auto powm = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        a %= n;
        while (e) {
            if (e & 1) r = mulm(r, a);
            a = mulm(a, a);
            e >>= 1;
        }
        return r;
    };
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        uint64_t x = powm(a, d);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulm(x, x);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

int valuation_bigint(const bigint& v, uint64_t p) {
    if (v == 0) return -1;
    bigint a = abs(v);
    int k = 0;
    while (a % p == 0) { a /= p; ++k; }
    return k;
}

PadicCtx::PadicCtx(uint64_t p_, int N_) : p(p_), N(N_) {
    if (p < 3 || !is_prime_u64(p)) fail(ErrKind::BadInput, "p must be an odd prime, got " + std::to_string(p));
    if (N < 1) fail(ErrKind::BadInput, "precision must be >= 1");
    mod = 1;
    for (int i = 0; i < N; ++i) {
        if (mod > (uint64_t(1) << 62) / p) fail(ErrKind::BadInput, "p^N exceeds the 63-bit residue budget");
        mod *= p;
    }
}

uint64_t PadicCtx::reduce(const bigint& v) const {
    bigint r = v % (bigint)mod;
    if (r < 0) r += mod;
    return (uint64_t)r;
}

uint64_t PadicCtx::reduce_ll(long long v) const {
    long long m = (long long)mod;
    long long r = v % m;
    if (r < 0) r += m;
    return (uint64_t)r;
}

int PadicCtx::val(uint64_t a) const {
    if (a == 0) return N; // >= N
    int k = 0;
    while (a % p == 0) { a /= p; ++k; }
    return k;
}

uint64_t PadicCtx::inv(uint64_t a) const {
    a %= mod;
    if (a % p == 0) fail(ErrKind::NotAUnit, "residue " + std::to_string(a) + " is not a unit mod " + std::to_string(p) + "^" + std::to_string(N));
    // extended Euclid on (a, p^N)
    long long t0 = 0, t1 = 1;
    long long r0 = (long long)mod, r1 = (long long)a;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long t2 = t0 - q * t1;
        long long r2 = r0 - q * r1;
        t0 = t1; t1 = t2;
        r0 = r1; r1 = r2;
    }
    // r0 = gcd = 1 since a is a unit
    if (r0 != 1) fail(ErrKind::Internal, "gcd != 1 in unit inversion");
    return reduce_ll(t0);
}

uint64_t PadicCtx::divexact_p(uint64_t a, int k) const {
    uint64_t q = pow_p(k);
    if (a % q != 0) fail(ErrKind::Internal, "certified p-power division failed: v_p too small");
    return a / q;
}

uint64_t PadicCtx::pow_p(int k) const {
    if (k < 0 || k > N) fail(ErrKind::Internal, "p-power exponent out of range");
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

PadicInt pad_make(uint64_t p, int N, const bigint& value) {
    PadicCtx c(p, N);
    return PadicInt(c, c.reduce(value));
}

int pad_val(const PadicInt& x) { return x.ctx.val(x.r); }

PadicInt pad_inv(const PadicInt& x) { return PadicInt(x.ctx, x.ctx.inv(x.r)); }

static void check_same_ctx(const PadicInt& a, const PadicInt& b) {
    if (!(a.ctx == b.ctx)) fail(ErrKind::BadInput, "mixed p-adic contexts");
}

PadicInt pad_add(const PadicInt& a, const PadicInt& b) {
    check_same_ctx(a, b);
    return PadicInt(a.ctx, a.ctx.add(a.r, b.r));
}

PadicInt pad_sub(const PadicInt& a, const PadicInt& b) {
    check_same_ctx(a, b);
    return PadicInt(a.ctx, a.ctx.sub(a.r, b.r));
}

PadicInt pad_mul(const PadicInt& a, const PadicInt& b) {
    check_same_ctx(a, b);
    return PadicInt(a.ctx, a.ctx.mul(a.r, b.r));
}

PadicInt rat_to_padic(const bigint& num, const bigint& den, uint64_t p, int N) {
    PadicCtx c(p, N);
    if (den == 0) fail(ErrKind::BadInput, "zero denominator");
    if (num == 0) return PadicInt(c, 0);
    int vn = valuation_bigint(num, p);
    int vd = valuation_bigint(den, p);
    if (vd > vn) fail(ErrKind::NotPIntegral, "denominator p-valuation exceeds numerator's");
    bigint pn = 1;
    for (int i = 0; i < vd; ++i) pn *= p;
    bigint n2 = num / pn, d2 = den / pn;
    uint64_t u = c.inv(c.reduce(d2));
    return PadicInt(c, c.mul(c.reduce(n2), u));
}

std::string pad_serialize(const PadicInt& x) {
    std::ostringstream os;
    os << "(" << x.ctx.p << "," << x.ctx.N << "," << x.r << ")";
    return os.str();
}

PadicInt pad_deserialize(const std::string& s) {
    uint64_t p = 0, r = 0;
    int N = 0;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    std::istringstream is(s);
    is >> c1 >> p >> c2 >> N >> c3 >> r >> c4;
    if (!is || c1 != '(' || c2 != ',' || c3 != ',' || c4 != ')')
        fail(ErrKind::BadInput, "malformed p-adic triple: " + s);
    return pad_make(p, N, bigint(r));
}

} // namespace proplie
