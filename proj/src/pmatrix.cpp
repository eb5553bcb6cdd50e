#include "proplie/pmatrix.hpp"

namespace proplie {

int vp_factorial(uint64_t p, long long k) {
    long long s = 0, t = k;
    while (t) { s += t % (long long)p; t /= (long long)p; }
    return (int)((k - s) / ((long long)p - 1));
}

static int vp_int(uint64_t p, long long k) {
    int v = 0;
    while (k % (long long)p == 0) { k /= (long long)p; ++v; }
    return v;
}

static void check_square_same(const PadicMatrix& x, const PadicMatrix& y) {
    if (!(x.ctx == y.ctx) || x.n != y.n) fail(ErrKind::BadInput, "matrix shape or context mismatch");
}

PadicMatrix mat_add(const PadicMatrix& x, const PadicMatrix& y) {
    check_square_same(x, y);
    PadicMatrix r(x.ctx, x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) r.a[i][j] = x.ctx.add(x.a[i][j], y.a[i][j]);
    return r;
}

PadicMatrix mat_sub(const PadicMatrix& x, const PadicMatrix& y) {
    check_square_same(x, y);
    PadicMatrix r(x.ctx, x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) r.a[i][j] = x.ctx.sub(x.a[i][j], y.a[i][j]);
    return r;
}

PadicMatrix mat_mul(const PadicMatrix& x, const PadicMatrix& y) {
    check_square_same(x, y);
    PadicMatrix r(x.ctx, x.n);
    r.a = mat_mat(x.ctx, x.a, y.a);
    return r;
}

// truncation index for exp at target precision P: least K with
// K*(p-2) >= P*(p-1) - 1, so k - v_p(k!) >= P for every k >= K
static long long exp_cutoff(uint64_t p, int P) {
    long long num = (long long)P * ((long long)p - 1) - 1;
    long long den = (long long)p - 2;
    long long K = (num + den - 1) / den;
    if (K < 1) K = 1;
    // dropped-tail certificate, with the exact factorial valuation
    if (K - vp_factorial(p, K) < P) fail(ErrKind::Internal, "exp truncation certificate failed");
    return K;
}

VecList mat_exp_exact(uint64_t p, int P, const std::vector<std::vector<bigint>>& m) {
    int n = (int)m.size();
    long long K = exp_cutoff(p, P);
    int pad = vp_factorial(p, K - 1);
    PadicCtx big(p, P + pad);

    VecList M(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            M[i][j] = big.reduce(m[i][j]);
            if (big.val(M[i][j]) < 1) fail(ErrKind::OutsideConvergenceDomain, "exp argument entry is a unit");
        }

    VecList acc = mat_identity(big, n);
    VecList pw = mat_identity(big, n);
    bigint kfact = 1;
    for (long long k = 1; k < K; ++k) {
        pw = mat_mat(big, pw, M);
        kfact *= k;
        int v = vp_factorial(p, k);
        bigint unitpart = kfact;
        for (int i = 0; i < v; ++i) unitpart /= p;
        uint64_t uin = big.inv(big.reduce(unitpart));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                uint64_t t = big.divexact_p(pw[i][j], v); // v_p(M^k) >= k >= v
                acc[i][j] = big.add(acc[i][j], big.mul(t, uin));
            }
    }
    PadicCtx out(p, P);
    VecList r(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = acc[i][j] % out.mod;
    return r;
}

static long long log_cutoff(uint64_t p, int P) {
    // least K with p^(K-P) >= K; then k - v_p(k) >= k - log_p(k) >= P for k >= K
    long long K = P;
    while (true) {
        // compare p^(K-P) with K without overflow
        long long e = K - P;
        __uint128_t pw = 1;
        bool ge = false;
        for (long long i = 0; i < e; ++i) {
            pw *= p;
            if (pw >= (__uint128_t)K) { ge = true; break; }
        }
        if (e > 0 && (ge || pw >= (__uint128_t)K)) break;
        ++K;
    }
    return K;
}

VecList mat_log_exact(uint64_t p, int P, const VecList& u_lift) {
    int n = (int)u_lift.size();
    long long K = log_cutoff(p, P);
    int pad = 0;
    for (long long k = 1; k < K; ++k) pad = std::max(pad, vp_int(p, k));
    PadicCtx big(p, P + pad);

    VecList Z(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            uint64_t e = u_lift[i][j] % big.mod;
            if (i == j) e = big.sub(e, 1);
            Z[i][j] = e;
            if (big.val(e) < 1) fail(ErrKind::OutsideConvergenceDomain, "log argument is not congruent to I mod p");
        }

    VecList acc(n, Vec(n, 0));
    VecList pw = mat_identity(big, n);
    for (long long k = 1; k < K; ++k) {
        pw = mat_mat(big, pw, Z);
        int v = vp_int(p, k);
        uint64_t uin = big.inv(big.reduce_ll((long long)(k / (long long)big.pow_p(v))));
        bool neg = (k % 2 == 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                uint64_t t = big.mul(big.divexact_p(pw[i][j], v), uin);
                acc[i][j] = neg ? big.sub(acc[i][j], t) : big.add(acc[i][j], t);
            }
    }
    PadicCtx out(p, P);
    VecList r(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = acc[i][j] % out.mod;
    return r;
}

PadicMatrix mat_exp(const PadicMatrix& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (m.ctx.val(m.a[i][j]) < 1)
                fail(ErrKind::OutsideConvergenceDomain, "mat_exp requires all entries divisible by p");
    std::vector<std::vector<bigint>> lift(m.n, std::vector<bigint>(m.n));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) lift[i][j] = m.a[i][j];
    PadicMatrix r(m.ctx, m.n);
    r.a = mat_exp_exact(m.ctx.p, m.ctx.N, lift);
    for (int i = 0; i < m.n; ++i)
        if (m.ctx.val(m.ctx.sub(r.a[i][i], 1)) < 1) fail(ErrKind::Internal, "exp image not congruent to I mod p");
    return r;
}

PadicMatrix mat_log(const PadicMatrix& u) {
    for (int i = 0; i < u.n; ++i)
        for (int j = 0; j < u.n; ++j) {
            uint64_t d = i == j ? u.ctx.sub(u.a[i][j], 1) : u.a[i][j];
            if (u.ctx.val(d) < 1)
                fail(ErrKind::OutsideConvergenceDomain, "mat_log requires U = I mod p");
        }
    PadicMatrix r(u.ctx, u.n);
    r.a = mat_log_exact(u.ctx.p, u.ctx.N, u.a);
    return r;
}

} // namespace proplie
