#include "proplie/linalg.hpp"

#include <algorithm>

namespace proplie {

static bool vec_is_zero(const Vec& v) {
    for (uint64_t x : v)
        if (x) return false;
    return true;
}

HowellBasis howell_form(const PadicCtx& ctx, int dim, const VecList& gens) {
    HowellBasis H;
    H.ctx = ctx;
    H.dim = dim;

    std::vector<Vec> work;
    for (const Vec& g : gens) {
        if ((int)g.size() != dim) fail(ErrKind::Internal, "generator dimension mismatch");
        if (!vec_is_zero(g)) work.push_back(g);
    }

    for (int col = 0; col < dim; ++col) {
        int best = -1, bestval = ctx.N;
        for (int i = 0; i < (int)work.size(); ++i) {
            if (work[i][col] == 0) continue;
            int v = ctx.val(work[i][col]);
            if (v < bestval) { bestval = v; best = i; }
        }
        if (best < 0) continue;

        Vec piv = work[best];
        work.erase(work.begin() + best);
        // normalize pivot entry to p^v
        uint64_t unit = piv[col] / ctx.pow_p(bestval);
        uint64_t uin = ctx.inv(unit % ctx.mod);
        for (auto& e : piv) e = ctx.mul(e, uin);

        uint64_t pv = ctx.pow_p(bestval);
        for (auto& w : work) {
            if (w[col] == 0) continue;
            // w[col] has valuation >= bestval by pivot choice
            uint64_t q = ctx.divexact_p(w[col], bestval);
            for (int j = 0; j < dim; ++j) w[j] = ctx.sub(w[j], ctx.mul(q, piv[j]));
        }
        if (bestval > 0) {
            // annihilator tail keeps the span reachable past this pivot
            Vec tail(dim);
            uint64_t mult = ctx.pow_p(ctx.N - bestval);
            for (int j = 0; j < dim; ++j) tail[j] = ctx.mul(piv[j], mult);
            tail[col] = 0; // p^(N-v) * p^v = 0
            if (!vec_is_zero(tail)) work.push_back(tail);
        }
        (void)pv;
        H.rows.push_back(std::move(piv));
        H.pivot_col.push_back(col);
        H.pivot_val.push_back(bestval);
    }

    // reduce entries above each pivot modulo the pivot value
    for (int i = 0; i < (int)H.rows.size(); ++i) {
        for (int j = i + 1; j < (int)H.rows.size(); ++j) {
            int c = H.pivot_col[j];
            uint64_t pv = ctx.pow_p(H.pivot_val[j]);
            uint64_t q = H.rows[i][c] / pv;
            if (q == 0) continue;
            for (int t = 0; t < dim; ++t) H.rows[i][t] = ctx.sub(H.rows[i][t], ctx.mul(q, H.rows[j][t]));
        }
    }
    return H;
}

bool HowellBasis::contains(const Vec& v) const {
    Vec w = v;
    for (int i = 0; i < (int)rows.size(); ++i) {
        int c = pivot_col[i];
        if (w[c] == 0) continue;
        if (ctx.val(w[c]) < pivot_val[i]) return false;
        uint64_t q = ctx.divexact_p(w[c], pivot_val[i]);
        for (int t = 0; t < dim; ++t) w[t] = ctx.sub(w[t], ctx.mul(q, rows[i][t]));
    }
    return vec_is_zero(w);
}

bool HowellBasis::same_span(const HowellBasis& other) const {
    if (!(ctx == other.ctx) || dim != other.dim) return false;
    if (log_size() != other.log_size()) return false;
    for (const Vec& r : other.rows)
        if (!contains(r)) return false;
    return true;
}

bigint HowellBasis::span_size() const {
    bigint s = 1;
    for (int v : pivot_val) {
        bigint f = 1;
        for (int i = 0; i < ctx.N - v; ++i) f *= ctx.p;
        s *= f;
    }
    return s;
}

int HowellBasis::log_size() const {
    int s = 0;
    for (int v : pivot_val) s += ctx.N - v;
    return s;
}

HowellBasis kernel_mod_pk(const PadicCtx& ctx, const VecList& rows, int ncols) {
    int nrows = (int)rows.size();
    // augmented rows (column_j | e_j); eliminating the left block while
    // carrying the combination record in the right block yields the kernel
    // as the right blocks of rows whose left block vanished
    std::vector<Vec> work;
    for (int j = 0; j < ncols; ++j) {
        Vec a(nrows + ncols, 0);
        for (int i = 0; i < nrows; ++i) a[i] = rows[i][j];
        a[nrows + j] = 1;
        work.push_back(std::move(a));
    }

    std::vector<Vec> done;
    for (int col = 0; col < nrows; ++col) {
        int best = -1, bestval = ctx.N;
        for (int i = 0; i < (int)work.size(); ++i) {
            if (work[i][col] == 0) continue;
            int v = ctx.val(work[i][col]);
            if (v < bestval) { bestval = v; best = i; }
        }
        if (best < 0) continue;
        Vec piv = work[best];
        work.erase(work.begin() + best);
        uint64_t unit = piv[col] / ctx.pow_p(bestval);
        uint64_t uin = ctx.inv(unit % ctx.mod);
        for (auto& e : piv) e = ctx.mul(e, uin);
        for (auto& w : work) {
            if (w[col] == 0) continue;
            uint64_t q = ctx.divexact_p(w[col], bestval);
            for (int j = 0; j < (int)w.size(); ++j) w[j] = ctx.sub(w[j], ctx.mul(q, piv[j]));
        }
        if (bestval > 0) {
            Vec tail(piv.size());
            uint64_t mult = ctx.pow_p(ctx.N - bestval);
            for (int j = 0; j < (int)piv.size(); ++j) tail[j] = ctx.mul(piv[j], mult);
            tail[col] = 0;
            bool leftzero = true;
            for (int j = 0; j < nrows; ++j)
                if (tail[j]) { leftzero = false; break; }
            if (leftzero) {
                done.push_back(tail);
            } else if (!vec_is_zero(tail)) {
                work.push_back(tail);
            }
        }
        done.push_back(std::move(piv));
    }
    for (auto& w : work) done.push_back(w);

    VecList kergens;
    for (const Vec& r : done) {
        bool leftzero = true;
        for (int j = 0; j < nrows; ++j)
            if (r[j]) { leftzero = false; break; }
        if (!leftzero) continue;
        Vec x(r.begin() + nrows, r.end());
        if (!vec_is_zero(x)) kergens.push_back(std::move(x));
    }
    return howell_form(ctx, ncols, kergens);
}

std::vector<bigint> quotient_invariants(const HowellBasis& span) {
    const PadicCtx& ctx = span.ctx;
    std::vector<std::vector<bigint>> m;
    for (const Vec& r : span.rows) {
        std::vector<bigint> row(r.begin(), r.end());
        m.push_back(std::move(row));
    }
    bigint pk = 1;
    for (int i = 0; i < ctx.N; ++i) pk *= ctx.p;
    for (int j = 0; j < span.dim; ++j) {
        std::vector<bigint> row(span.dim, 0);
        row[j] = pk;
        m.push_back(std::move(row));
    }
    std::vector<bigint> div = smith_divisors(std::move(m));
    std::vector<bigint> inv;
    for (const bigint& d : div)
        if (d > 1) inv.push_back(d);
    std::sort(inv.begin(), inv.end(), std::greater<bigint>());
    return inv;
}

int rank_over_Q(const std::vector<std::vector<bigint>>& rows, int ncols) {
    std::vector<std::vector<bigrat>> m;
    for (const auto& r : rows) {
        std::vector<bigrat> row;
        row.reserve(ncols);
        for (const bigint& x : r) row.push_back(bigrat(x));
        m.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < ncols && rank < (int)m.size(); ++col) {
        int piv = -1;
        for (int i = rank; i < (int)m.size(); ++i)
            if (m[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        bigrat d = m[rank][col];
        for (int i = rank + 1; i < (int)m.size(); ++i) {
            if (m[i][col] == 0) continue;
            bigrat f = m[i][col] / d;
            for (int j = col; j < ncols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::vector<bigint> smith_divisors(std::vector<std::vector<bigint>> m) {
    int R = (int)m.size();
    int C = R ? (int)m[0].size() : 0;
    std::vector<bigint> out;
    int t = 0;
    while (t < R && t < C) {
        // locate smallest nonzero entry in the remaining block
        int bi = -1, bj = -1;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j)
                if (m[i][j] != 0 && (bi < 0 || abs(m[i][j]) < abs(m[bi][bj]))) { bi = i; bj = j; }
        if (bi < 0) break;
        std::swap(m[t], m[bi]);
        for (int i = 0; i < R; ++i) std::swap(m[i][t], m[i][bj]);

        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < R; ++i) {
                if (m[i][t] == 0) continue;
                bigint q = m[i][t] / m[t][t];
                for (int j = t; j < C; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]); // remainder is smaller; continue reducing
                    again = true;
                }
            }
            for (int j = t + 1; j < C; ++j) {
                if (m[t][j] == 0) continue;
                bigint q = m[t][j] / m[t][t];
                for (int i = t; i < R; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (int i = t; i < R; ++i) std::swap(m[i][t], m[i][j]);
                    again = true;
                }
            }
        }
        ++t;
    }
    // enforce the divisibility chain
    for (int i = 0; i < t; ++i)
        if (m[i][i] < 0) m[i][i] = -m[i][i];
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
            if (m[i][i] == 0) { std::swap(m[i][i], m[j][j]); continue; }
            if (m[j][j] % m[i][i] != 0) {
                bigint a = m[i][i], b = m[j][j];
                bigint g = gcd(a, b);
                m[i][i] = g;
                m[j][j] = a / g * b;
            }
        }
    }
    for (int i = 0; i < t; ++i)
        if (m[i][i] != 0) out.push_back(m[i][i]);
    return out;
}

Vec mat_vec(const PadicCtx& ctx, const VecList& m, const Vec& v) {
    Vec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        __uint128_t acc = 0;
        for (size_t j = 0; j < v.size(); ++j) acc += (__uint128_t)m[i][j] * v[j] % ctx.mod;
        r[i] = (uint64_t)(acc % ctx.mod);
    }
    return r;
}

VecList mat_mat(const PadicCtx& ctx, const VecList& a, const VecList& b) {
    size_t n = a.size(), k = b.size(), mcols = b.empty() ? 0 : b[0].size();
    VecList r(n, Vec(mcols, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            uint64_t ait = a[i][t];
            if (!ait) continue;
            for (size_t j = 0; j < mcols; ++j)
                r[i][j] = ctx.add(r[i][j], ctx.mul(ait, b[t][j]));
        }
    return r;
}

VecList mat_identity(const PadicCtx& ctx, int n) {
    (void)ctx;
    VecList m(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

VecList mat_pow(const PadicCtx& ctx, VecList m, bigint e) {
    int n = (int)m.size();
    VecList r = mat_identity(ctx, n);
    while (e > 0) {
        if ((e & 1) != 0) r = mat_mat(ctx, r, m);
        m = mat_mat(ctx, m, m);
        e >>= 1;
    }
    return r;
}

bool mat_is_identity(const VecList& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != (uint64_t)(i == j)) return false;
    return true;
}

Vec solve_unit_system(const PadicCtx& ctx, VecList a, Vec b) {
    int n = (int)a.size();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col] % ctx.p != 0) { piv = i; break; }
        if (piv < 0) fail(ErrKind::Internal, "system matrix not invertible mod p");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        uint64_t inv = ctx.inv(a[col][col]);
        for (int j = 0; j < n; ++j) a[col][j] = ctx.mul(a[col][j], inv);
        b[col] = ctx.mul(b[col], inv);
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            uint64_t f = a[i][col];
            for (int j = 0; j < n; ++j) a[i][j] = ctx.sub(a[i][j], ctx.mul(f, a[col][j]));
            b[i] = ctx.sub(b[i], ctx.mul(f, b[col]));
        }
    }
    return b;
}

} // namespace proplie
