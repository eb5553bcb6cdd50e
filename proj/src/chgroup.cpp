#include "proplie/chgroup.hpp"

#include <algorithm>
#include <functional>

#include "proplie/pmatrix.hpp"

namespace proplie {

namespace {

bool all_zero(const Vec& v) {
    for (uint64_t e : v)
        if (e) return false;
    return true;
}

int min_valuation(const PadicCtx& c, const Vec& v) {
    int best = c.N;
    for (uint64_t e : v) best = std::min(best, c.val(e));
    return best;
}

BigMat bigmat_mul(const BigMat& a, const BigMat& b) {
    const int n = (int)a.size();
    BigMat r(n, std::vector<bigint>(n, 0));
    for (int i = 0; i < n; i++)
        for (int k = 0; k < n; k++) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < n; j++) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// sum of coords[i] * images[i] as exact integers
BigMat lattice_lincomb(const detail::MatrixEngine& eng, const Vec& coords) {
    BigMat x(eng.n, std::vector<bigint>(eng.n, 0));
    for (int i = 0; i < eng.dim; i++) {
        if (coords[i] == 0) continue;
        for (int r = 0; r < eng.n; r++)
            for (int s = 0; s < eng.n; s++) x[r][s] += bigint(coords[i]) * eng.images[i][r][s];
    }
    return x;
}

VecList mat_inverse(const PadicCtx& ctx, const VecList& g) {
    const int n = (int)g.size();
    VecList inv(n, Vec(n, 0));
    for (int c = 0; c < n; c++) {
        Vec e(n, 0);
        e[c] = 1;
        Vec col = solve_unit_system(ctx, g, e);
        for (int r = 0; r < n; r++) inv[r][c] = col[r];
    }
    return inv;
}

std::vector<BracketEntry> raw_brackets(const LieAlgebra& L) {
    std::vector<BracketEntry> br;
    for (int i = 0; i < L.dim; i++)
        for (int j = i + 1; j < L.dim; j++) {
            const auto& row = L.cij_raw[L.pair_index(i, j)];
            for (const bigint& e : row)
                if (e != 0) {
                    br.emplace_back(i, j, row);
                    break;
                }
        }
    return br;
}

} // namespace

namespace detail {

SeriesEvaluator make_series_evaluator(const LieAlgebra& L, int target, int vfloor) {
    if (!is_powerful(L))
        fail(ErrKind::BadInput, "the uniform group law needs a powerful algebra: (L,L) must lie in p*L");
    SeriesEvaluator ev;
    ev.target = target;
    ev.vfloor = vfloor;
    ev.dim = L.dim;
    ev.deg = ch_truncation_degree(L.p, target, vfloor);
    if (ev.deg > kChMaxDegree)
        fail(ErrKind::BadInput,
             "series backend cannot certify precision p^" + std::to_string(target) +
                 " at p = " + std::to_string(L.p) +
                 " (truncation degree " + std::to_string(ev.deg) + " exceeds " +
                 std::to_string(kChMaxDegree) + "); use the matrix backend or lower the precision");
    ev.table = &CHTable::shared(ev.deg);

    ev.debit = 0;
    for (const CHWord& w : ev.table->words())
        ev.debit = std::max(ev.debit, valuation_bigint(denominator(w.q), L.p));
    try {
        ev.ectx = PadicCtx(L.p, target + ev.debit);
    } catch (const Error&) {
        fail(ErrKind::BadInput,
             "series backend needs working precision p^" + std::to_string(target + ev.debit) +
                 ", beyond the 63-bit residue budget; use the matrix backend or lower the precision");
    }

    const size_t nw = ev.table->words().size();
    ev.num_mod.resize(nw);
    ev.uinv.resize(nw);
    ev.shift.resize(nw);
    for (size_t k = 0; k < nw; k++) {
        const CHWord& w = ev.table->words()[k];
        const bigint den = denominator(w.q);
        const int e = valuation_bigint(den, L.p);
        // lift independence: a p^target perturbation of an input moves the
        // word by >= target + (len-1) - e_w, so e_w may not exceed len-1
        if (e > w.len - 1) fail(ErrKind::Internal, "word denominator exceeds its bracket credit");
        ev.shift[k] = e;
        bigint unit = den;
        for (int t = 0; t < e; t++) unit /= L.p;
        ev.num_mod[k] = ev.ectx.reduce(numerator(w.q));
        ev.uinv[k] = ev.ectx.inv(ev.ectx.reduce(unit));
        ev.index.emplace((uint32_t(w.len) << 16) | w.bits, k);
    }

    ev.rows.assign(L.cij_raw.size(), Vec(L.dim, 0));
    for (size_t r = 0; r < L.cij_raw.size(); r++)
        for (int k = 0; k < L.dim; k++) ev.rows[r][k] = ev.ectx.reduce(L.cij_raw[r][k]);
    return ev;
}

Vec SeriesEvaluator::mul(const Vec& x, const Vec& y) const {
    if ((int)x.size() != dim || (int)y.size() != dim)
        fail(ErrKind::BadInput, "coordinate length does not match the algebra dimension");
    const PadicCtx& c = ectx;
    if (vfloor > 0)
        for (int i = 0; i < dim; i++)
            if (c.val(x[i]) < vfloor || c.val(y[i]) < vfloor)
                fail(ErrKind::Internal, "series input is below the certified valuation floor");
    auto pair_index = [&](int i, int j) { return i * dim - i * (i + 1) / 2 + (j - i - 1); };
    auto ebracket = [&](const Vec& a, const Vec& b) {
        Vec out(dim, 0);
        for (int i = 0; i < dim; i++)
            for (int j = i + 1; j < dim; j++) {
                const uint64_t t = c.sub(c.mul(a[i], b[j]), c.mul(a[j], b[i]));
                if (t == 0) continue;
                const Vec& row = rows[pair_index(i, j)];
                for (int k = 0; k < dim; k++)
                    if (row[k]) out[k] = c.add(out[k], c.mul(t, row[k]));
            }
        return out;
    };

    Vec acc(dim, 0);
    const Vec* args[2] = {&x, &y};
    // shared-prefix walk over left-nested brackets; a zero prefix kills its
    // whole subtree, which also prunes every word starting XX or YY
    std::function<void(int, uint32_t, const Vec&)> walk = [&](int len, uint32_t bits, const Vec& val) {
        auto it = index.find((uint32_t(len) << 16) | bits);
        if (it != index.end()) {
            const size_t k = it->second;
            for (int i = 0; i < dim; i++) {
                if (val[i] == 0) continue;
                const uint64_t t = c.divexact_p(val[i], shift[k]);
                acc[i] = c.add(acc[i], c.mul(c.mul(t, num_mod[k]), uinv[k]));
            }
        }
        if (len >= deg) return;
        for (uint32_t letter = 0; letter < 2; letter++) {
            Vec child = ebracket(val, *args[letter]);
            if (!all_zero(child)) walk(len + 1, (bits << 1) | letter, child);
        }
    };
    if (!all_zero(x)) walk(1, 0, x);
    if (!all_zero(y)) walk(1, 1, y);

    const uint64_t outmod = c.pow_p(target);
    Vec out(dim);
    for (int i = 0; i < dim; i++) out[i] = acc[i] % outmod;
    return out;
}

MatrixEngine make_matrix_engine(const LieAlgebra& L) {
    if (!L.realization) fail(ErrKind::BadInput, "matrix backend needs a matrix realization");
    MatrixEngine eng;
    eng.p = L.p;
    eng.n = L.realization->n;
    eng.dim = L.dim;
    eng.images = L.realization->images;

    // backend agreement rests on the images reproducing the bracket as
    // exact integer matrices, not merely mod p^N
    for (int i = 0; i < L.dim; i++)
        for (int j = i + 1; j < L.dim; j++) {
            BigMat comm = bigmat_mul(eng.images[i], eng.images[j]);
            const BigMat ba = bigmat_mul(eng.images[j], eng.images[i]);
            const auto& row = L.cij_raw[L.pair_index(i, j)];
            for (int r = 0; r < eng.n; r++)
                for (int s = 0; s < eng.n; s++) {
                    comm[r][s] -= ba[r][s];
                    for (int k = 0; k < L.dim; k++)
                        if (row[k] != 0) comm[r][s] -= row[k] * eng.images[k][r][s];
                    if (comm[r][s] != 0)
                        fail(ErrKind::InsufficientPrecision,
                             "realization reproduces the bracket only modulo p^N; the matrix "
                             "backend needs exact integer images (" +
                                 L.basis[i] + ", " + L.basis[j] + ")");
                }
        }

    eng.lattice.assign(eng.n * eng.n, std::vector<bigint>(eng.dim, 0));
    for (int i = 0; i < eng.dim; i++)
        for (int r = 0; r < eng.n; r++)
            for (int s = 0; s < eng.n; s++) eng.lattice[r * eng.n + s][i] = eng.images[i][r][s];
    if (rank_over_Q(eng.lattice, eng.dim) != eng.dim)
        fail(ErrKind::BadInput,
             "realization images are linearly dependent over the fraction field; the lattice "
             "readback needs full rank");

    eng.headroom = 0;
    for (const bigint& dv : smith_divisors(eng.lattice)) eng.headroom += valuation_bigint(dv, L.p);
    return eng;
}

Vec lattice_solve(const MatrixEngine& eng, const PadicCtx& ctx, const VecList& z) {
    const int m = eng.n * eng.n, d = eng.dim;
    VecList aug(m, Vec(d + 1, 0));
    for (int r = 0; r < eng.n; r++)
        for (int s = 0; s < eng.n; s++) {
            const int row = r * eng.n + s;
            for (int i = 0; i < d; i++) aug[row][i] = ctx.reduce(eng.lattice[row][i]);
            aug[row][d] = z[r][s];
        }

    // Gaussian elimination with total minimal-valuation pivoting; over the
    // chain ring Z/p^P the pivot valuations are the elementary divisors of
    // the lattice, so their sum stays within eng.headroom.
    std::vector<bool> row_used(m, false), col_used(d, false);
    std::vector<int> piv_row(d, -1), piv_val(d, 0), order;
    for (int step = 0; step < d; step++) {
        int br = -1, bc = -1, bv = ctx.N;
        for (int r = 0; r < m; r++) {
            if (row_used[r]) continue;
            for (int c = 0; c < d; c++) {
                if (col_used[c]) continue;
                const int v = ctx.val(aug[r][c]);
                if (v < bv) {
                    bv = v;
                    br = r;
                    bc = c;
                }
            }
        }
        if (br < 0 || bv >= ctx.N) fail(ErrKind::Internal, "lattice readback lost full rank");
        row_used[br] = true;
        col_used[bc] = true;
        piv_row[bc] = br;
        piv_val[bc] = bv;
        order.push_back(bc);
        const uint64_t uinv = ctx.inv(ctx.divexact_p(aug[br][bc], bv));
        for (int r = 0; r < m; r++) {
            if (row_used[r] || aug[r][bc] == 0) continue;
            const uint64_t f = ctx.mul(ctx.divexact_p(aug[r][bc], bv), uinv);
            for (int c = 0; c <= d; c++) aug[r][c] = ctx.sub(aug[r][c], ctx.mul(f, aug[br][c]));
        }
    }
    int vsum = 0;
    for (int c = 0; c < d; c++) vsum += piv_val[c];
    if (vsum > eng.headroom) fail(ErrKind::Internal, "pivot valuations exceed the lattice headroom");
    for (int r = 0; r < m; r++)
        if (!row_used[r] && aug[r][d] != 0)
            fail(ErrKind::Internal, "matrix logarithm left the realization lattice");

    // back-substitute in reverse pivot order; each division by p^(v_k) is
    // exact because the remaining inexactness sits above p^(P - headroom)
    Vec out(d, 0);
    for (int k = d - 1; k >= 0; k--) {
        const int c = order[k];
        const int r = piv_row[c];
        uint64_t t = aug[r][d];
        for (int l = k + 1; l < d; l++) {
            const int c2 = order[l];
            t = ctx.sub(t, ctx.mul(aug[r][c2], out[c2]));
        }
        const uint64_t unit = ctx.divexact_p(aug[r][c], piv_val[c]);
        out[c] = ctx.mul(ctx.divexact_p(t, piv_val[c]), ctx.inv(unit));
    }
    return out;
}

} // namespace detail

GroupCtx::GroupCtx(const LieAlgebra& L, Backend backend) : L_(L), backend_(backend) {
    if (!is_powerful(L_))
        fail(ErrKind::BadInput, "the uniform group law needs a powerful algebra: (L,L) must lie in p*L");
    if (backend_ == Backend::Series) {
        sev_ = detail::make_series_evaluator(L_, L_.N, 0);
        // the group axioms mod p^N use Jacobi rearrangements underneath the
        // series denominators, so Jacobi must hold at the elevated precision
        try {
            make_liealg(L_.p, L_.N + sev_->debit, L_.basis, raw_brackets(L_));
        } catch (const Error& e) {
            if (e.kind() == ErrKind::InconsistentInput)
                fail(ErrKind::InsufficientPrecision,
                     std::string("structure constants stop being a Lie algebra at the precision "
                                 "the series needs: ") +
                         e.what());
            throw;
        }
    } else {
        meng_ = detail::make_matrix_engine(L_);
        (void)PadicCtx(L_.p, L_.N + meng_->headroom); // fail fast if the readback cannot fit
    }
}

Vec GroupCtx::canon(const Vec& v) const {
    if ((int)v.size() != L_.dim)
        fail(ErrKind::BadInput, "coordinate length does not match the algebra dimension");
    Vec r = v;
    for (uint64_t& e : r)
        if (e >= L_.ctx.mod) e %= L_.ctx.mod;
    return r;
}

Vec GroupCtx::mul(const Vec& x0, const Vec& y0) const {
    const Vec x = canon(x0), y = canon(y0);
    if (backend_ == Backend::Series) return sev_->mul(x, y);
    const detail::MatrixEngine& eng = *meng_;
    const PadicCtx ctxP(L_.p, L_.N + eng.headroom);
    const VecList e = mat_exp_exact(L_.p, ctxP.N, lattice_lincomb(eng, x));
    const VecList f = mat_exp_exact(L_.p, ctxP.N, lattice_lincomb(eng, y));
    const VecList z = mat_log_exact(L_.p, ctxP.N, mat_mat(ctxP, e, f));
    Vec out = detail::lattice_solve(eng, ctxP, z);
    for (uint64_t& c : out) c %= L_.ctx.mod;
    return out;
}

Vec GroupCtx::inv(const Vec& x0) const {
    const Vec x = canon(x0);
    Vec n(L_.dim);
    for (int i = 0; i < L_.dim; i++) n[i] = L_.ctx.neg(x[i]);
    if (!all_zero(mul(x, n)))
        fail(ErrKind::Internal, "coordinate negation is not the group inverse at this precision");
    return n;
}

Vec GroupCtx::pow(const Vec& x0, const bigint& e0) const {
    const Vec x = canon(x0);
    if (e0 == 0) return identity();
    bigint e = e0;
    Vec base = x;
    if (e < 0) {
        base = inv(x);
        e = -e;
    }
    Vec r = base;
    for (int i = (int)boost::multiprecision::msb(e) - 1; i >= 0; i--) {
        r = mul(r, r);
        if (boost::multiprecision::bit_test(e, (unsigned)i)) r = mul(r, base);
    }
    if (e0 == L_.p && !all_zero(x)) {
        // uniformity: the p-th power gains exactly one valuation step
        const int want = std::min(L_.N, min_valuation(L_.ctx, x) + 1);
        for (int i = 0; i < L_.dim; i++)
            if (L_.ctx.val(r[i]) < want)
                fail(ErrKind::Internal, "p-th power did not gain a valuation step");
    }
    return r;
}

Vec GroupCtx::from_second_kind(const Vec& a0) const {
    const Vec a = canon(a0);
    Vec r = identity();
    for (int i = 0; i < L_.dim; i++) {
        if (a[i] == 0) continue;
        Vec axis(L_.dim, 0);
        axis[i] = 1;
        r = mul(r, pow(axis, bigint(a[i])));
    }
    return r;
}

Vec GroupCtx::to_second_kind(const Vec& x0) const {
    const Vec x = canon(x0);
    Vec a(L_.dim, 0);
    for (int v = 0; v < L_.N; v++) {
        const Vec g = mul(inv(from_second_kind(a)), x);
        if (all_zero(g)) break;
        // the remaining defect g sits v steps down the p-central series
        if (min_valuation(L_.ctx, g) < v)
            fail(ErrKind::Internal, "second-kind digit solver lost its valuation invariant");
        const uint64_t pv = L_.ctx.pow_p(v), pv1 = L_.ctx.pow_p(v + 1);
        for (int i = 0; i < L_.dim; i++) {
            const uint64_t digit = (g[i] % pv1) / pv;
            if (digit) a[i] = L_.ctx.add(a[i], digit * pv);
        }
    }
    if (from_second_kind(a) != x)
        fail(ErrKind::Internal, "second-kind exponents failed re-multiplication");
    return a;
}

Vec GroupCtx::additive_limit(const Vec& x0, const Vec& y0) const {
    const Vec x = canon(x0), y = canon(y0);
    Vec prev;
    for (int n = 1; n <= L_.N + 2; n++) {
        const int target = L_.N + n;
        Vec cur(L_.dim);
        if (backend_ == Backend::Series) {
            // x^(p^n) = p^n x exactly: every CH word on (x,x) vanishes, so
            // the one-parameter subgroup through x is scalar (grp_pow
            // cross-checks this identity at base precision)
            const auto ev = detail::make_series_evaluator(L_, target, n);
            const uint64_t pn = ev.ectx.pow_p(n);
            Vec xs(L_.dim), ys(L_.dim);
            for (int i = 0; i < L_.dim; i++) {
                xs[i] = x[i] * pn;
                ys[i] = y[i] * pn;
            }
            const Vec w = ev.mul(xs, ys);
            const PadicCtx tctx(L_.p, target);
            for (int i = 0; i < L_.dim; i++)
                cur[i] = tctx.divexact_p(w[i], n) % L_.ctx.mod;
        } else {
            const detail::MatrixEngine& eng = *meng_;
            const PadicCtx ctxP(L_.p, target + eng.headroom);
            const bigint pn = boost::multiprecision::pow(bigint(L_.p), (unsigned)n);
            const VecList g =
                mat_pow(ctxP, mat_exp_exact(L_.p, ctxP.N, lattice_lincomb(eng, x)), pn);
            const VecList h =
                mat_pow(ctxP, mat_exp_exact(L_.p, ctxP.N, lattice_lincomb(eng, y)), pn);
            const VecList z = mat_log_exact(L_.p, ctxP.N, mat_mat(ctxP, g, h));
            const Vec w = detail::lattice_solve(eng, ctxP, z);
            const PadicCtx tctx(L_.p, target);
            for (int i = 0; i < L_.dim; i++)
                cur[i] = tctx.divexact_p(w[i] % tctx.mod, n) % L_.ctx.mod;
        }
        if (n > 1 && cur == prev) return cur;
        prev = std::move(cur);
    }
    fail(ErrKind::ConvergenceFailure,
         "additive law did not stabilize mod p^N within N+2 doublings");
}

Vec GroupCtx::bracket_limit(const Vec& x0, const Vec& y0) const {
    const Vec x = canon(x0), y = canon(y0);
    Vec prev;
    for (int n = 1; n <= L_.N + 2; n++) {
        const int target = L_.N + 2 * n;
        Vec cur(L_.dim);
        if (backend_ == Backend::Series) {
            const auto ev = detail::make_series_evaluator(L_, target, n);
            const uint64_t pn = ev.ectx.pow_p(n);
            const uint64_t tmod = ev.ectx.pow_p(target);
            Vec u(L_.dim), v(L_.dim), ui(L_.dim), vi(L_.dim);
            for (int i = 0; i < L_.dim; i++) {
                u[i] = x[i] * pn;
                v[i] = y[i] * pn;
                ui[i] = u[i] == 0 ? 0 : tmod - u[i];
                vi[i] = v[i] == 0 ? 0 : tmod - v[i];
            }
            const Vec w = ev.mul(ev.mul(ui, vi), ev.mul(u, v));
            const PadicCtx tctx(L_.p, target);
            for (int i = 0; i < L_.dim; i++)
                cur[i] = tctx.divexact_p(w[i], 2 * n) % L_.ctx.mod;
        } else {
            const detail::MatrixEngine& eng = *meng_;
            const PadicCtx ctxP(L_.p, target + eng.headroom);
            const bigint pn = boost::multiprecision::pow(bigint(L_.p), (unsigned)n);
            const VecList g =
                mat_pow(ctxP, mat_exp_exact(L_.p, ctxP.N, lattice_lincomb(eng, x)), pn);
            const VecList h =
                mat_pow(ctxP, mat_exp_exact(L_.p, ctxP.N, lattice_lincomb(eng, y)), pn);
            const VecList comm = mat_mat(
                ctxP, mat_mat(ctxP, mat_inverse(ctxP, g), mat_inverse(ctxP, h)), mat_mat(ctxP, g, h));
            const VecList z = mat_log_exact(L_.p, ctxP.N, comm);
            const Vec w = detail::lattice_solve(eng, ctxP, z);
            const PadicCtx tctx(L_.p, target);
            for (int i = 0; i < L_.dim; i++)
                cur[i] = tctx.divexact_p(w[i] % tctx.mod, 2 * n) % L_.ctx.mod;
        }
        if (n > 1 && cur == prev) return cur;
        prev = std::move(cur);
    }
    fail(ErrKind::ConvergenceFailure,
         "bracket limit did not stabilize mod p^N within N+2 doublings");
}

std::vector<Vec> fixed_subgroup_generators(const LieAlgebra& L, const SigmaAction& s) {
    const AdaptedBasis ab = sigma_adapted_basis(L, s);
    return std::vector<Vec>(ab.rows.begin(), ab.rows.begin() + ab.fixed_count);
}

} // namespace proplie
