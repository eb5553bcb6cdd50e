#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "proplie/bounds.hpp"
#include "proplie/errors.hpp"

using namespace proplie;

namespace {

ErrKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrKind::Internal;
}

bigint pw(const bigint& b, unsigned e) { return boost::multiprecision::pow(b, e); }

bigrat frac(long long n, long long d) { return bigrat(bigint(n), bigint(d)); }

BoundsInput quadratic_shape(const bigint& t_size) {
    BoundsInput in;
    in.order_g = 2;
    in.d_inf = 1;
    in.r1 = 1;
    in.t_size = t_size;
    return in;
}

}  // namespace

TEST_CASE("nilpotency bound from a prime-order fixed-point-free automorphism") {
    CHECK(n_ell(2).abelian);
    CHECK_FALSE(n_ell(3).abelian);
    CHECK(n_ell(3).value == 2);
    CHECK(n_ell(5).value == 357913941);
    CHECK(n_ell(5).value == (pw(4, 15) - 1) / 3);
    CHECK(n_ell(7).value == bigint("2111342888765775923538742898227062886996548727603"));

    // strictly increasing past the special small orders
    bigint prev = n_ell(5).value;
    for (int ell : {7, 11, 13, 17, 19}) {
        bigint cur = n_ell(ell).value;
        CHECK(cur > prev);
        prev = cur;
    }

    for (int bad : {-3, 0, 1, 4, 6, 9, 15})
        CHECK(kind_of([&] { n_ell(bad); }) == ErrKind::BadInput);
    CHECK(kind_of([] { n_ell(29); }) == ErrKind::BudgetExceeded);
    CHECK(kind_of([] { n_ell(31); }) == ErrKind::BudgetExceeded);
}

TEST_CASE("solvability length budget") {
    CHECK(m_ell(2) == 1);
    CHECK(m_ell(3) == 2);
    CHECK(m_ell(5) == 30);
    CHECK(m_ell(7) == 162);
    CHECK(m_ell(11) == 3397);
    CHECK(m_ell(13) == 14678);

    // m is the least integer with 2^(m-1) (l-1)(l-2) >= (l-1)^(2^(l-1))
    for (int ell : {5, 7, 11, 13}) {
        bigint m = m_ell(ell);
        unsigned c = static_cast<unsigned>(m - 1);
        bigint a = pw(ell - 1, 1u << (ell - 1));
        bigint b = bigint(ell - 1) * (ell - 2);
        CHECK(pw(2, c) * b >= a);
        CHECK(pw(2, c - 1) * b < a);
    }

    CHECK(m_ell(5) < m_ell(7));
    CHECK(m_ell(7) < m_ell(11));
    CHECK(kind_of([] { m_ell(4); }) == ErrKind::BadInput);
    CHECK(kind_of([] { m_ell(29); }) == ErrKind::BudgetExceeded);
}

TEST_CASE("derived length bounds") {
    auto b32 = shalev_dl(3, 2, false);
    CHECK(b32.rank_bound == 11);
    CHECK(b32.order_bound == 5);
    CHECK_FALSE(b32.uniform_bound.has_value());
    CHECK(b32.minimum == 5);

    auto b32u = shalev_dl(3, 2, true);
    CHECK(b32u.rank_bound == 11);
    CHECK(b32u.uniform_bound.has_value());
    CHECK(*b32u.uniform_bound == 1);
    CHECK(b32u.minimum == 1);

    auto b33 = shalev_dl(3, 3, false);
    CHECK(b33.rank_bound == 11);
    CHECK(b33.order_bound == 11);
    CHECK(b33.minimum == 11);

    auto b45 = shalev_dl(4, 5, false);
    CHECK(b45.rank_bound == 26);
    CHECK(b45.order_bound == 62);
    CHECK(b45.minimum == 26);

    auto b22 = shalev_dl(2, 2, false);
    CHECK(b22.rank_bound == 3);
    CHECK(b22.order_bound == 3);
    CHECK(b22.minimum == 3);

    // d = 1 degenerates; raw values are reported without clamping
    auto b15 = shalev_dl(1, 5, true);
    CHECK(b15.rank_bound == -1);
    CHECK(b15.order_bound == 15);
    CHECK(*b15.uniform_bound == 15);
    CHECK(b15.minimum == -1);

    bigint prev = shalev_dl(2, 5, false).rank_bound;
    for (int d = 3; d <= 12; d++) {
        bigint cur = shalev_dl(d, 5, false).rank_bound;
        CHECK(cur > prev);
        prev = cur;
    }

    CHECK(kind_of([] { shalev_dl(0, 3, false); }) == ErrKind::BadInput);
    CHECK(kind_of([] { shalev_dl(3, 4, false); }) == ErrKind::BadInput);
}

TEST_CASE("generator and relation infinitude criterion") {
    CHECK(golod_shafarevich_infinite(5, 0, 1, 0));
    CHECK_FALSE(golod_shafarevich_infinite(5, 1, 1, 0));
    CHECK(golod_shafarevich_infinite(6, 1, 1, 1));   // 16 >= 16
    CHECK_FALSE(golod_shafarevich_infinite(6, 1, 2, 1));
    CHECK_FALSE(golod_shafarevich_infinite(0, 0, 0, 0));
    CHECK_FALSE(golod_shafarevich_infinite(1, 0, 0, 0));
    CHECK_FALSE(golod_shafarevich_infinite(2, 0, 0, 0));
    CHECK(golod_shafarevich_infinite(4, 0, 0, 0));   // 4 >= 4

    // once true for some d it stays true as d grows
    for (bigint t = 0; t <= 3; t++) {
        bool seen = false;
        for (int d = 0; d <= 12; d++) {
            bool now = golod_shafarevich_infinite(d, t, 1, 1);
            if (seen) CHECK(now);
            seen = seen || now;
        }
        CHECK(seen);
    }

    CHECK(kind_of([] { golod_shafarevich_infinite(-1, 0, 0, 0); }) == ErrKind::BadInput);
    CHECK(kind_of([] { golod_shafarevich_infinite(3, -1, 0, 0); }) == ErrKind::BadInput);
}

TEST_CASE("unit rank lower bound") {
    // real quadratic shape: everything cancels and t_lower = |T|
    for (long long t : {0, 1, 5}) {
        auto b = unit_rank_bound(quadratic_shape(t));
        CHECK(b.t_lower == bigrat(t));
        CHECK(b.a == 0);
    }

    // trivial acting group: only the archimedean block and the -1 survive
    BoundsInput triv;
    triv.order_g = 1;
    triv.d_inf = 2;
    triv.r_inf = 1;
    triv.r1 = 7;
    triv.dp_cl = 5;
    auto bt = unit_rank_bound(triv);
    CHECK(bt.t_lower == frac(3, 2));
    CHECK(bt.a == frac(-3, 2));

    // worked example with mu_p, exact halves absent
    BoundsInput w;
    w.order_g = 3;
    w.r1 = 2;
    w.r2 = 1;
    w.d_inf = 1;
    w.s_size = 2;
    w.s_ram = 1;
    w.dp_cl = 1;
    w.dp_h2 = 2;
    w.t_size = 4;
    w.mu_p_in_l = true;
    auto bm = unit_rank_bound(w);
    CHECK(bm.t_lower == bigrat(-25));
    CHECK(bm.a == bigrat(29));
    w.mu_p_in_l = false;
    auto bn = unit_rank_bound(w);
    CHECK(bn.t_lower == bigrat(-16));
    CHECK(bn.a == bigrat(20));

    // half-integer contributions stay exact
    BoundsInput h;
    h.order_g = 2;
    h.r_inf = 3;
    h.r1 = 1;
    auto bh = unit_rank_bound(h);
    // base = 3/2 - 1, paren = 1 - 3/2, t_lower = 1/2 + 1/2
    CHECK(bh.t_lower == bigrat(1));

    std::mt19937_64 rng(77);
    auto draw = [&](long long m) { return bigint(rng() % (m + 1)); };
    for (int it = 0; it < 60; it++) {
        BoundsInput in;
        in.order_g = 1 + draw(5);
        in.r1 = draw(4);
        in.r2 = draw(4);
        in.d_inf = draw(3);
        in.r_inf = draw(3);
        in.s_size = draw(4);
        in.s_ram = draw(3);
        in.dp_cl = draw(3);
        in.dp_h2 = draw(3);
        in.mu_p_in_l = (it % 2) == 0;

        // a does not depend on |T|, and t_lower is |T| - a
        in.t_size = 0;
        auto b0 = unit_rank_bound(in);
        CHECK(b0.a == -b0.t_lower);
        in.t_size = 17;
        auto b17 = unit_rank_bound(in);
        CHECK(b17.a == b0.a);
        CHECK(b17.t_lower == b0.t_lower + 17);

        // the two formulas differ by (g-1)(1 + (g-1)|S_ram| + dp_h2) - 1
        in.mu_p_in_l = false;
        auto off = unit_rank_bound(in);
        in.mu_p_in_l = true;
        auto on = unit_rank_bound(in);
        bigrat g1 = bigrat(in.order_g - 1);
        CHECK(on.a - off.a == g1 * (1 + g1 * bigrat(in.s_ram) + bigrat(in.dp_h2)) - 1);
    }

    BoundsInput bad = quadratic_shape(0);
    bad.r_inf = -1;
    CHECK(kind_of([&] { unit_rank_bound(bad); }) == ErrKind::BadInput);
    bad = quadratic_shape(0);
    bad.order_g = 0;
    CHECK(kind_of([&] { unit_rank_bound(bad); }) == ErrKind::BadInput);
}

TEST_CASE("required auxiliary set size") {
    auto r = required_T(bigrat(10), 2, 4, 1);
    CHECK(r.value == 50);
    CHECK_FALSE(r.clamped);

    auto neg = required_T(bigrat(-3), 1, 2, 0);
    CHECK(neg.value == 0);
    CHECK(neg.clamped);

    CHECK(required_T(frac(1, 2), 0, 1, 0).value == 1);
    CHECK(required_T(frac(-5, 2), 0, 1, 0).clamped);
    CHECK(required_T(frac(-5, 2), 0, 1, 0).value == 0);
    auto zero = required_T(bigrat(0), 0, 3, 2);
    CHECK(zero.value == 0);
    CHECK_FALSE(zero.clamped);

    // ceil(-1/2) = 0: non-positive but not negative, so no clamp
    auto edge = required_T(frac(-1, 2), 0, 1, 0);
    CHECK(edge.value == 0);
    CHECK_FALSE(edge.clamped);

    bigint prev = required_T(bigrat(1), 0, 3, 2).value;
    for (long long s = 1; s <= 6; s++) {
        bigint cur = required_T(bigrat(1), s, 3, 2).value;
        CHECK(cur > prev);
        prev = cur;
    }

    CHECK(kind_of([] { required_T(bigrat(1), -1, 2, 0); }) == ErrKind::BadInput);
    CHECK(kind_of([] { required_T(bigrat(1), 0, 0, 0); }) == ErrKind::BadInput);
}

TEST_CASE("cyclotomic tower level calculator") {
    CHECK(cyclo_n0(1, 2, 162, 2) == 5);
    CHECK(cyclo_n0(0, 2, 162, 2) == 5);
    CHECK(cyclo_n0(1, 2, 162, 3) == 6);
    CHECK(cyclo_n0_at(3, 1, 2, 162, 2) == 5);
    CHECK(cyclo_n0_at(5, 1, 2, 162, 2) == 4);
    CHECK(cyclo_n0(0, 5, 1, 0) == 0);

    // with dp_c = 2 and |C| = 162 the level is the least n with 3^n >= 81 (s + 2)
    for (long long s = 0; s <= 24; s++) {
        int n = cyclo_n0(s, 2, 162, 2);
        bigint target = 81 * bigint(s + 2);
        CHECK(pw(3, n) >= target);
        if (n > 0) CHECK(pw(3, n - 1) < target);
    }

    // brute comparison over a spread of small inputs
    std::mt19937_64 rng(19);
    for (int it = 0; it < 120; it++) {
        uint64_t p = (it % 3 == 0) ? 5 : 3;
        bigint s = rng() % 9;
        bigint r1 = 1 + rng() % 4;
        bigint oc = 1 + rng() % 300;
        bigint dp = rng() % 4;
        int n = cyclo_n0_at(p, s, r1, oc, dp);
        bigint need = s * oc + (oc - 1) * dp + 1;
        CHECK(r1 * pw(p, n) >= need);
        if (n > 0) CHECK(r1 * pw(p, n - 1) < need);
    }

    CHECK(kind_of([] { cyclo_n0(1, 0, 162, 2); }) == ErrKind::BadInput);
    CHECK(kind_of([] { cyclo_n0(1, 2, 0, 2); }) == ErrKind::BadInput);
    CHECK(kind_of([] { cyclo_n0(-1, 2, 162, 2); }) == ErrKind::BadInput);
    CHECK(kind_of([] { cyclo_n0(1, 2, 162, -1); }) == ErrKind::BadInput);
    CHECK(kind_of([] { cyclo_n0_at(4, 1, 2, 162, 2); }) == ErrKind::BadInput);
    CHECK(kind_of([] { cyclo_n0_at(2, 1, 2, 162, 2); }) == ErrKind::BadInput);
}
