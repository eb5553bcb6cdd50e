#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "proplie/errors.hpp"
#include "proplie/finitep.hpp"
#include "proplie/liealg.hpp"
#include "proplie/modrep.hpp"

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

LieAlgebra alg(uint64_t p, int N, int d, const std::vector<BracketEntry>& br) {
    std::vector<std::string> names;
    for (int i = 0; i < d; i++) names.push_back("b" + std::to_string(i));
    return make_liealg(p, N, names, br);
}

VecList from_rows(const std::vector<std::vector<long long>>& rows) {
    VecList m;
    for (const auto& r : rows) {
        Vec v;
        for (long long e : r) v.push_back((uint64_t)e);
        m.push_back(std::move(v));
    }
    return m;
}

// unipotent Jordan block with the nilpotent part on the superdiagonal
VecList jordan(int k) {
    VecList m(k, Vec(k, 0));
    for (int i = 0; i < k; i++) {
        m[i][i] = 1;
        if (i + 1 < k) m[i][i + 1] = 1;
    }
    return m;
}

VecList block_diag(const std::vector<VecList>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += (int)b.size();
    VecList m(n, Vec(n, 0));
    int off = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.size(); i++)
            for (size_t j = 0; j < b.size(); j++) m[off + i][off + j] = b[i][j];
        off += (int)b.size();
    }
    return m;
}

VecList kron(const PadicCtx& c, const VecList& a, const VecList& b) {
    const int n = (int)a.size(), m = (int)b.size();
    VecList out(n * m, Vec(n * m, 0));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            for (int k = 0; k < m; k++)
                for (int l = 0; l < m; l++)
                    out[i * m + k][j * m + l] = c.mul(a[i][j], b[k][l]);
    return out;
}

int rank_p(const PadicCtx& c, const VecList& m) {
    return howell_form(c, m.empty() ? 0 : (int)m[0].size(), m).log_size();
}

VecList mat_sum(const PadicCtx& c, const VecList& a, const VecList& b) {
    VecList out = a;
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < a[i].size(); j++) out[i][j] = c.add(a[i][j], b[i][j]);
    return out;
}

VecList random_invertible(std::mt19937_64& rng, const PadicCtx& c, int n) {
    for (;;) {
        VecList u(n, Vec(n, 0));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) u[i][j] = rng() % c.mod;
        if (rank_p(c, u) == n) return u;
    }
}

VecList mat_inverse(const PadicCtx& c, const VecList& u) {
    const int n = (int)u.size();
    VecList inv(n, Vec(n, 0));
    for (int j = 0; j < n; j++) {
        Vec e(n, 0);
        e[j] = 1;
        Vec x = solve_unit_system(c, u, e);
        for (int i = 0; i < n; i++) inv[i][j] = x[i];
    }
    return inv;
}

VecList conjugate(const PadicCtx& c, const VecList& u, const VecList& uinv, const VecList& m) {
    return mat_mat(c, u, mat_mat(c, m, uinv));
}

// rows of (m - lam*I) mod p, for kernel computations
VecList shifted_rows(const PadicCtx& c, const VecList& m, uint64_t lam) {
    VecList out = m;
    for (size_t i = 0; i < m.size(); i++) out[i][i] = c.sub(out[i][i], lam);
    return out;
}

} // namespace

TEST_CASE("character roots are the smallest representatives") {
    CHECK(character_root(3, 2) == 2);
    CHECK(character_root(7, 2) == 6);
    CHECK(character_root(7, 3) == 2);
    CHECK(character_root(13, 3) == 3);
    CHECK(character_root(13, 2) == 12);
    CHECK(character_root(31, 5) == 2);
    CHECK(kind_of([] { character_root(7, 5); }) == ErrKind::UnsupportedOrder);
}

TEST_CASE("generator counts of character vectors") {
    CHECK(r_min_gens(char_regular(3, 2)) == 1);
    CHECK(r_min_gens(char_regular(7, 3)) == 1);
    CHECK(r_min_gens(make_char_vector(3, 2, {2, 0})) == 2);
    CHECK(r_min_gens(make_char_vector(7, 3, {3, 1, 1})) == 3);
    CHECK(r_min_gens(make_char_vector(7, 3, {0, 0, 0})) == 0);
    CHECK(make_char_vector(7, 3, {3, 1, 1}).dimension() == 5);

    CHECK(kind_of([] { make_char_vector(3, 4, {0, 0, 0, 0}); }) == ErrKind::BadInput);
    CHECK(kind_of([] { make_char_vector(3, 2, {1, -1}); }) == ErrKind::BadInput);
    CHECK(kind_of([] { make_char_vector(3, 2, {1, 1, 1}); }) == ErrKind::BadInput);
    CHECK(kind_of([] { make_char_vector(4, 2, {1, 1}); }) == ErrKind::BadInput);
}

TEST_CASE("duality negates character indices and keeps r") {
    CharVector v = make_char_vector(3, 2, {2, 5});
    CHECK(char_dual(v).mults == std::vector<long long>{2, 5});

    CharVector w = make_char_vector(7, 3, {2, 1, 0});
    CHECK(char_dual(w).mults == std::vector<long long>{2, 0, 1});

    std::mt19937_64 rng(414243);
    for (int it = 0; it < 100; it++) {
        const bool quad = it % 2 == 0;
        const uint64_t p = quad ? 3 : 7;
        const int ell = quad ? 2 : 3;
        std::vector<long long> m(ell);
        for (auto& e : m) e = (long long)(rng() % 6);
        CharVector a = make_char_vector(p, ell, m);
        CHECK(r_min_gens(a) == r_min_gens(char_dual(a)));
        CHECK(char_dual(char_dual(a)).mults == a.mults);
        CHECK(char_dual(a).dimension() == a.dimension());
    }
}

TEST_CASE("generator count is subadditive under direct sums") {
    std::mt19937_64 rng(515253);
    for (int it = 0; it < 100; it++) {
        const int ell = it % 2 == 0 ? 2 : 3;
        const uint64_t p = ell == 2 ? 3 : 13;
        std::vector<long long> ma(ell), mc(ell);
        for (auto& e : ma) e = (long long)(rng() % 5);
        for (auto& e : mc) e = (long long)(rng() % 5);
        CharVector a = make_char_vector(p, ell, ma);
        CharVector c = make_char_vector(p, ell, mc);
        CharVector b = char_add(a, c);
        CHECK(r_min_gens(b) <= r_min_gens(a) + r_min_gens(c));
        CHECK(r_min_gens(b) >= r_min_gens(a));
        CHECK(b.dimension() == a.dimension() + c.dimension());
    }
    CHECK(kind_of([] {
              char_add(make_char_vector(3, 2, {1, 0}), make_char_vector(7, 2, {1, 0}));
          }) == ErrKind::InconsistentInput);
}

TEST_CASE("unit module synthesis") {
    // one split real place of a quadratic field: rank-1 module on which the
    // involution acts by the nontrivial character
    CharVector v = dirichlet_module(3, 2, {DecompGroup::Trivial}, 0, false, 0);
    CHECK(v.mults == std::vector<long long>{0, 1});

    // two extra totally split finite places contribute two regular summands
    CharVector w = dirichlet_module(3, 2, {DecompGroup::Trivial}, 2, false, 0);
    CHECK(w.mults == std::vector<long long>{2, 3});

    // fully ramified archimedean places only leave trivial characters
    CharVector u = dirichlet_module(7, 3,
                                    {DecompGroup::Full, DecompGroup::Full, DecompGroup::Full}, 0,
                                    false, 0);
    CHECK(u.mults == std::vector<long long>{2, 0, 0});

    // p-th roots of unity add the cyclotomic character
    CharVector z = dirichlet_module(3, 2, {DecompGroup::Trivial}, 0, true, 1);
    CHECK(z.mults == std::vector<long long>{0, 2});

    CHECK(kind_of([] { dirichlet_module(3, 2, {}, 0, false, 0); }) ==
          ErrKind::InconsistentInput);
    CHECK(kind_of([] { dirichlet_module(3, 2, {DecompGroup::Trivial}, -1, false, 0); }) ==
          ErrKind::BadInput);
    CHECK(kind_of([] { dirichlet_module(3, 2, {DecompGroup::Trivial}, 0, true, 2); }) ==
          ErrKind::BadInput);
}

TEST_CASE("unit module dimension identity") {
    std::mt19937_64 rng(616263);
    for (int it = 0; it < 100; it++) {
        const bool quad = it % 2 == 0;
        const uint64_t p = quad ? 3 : 7;
        const int ell = quad ? 2 : 3;
        // ramified archimedean places exist only for involutions
        const long long d_inf = (long long)(rng() % 4);
        const long long r_inf = quad ? (long long)(rng() % 4) : 0;
        if (d_inf + r_inf == 0) continue;
        const long long t = (long long)(rng() % 4);
        const bool mu = rng() % 2 == 0;
        const int chi = (int)(rng() % ell);
        std::vector<DecompGroup> decs;
        for (long long i = 0; i < d_inf; i++) decs.push_back(DecompGroup::Trivial);
        for (long long i = 0; i < r_inf; i++) decs.push_back(DecompGroup::Full);
        CharVector v = dirichlet_module(p, ell, decs, t, mu, chi);
        const long long expected =
            ell * d_inf + (ell * r_inf) / 2 + ell * t - 1 + (mu ? 1 : 0);
        CHECK(v.dimension() == expected);
    }
}

TEST_CASE("character vector serialization") {
    CharVector v = make_char_vector(7, 3, {4, 0, 2});
    CharVector back = char_vector_from_json(char_vector_to_json(v));
    CHECK(back.p == v.p);
    CHECK(back.ell == v.ell);
    CHECK(back.mults == v.mults);

    CharVector g = char_vector_from_json("{\"p\":3,\"ell\":2,\"mults\":[0,1]}");
    CHECK(g.mults == std::vector<long long>{0, 1});

    CHECK(kind_of([] { char_vector_from_json("not json"); }) == ErrKind::BadInput);
    CHECK(kind_of([] { char_vector_from_json("{\"p\":3,\"ell\":2}"); }) == ErrKind::BadInput);
    CHECK(kind_of([] { char_vector_from_json("{\"p\":3,\"ell\":2,\"mults\":[1]}"); }) ==
          ErrKind::BadInput);
}

TEST_CASE("group norm detects free rank over cyclic p-groups") {
    // regular module of Z/3 is free of rank one
    GModule reg = make_gmodule(3, {1}, {from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})}, 3);
    CHECK(norm_rank_t(reg) == 1);

    // trivial one-dimensional module has no free part
    GModule triv = make_gmodule(3, {1}, {from_rows({{1}})}, 1);
    CHECK(norm_rank_t(triv) == 0);

    // two regular summands plus the augmentation ideal
    GModule mix = make_gmodule(
        3, {1}, {block_diag({jordan(3), jordan(3), from_rows({{2, 2}, {1, 0}})})}, 8);
    CHECK(norm_rank_t(mix) == 2);

    // over the trivial group every module is free
    GModule flat = make_gmodule(3, {}, {}, 5);
    CHECK(norm_rank_t(flat) == 5);
    GModule empty = make_gmodule(3, {1}, {from_rows({})}, 0);
    CHECK(norm_rank_t(empty) == 0);

    // invalid actions: wrong generator order, or non-commuting images of
    // commuting generators
    CHECK(kind_of([] { make_gmodule(3, {1}, {from_rows({{2, 0}, {0, 1}})}, 2); }) ==
          ErrKind::InconsistentInput);
    CHECK(kind_of([] {
              make_gmodule(3, {1, 1},
                           {from_rows({{1, 1}, {0, 1}}), from_rows({{1, 0}, {1, 1}})}, 2);
          }) == ErrKind::InconsistentInput);
    CHECK(kind_of([] { make_gmodule(3, {0}, {from_rows({{1}})}, 1); }) == ErrKind::BadInput);
    CHECK(kind_of([] { make_gmodule(3, {1}, {from_rows({{1, 0}})}, 1); }) == ErrKind::BadInput);
}

TEST_CASE("exhaustive unipotent classification at p=3") {
    // modules over F_3[Z/3] are unipotent matrices, classified by their
    // Jordan type with blocks of size at most 3; the free summands are
    // exactly the size-3 blocks, counted independently by rank (M-1)^2
    const PadicCtx c3(3, 1);
    std::mt19937_64 rng(717273);
    for (int c3n = 0; 3 * c3n <= 6; c3n++)
        for (int c2n = 0; 3 * c3n + 2 * c2n <= 6; c2n++)
            for (int c1n = 0; 3 * c3n + 2 * c2n + c1n <= 6; c1n++) {
                const int n = 3 * c3n + 2 * c2n + c1n;
                std::vector<VecList> blocks;
                for (int i = 0; i < c1n; i++) blocks.push_back(jordan(1));
                for (int i = 0; i < c2n; i++) blocks.push_back(jordan(2));
                for (int i = 0; i < c3n; i++) blocks.push_back(jordan(3));
                VecList m = block_diag(blocks);
                if (n > 0 && rng() % 2 == 0) {
                    VecList u = random_invertible(rng, c3, n);
                    m = conjugate(c3, u, mat_inverse(c3, u), m);
                }
                GModule mod = make_gmodule(3, {1}, {m}, n);
                const int t = norm_rank_t(mod);
                CHECK(t == c3n);
                if (n > 0) {
                    VecList nil = shifted_rows(c3, m, 1);
                    CHECK(rank_p(c3, mat_mat(c3, nil, nil)) == c3n);
                }
            }
}

TEST_CASE("free rank additivity under one regular summand") {
    std::mt19937_64 rng(818283);

    // cyclic group of order 3
    for (int it = 0; it < 20; it++) {
        std::vector<VecList> blocks;
        int dim = 0;
        while (dim < 6) {
            int k = 1 + (int)(rng() % 3);
            if (dim + k > 6) break;
            blocks.push_back(jordan(k));
            dim += k;
        }
        if (blocks.empty()) blocks.push_back(jordan(1)), dim = 1;
        VecList m = block_diag(blocks);
        GModule base = make_gmodule(3, {1}, {m}, dim);
        GModule plus = make_gmodule(3, {1}, {block_diag({m, jordan(3)})}, dim + 3);
        CHECK(norm_rank_t(plus) == norm_rank_t(base) + 1);
    }

    // cyclic group of order 9: the regular module is a single unipotent
    // block of size 9
    {
        GModule a = make_gmodule(3, {2}, {block_diag({jordan(9), jordan(1)})}, 10);
        CHECK(norm_rank_t(a) == 1);
        GModule b = make_gmodule(3, {2}, {block_diag({jordan(9), jordan(9)})}, 18);
        CHECK(norm_rank_t(b) == 2);
        GModule small = make_gmodule(3, {2}, {jordan(4)}, 4);
        CHECK(norm_rank_t(small) == 0);
    }

    // elementary abelian rank two
    {
        const PadicCtx c3(3, 1);
        VecList g1 = kron(c3, jordan(3), mat_identity(c3, 3));
        VecList g2 = kron(c3, mat_identity(c3, 3), jordan(3));
        GModule reg = make_gmodule(3, {1, 1}, {g1, g2}, 9);
        CHECK(norm_rank_t(reg) == 1);
        GModule two = make_gmodule(
            3, {1, 1}, {block_diag({g1, g1}), block_diag({g2, g2})}, 18);
        CHECK(norm_rank_t(two) == 2);
        GModule trivplus = make_gmodule(
            3, {1, 1},
            {block_diag({mat_identity(c3, 2), g1}), block_diag({mat_identity(c3, 2), g2})}, 11);
        CHECK(norm_rank_t(trivplus) == 1);
    }
}

TEST_CASE("modules over finite uniform quotients") {
    LieAlgebra L = alg(3, 3, 2, {});
    const PadicCtx c3(3, 1);

    // level-1 quotient is elementary abelian of rank 2; its regular module
    // must agree with the abelian-invariants route
    FiniteQuotient q1 = quotient(L, 1);
    VecList g1 = kron(c3, jordan(3), mat_identity(c3, 3));
    VecList g2 = kron(c3, mat_identity(c3, 3), jordan(3));
    GModule viaq = make_gmodule(q1, {g1, g2}, 9);
    GModule viainv = make_gmodule(3, {1, 1}, {g1, g2}, 9);
    CHECK(norm_rank_t(viaq) == 1);
    CHECK(norm_rank_t(viaq) == norm_rank_t(viainv));
    CHECK(viaq.group_order() == 9);

    // pulling the regular module of one axis back along a projection kills
    // the free part
    GModule pull = make_gmodule(q1, {jordan(3), mat_identity(c3, 3)}, 3);
    CHECK(norm_rank_t(pull) == 0);

    // level-2 quotient (Z/9)^2: regular module of order 81
    FiniteQuotient q2 = quotient(L, 2);
    VecList h1 = kron(c3, jordan(9), mat_identity(c3, 9));
    VecList h2 = kron(c3, mat_identity(c3, 9), jordan(9));
    GModule reg2 = make_gmodule(q2, {h1, h2}, 81);
    CHECK(norm_rank_t(reg2) == 1);
    CHECK(norm_rank_t(make_gmodule(3, {2, 2}, {h1, h2}, 81)) == 1);
    GModule pull2 = make_gmodule(q2, {jordan(9), mat_identity(c3, 9)}, 9);
    CHECK(norm_rank_t(pull2) == 0);

    // generator order and commutation violations surface as edge conflicts
    CHECK(kind_of([&] { make_gmodule(q1, {from_rows({{2, 0}, {0, 1}}), mat_identity(c3, 2)}, 2); }) ==
          ErrKind::InconsistentInput);
    CHECK(kind_of([&] {
              make_gmodule(q1, {from_rows({{1, 1}, {0, 1}}), from_rows({{1, 0}, {1, 1}})}, 2);
          }) == ErrKind::InconsistentInput);

    // element budgets
    CHECK(kind_of([&] { make_gmodule(q2, {h1, h2}, 81, 80); }) == ErrKind::BudgetExceeded);
    GModule ok = make_gmodule(q2, {h1, h2}, 81);
    CHECK(kind_of([&] { norm_rank_t(ok, 80); }) == ErrKind::BudgetExceeded);
}

TEST_CASE("module serialization") {
    GModule m = make_gmodule(3, {1}, {block_diag({jordan(3), jordan(1)})}, 4);
    GModule back = gmodule_from_json(gmodule_to_json(m));
    CHECK(back.p == m.p);
    CHECK(back.invariants == m.invariants);
    CHECK(back.dimension == m.dimension);
    CHECK(back.action == m.action);
    CHECK(norm_rank_t(back) == norm_rank_t(m));

    // negative entries reduce mod p on intake
    GModule neg = gmodule_from_json(
        "{\"p\":3,\"group_invariants\":[1],\"action\":[[[-1,-1],[1,0]]]}");
    CHECK(neg.action[0] == from_rows({{2, 2}, {1, 0}}));
    CHECK(norm_rank_t(neg) == 0);

    LieAlgebra L = alg(3, 2, 2, {});
    const PadicCtx c3(3, 1);
    GModule viaq = make_gmodule(quotient(L, 1), {jordan(3), mat_identity(c3, 3)}, 3);
    CHECK(kind_of([&] { gmodule_to_json(viaq); }) == ErrKind::BadInput);
    CHECK(kind_of([] { gmodule_from_json("[]"); }) == ErrKind::BadInput);
    CHECK(kind_of([] {
              gmodule_from_json("{\"p\":3,\"group_invariants\":[1],\"action\":[[[1,0],[0]]]}");
          }) == ErrKind::BadInput);
}

TEST_CASE("free rank lower bound arithmetic") {
    CHECK(t_lower_bound(10, 3, 2) == 6);
    CHECK(t_lower_bound(5, 6, 1) == 0);
    CHECK(t_lower_bound(5, 7, 1) == 0);
    CHECK(t_lower_bound(0, 1, 0) == 0);
    CHECK(t_lower_bound(7, 1, 5) == 7);
    for (int d = 0; d < 5; d++)
        CHECK(t_lower_bound(d + 1, 3, 1) >= t_lower_bound(d, 3, 1));
    CHECK(kind_of([] { t_lower_bound(-1, 3, 1); }) == ErrKind::BadInput);
    CHECK(kind_of([] { t_lower_bound(1, 0, 1); }) == ErrKind::BadInput);
}

TEST_CASE("lower bound against exact free rank over a mixed-order group") {
    // Modules over F_3[S] for the symmetric group S on three letters, with
    // generators g (order 3) and s (order 2), s g s = g^2.  The eight
    // indecomposables are the two projective covers (dimension 3), their
    // radicals and cosocle quotients (dimension 2), and the two simple
    // characters.  The free rank equals min(#P+, #P-), and each projective
    // multiplicity is recovered from matrices as the rank of the plain or
    // sign-twisted group sum, whose image is the corresponding socle.
    const PadicCtx c3(3, 1);
    struct Indec {
        VecList g, s;
        int plus, minus; // projective multiplicities contributed
    };
    const std::vector<Indec> table = {
        {from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}),
         from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), 1, 0},
        {from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}),
         from_rows({{2, 0, 0}, {0, 0, 2}, {0, 2, 0}}), 0, 1},
        {from_rows({{1}}), from_rows({{1}}), 0, 0},
        {from_rows({{1}}), from_rows({{2}}), 0, 0},
        {from_rows({{2, 2}, {1, 0}}), from_rows({{0, 1}, {1, 0}}), 0, 0},
        {from_rows({{2, 2}, {1, 0}}), from_rows({{0, 2}, {2, 0}}), 0, 0},
        {from_rows({{0, 2}, {1, 2}}), from_rows({{1, 2}, {0, 2}}), 0, 0},
        {from_rows({{0, 2}, {1, 2}}), from_rows({{2, 1}, {0, 1}}), 0, 0},
    };
    for (const Indec& ind : table) {
        CHECK(mat_is_identity(mat_pow(c3, ind.g, 3)));
        CHECK(mat_is_identity(mat_pow(c3, ind.s, 2)));
        CHECK(mat_mat(c3, ind.s, mat_mat(c3, ind.g, ind.s)) == mat_pow(c3, ind.g, 2));
    }

    std::mt19937_64 rng(919293);
    int tight = 0;
    for (int it = 0; it < 200; it++) {
        std::vector<VecList> gb, sb;
        int dim = 0, plus = 0, minus = 0;
        if (it % 4 == 0) {
            // both projectives in equal numbers: the bound is attained
            const int a = 1 + (int)(rng() % 2);
            for (int i = 0; i < a; i++) {
                gb.push_back(table[0].g), sb.push_back(table[0].s);
                gb.push_back(table[1].g), sb.push_back(table[1].s);
            }
            dim = 6 * a, plus = a, minus = a;
        } else {
            while (dim < 12) {
                const Indec& ind = table[rng() % table.size()];
                if (dim + (int)ind.g.size() > 12) break;
                gb.push_back(ind.g), sb.push_back(ind.s);
                dim += (int)ind.g.size();
                plus += ind.plus, minus += ind.minus;
                if (rng() % 4 == 0) break;
            }
            if (gb.empty()) continue;
        }
        VecList g = block_diag(gb), s = block_diag(sb);
        VecList u = random_invertible(rng, c3, dim);
        VecList uinv = mat_inverse(c3, u);
        g = conjugate(c3, u, uinv, g);
        s = conjugate(c3, u, uinv, s);

        const int exact_t = std::min(plus, minus);

        // matrix route to the same quantity
        VecList norm_plus(dim, Vec(dim, 0)), norm_minus(dim, Vec(dim, 0));
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 2; j++) {
                VecList w = mat_mat(c3, mat_pow(c3, g, i), mat_pow(c3, s, j));
                norm_plus = mat_sum(c3, norm_plus, w);
                if (j == 1)
                    for (auto& row : w)
                        for (auto& e : row) e = c3.neg(e);
                norm_minus = mat_sum(c3, norm_minus, w);
            }
        CHECK(std::min(rank_p(c3, norm_plus), rank_p(c3, norm_minus)) == exact_t);

        // r(M^G) from the eigenspaces of s on the g-fixed subspace
        VecList fixed_rows = shifted_rows(c3, g, 1);
        VecList plus_rows = fixed_rows, minus_rows = fixed_rows;
        for (const Vec& r : shifted_rows(c3, s, 1)) plus_rows.push_back(r);
        for (const Vec& r : shifted_rows(c3, s, c3.mod - 1)) minus_rows.push_back(r);
        const int r_mg = std::max(kernel_mod_pk(c3, plus_rows, dim).log_size(),
                                  kernel_mod_pk(c3, minus_rows, dim).log_size());

        const bigint bound = t_lower_bound(dim, 6, r_mg);
        CHECK(bigint(exact_t) >= bound);
        if (it % 4 == 0) {
            CHECK(bound == exact_t);
            tight++;
        }
    }
    CHECK(tight == 50);
}
