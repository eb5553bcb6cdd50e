#include "proplie/finitep.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <json.hpp>

#include "proplie/errors.hpp"

namespace proplie {

namespace {

bool all_zero(const Vec& x) {
    for (uint64_t c : x)
        if (c) return false;
    return true;
}

uint64_t upow(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; i++) r *= b;
    return r;
}

uint64_t inv_mod_p(uint64_t a, uint64_t p) {
    uint64_t r = 1, b = a % p;
    for (uint64_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

struct Lead {
    int v = 0;
    int i = 0;
    uint64_t digit = 0; // in [1, p)
};

// first coordinate of minimal valuation; nullopt for the identity
std::optional<Lead> leading(const FiniteQuotient& q, const Vec& x) {
    const PadicCtx& c = q.ctx();
    int bv = c.N, bi = -1;
    for (int i = 0; i < q.dim; i++) {
        int v = c.val(x[i]);
        if (v < bv) {
            bv = v;
            bi = i;
        }
    }
    if (bi < 0) return std::nullopt;
    return Lead{bv, bi, x[bi] / upow(q.p, bv) % q.p};
}

// left-divides by pivot powers until the leading slot has no pivot
Vec sift_through(const SubgroupHandle& h, Vec x) {
    const FiniteQuotient& q = h.quot;
    while (true) {
        auto lead = leading(q, x);
        if (!lead) return x;
        auto it = h.pivots.find({lead->v, lead->i});
        if (it == h.pivots.end()) return x;
        auto pl = leading(q, it->second);
        uint64_t steps = lead->digit * inv_mod_p(pl->digit, q.p) % q.p;
        x = q.mul(q.pow(q.inv(it->second), bigint(steps)), x);
    }
}

std::vector<Vec> axis_vectors(const FiniteQuotient& q) {
    std::vector<Vec> out;
    for (int i = 0; i < q.dim; i++) {
        Vec e(q.dim, 0);
        e[i] = 1;
        out.push_back(e);
    }
    return out;
}

// inserts x and re-closes the table under p-th powers, pairwise
// commutators, and commutators with the ambient set when normal
void sift_add(SubgroupHandle& h, const Vec& x0, bool normal, const std::vector<Vec>& ambient) {
    const FiniteQuotient& q = h.quot;
    std::deque<Vec> queue{q.reduce(x0)};
    while (!queue.empty()) {
        Vec y = sift_through(h, queue.front());
        queue.pop_front();
        if (all_zero(y)) continue;
        auto lead = leading(q, y);
        h.pivots[{lead->v, lead->i}] = y;
        queue.push_back(q.pow(y, bigint(q.p)));
        for (const auto& [slot, piv] : h.pivots) queue.push_back(q.commutator(y, piv));
        if (normal)
            for (const Vec& g : ambient) queue.push_back(q.commutator(g, y));
    }
}

SubgroupHandle make_handle(const FiniteQuotient& q, const std::vector<Vec>& gens, bool normal) {
    SubgroupHandle h;
    h.quot = q;
    h.gens = gens;
    std::vector<Vec> ambient = normal ? axis_vectors(q) : std::vector<Vec>{};
    for (const Vec& g : gens) sift_add(h, g, normal, ambient);
    return h;
}

// smallest submodule containing the generators and closed under brackets
// (with the whole algebra when normal); the subgroup coincides with it
// whenever class2_linear holds
HowellBasis module_closure(const FiniteQuotient& q, const std::vector<Vec>& gens, bool normal) {
    const LieAlgebra& L = q.law->algebra();
    const PadicCtx& c = q.ctx();
    VecList rows;
    for (const Vec& g : gens) rows.push_back(q.reduce(g));
    HowellBasis hb = howell_form(c, q.dim, rows);
    while (true) {
        VecList grown = hb.rows;
        for (const Vec& a : hb.rows)
            for (const Vec& b : hb.rows) grown.push_back(bracket(L, a, b));
        if (normal)
            for (const Vec& e : axis_vectors(q))
                for (const Vec& b : hb.rows) grown.push_back(bracket(L, e, b));
        HowellBasis next = howell_form(c, q.dim, grown);
        if (next.log_size() == hb.log_size()) return hb;
        hb = next;
    }
}

void cross_check_linear_model(const FiniteQuotient& q, const SubgroupHandle& h, bool normal) {
    HowellBasis hb = module_closure(q, h.gens, normal);
    if (hb.log_size() != h.rank())
        fail(ErrKind::Internal, "pivot closure disagrees with the linear model order");
    for (const Vec& row : hb.rows)
        if (!h.contains(row))
            fail(ErrKind::Internal, "linear model produced an element outside the pivot closure");
    for (const auto& [slot, piv] : h.pivots)
        if (!hb.contains(piv))
            fail(ErrKind::Internal, "pivot closure left the linear model span");
}

std::optional<FpmfWitness> action_witness(const FiniteQuotient& q, const SubgroupHandle& h,
                                          const SubgroupHandle& phi) {
    for (const Vec& g : axis_vectors(q))
        for (const auto& [slot, hv] : h.pivots)
            if (!phi.contains(q.commutator(g, hv))) return FpmfWitness{g, hv};
    return std::nullopt;
}

nlohmann::json order_json(uint64_t p, int exp) {
    bigint v = 1;
    for (int i = 0; i < exp; i++) v *= p;
    if (v < bigint(1) << 53) return nlohmann::json((uint64_t)v);
    return nlohmann::json(v.str());
}

} // namespace

bigint FiniteQuotient::order() const {
    bigint v = 1;
    for (int i = 0; i < level * dim; i++) v *= p;
    return v;
}

Vec FiniteQuotient::reduce(const Vec& x) const {
    if ((int)x.size() != dim) fail(ErrKind::BadInput, "coordinate tuple has the wrong length");
    Vec r(dim);
    for (int i = 0; i < dim; i++) r[i] = x[i] % ctx().mod;
    return r;
}

Vec FiniteQuotient::commutator(const Vec& x, const Vec& y) const {
    return mul(mul(x, y), mul(inv(x), inv(y)));
}

Vec FiniteQuotient::apply(const BigMat& m, const Vec& x) const {
    const PadicCtx& c = ctx();
    Vec y(dim, 0);
    for (int i = 0; i < dim; i++) {
        bigint acc = 0;
        for (int j = 0; j < dim; j++) acc += m[i][j] * x[j];
        y[i] = c.reduce(acc);
    }
    return y;
}

Vec FiniteQuotient::apply(const VecList& m, const Vec& x) const {
    const PadicCtx& c = ctx();
    Vec y(dim, 0);
    for (int i = 0; i < dim; i++) {
        bigint acc = 0;
        for (int j = 0; j < dim; j++) acc += bigint(m[i][j]) * x[j];
        y[i] = c.reduce(acc);
    }
    return y;
}

FiniteQuotient quotient(const LieAlgebra& L, int k) {
    if (k < 1) fail(ErrKind::BadInput, "quotient level must be at least 1");
    if (k > L.N)
        fail(ErrKind::InsufficientPrecision, "quotient level exceeds the algebra precision");
    std::vector<BracketEntry> br;
    for (int i = 0; i < L.dim; i++)
        for (int j = i + 1; j < L.dim; j++) br.push_back({i, j, L.cij_raw[L.pair_index(i, j)]});
    LieAlgebra Lk = make_liealg(L.p, k, L.basis, br);
    FiniteQuotient q;
    q.p = L.p;
    q.level = k;
    q.dim = L.dim;
    q.class2_linear = k == 1 || (k == 2 && L.p >= 5);
    q.law = std::make_shared<GroupCtx>(Lk);
    return q;
}

bigint SubgroupHandle::order() const {
    bigint v = 1;
    for (int i = 0; i < rank(); i++) v *= quot.p;
    return v;
}

bool SubgroupHandle::contains(const Vec& x) const {
    return all_zero(sift_through(*this, quot.reduce(x)));
}

bool SubgroupHandle::same_group_as(const SubgroupHandle& other) const {
    if (rank() != other.rank()) return false;
    for (const auto& [slot, piv] : other.pivots)
        if (!contains(piv)) return false;
    return true;
}

std::vector<Vec> SubgroupHandle::elements(uint64_t budget) const {
    if (order() > bigint(budget))
        fail(ErrKind::BudgetExceeded, "subgroup enumeration passes the element budget");
    std::vector<Vec> out{quot.identity()};
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        std::vector<Vec> next;
        next.reserve(out.size() * quot.p);
        Vec pk = quot.identity();
        for (uint64_t e = 0; e < quot.p; e++) {
            for (const Vec& s : out) next.push_back(quot.mul(pk, s));
            pk = quot.mul(pk, it->second);
        }
        out = std::move(next);
    }
    return out;
}

SubgroupHandle subgroup_closure(const FiniteQuotient& q, const std::vector<Vec>& gens) {
    SubgroupHandle h = make_handle(q, gens, false);
    if (q.class2_linear) cross_check_linear_model(q, h, false);
    return h;
}

SubgroupHandle normal_closure(const FiniteQuotient& q, const std::vector<Vec>& gens) {
    SubgroupHandle h = make_handle(q, gens, true);
    if (q.class2_linear) cross_check_linear_model(q, h, true);
    return h;
}

SubgroupHandle frattini(const SubgroupHandle& h) {
    const FiniteQuotient& q = h.quot;
    std::vector<Vec> inner;
    for (const auto& [slot, piv] : h.pivots) inner.push_back(piv);
    SubgroupHandle f;
    f.quot = q;
    for (const Vec& piv : inner) f.gens.push_back(q.pow(piv, bigint(q.p)));
    for (size_t a = 0; a < inner.size(); a++)
        for (size_t b = a + 1; b < inner.size(); b++)
            f.gens.push_back(q.commutator(inner[a], inner[b]));
    for (const Vec& g : f.gens) sift_add(f, g, true, inner);
    return f;
}

int dp_subgroup(const SubgroupHandle& h) { return h.rank() - frattini(h).rank(); }

std::vector<Vec> closure_elements_bfs(const FiniteQuotient& q, const std::vector<Vec>& gens,
                                      bool normal, uint64_t budget) {
    std::vector<Vec> seeds;
    for (const Vec& g : gens) seeds.push_back(q.reduce(g));
    if (normal) {
        std::set<Vec> orbit(seeds.begin(), seeds.end());
        std::deque<Vec> work(seeds.begin(), seeds.end());
        std::vector<Vec> conjugators = axis_vectors(q);
        while (!work.empty()) {
            Vec cur = work.front();
            work.pop_front();
            for (const Vec& g : conjugators)
                for (const Vec& c : {q.mul(q.mul(g, cur), q.inv(g)),
                                     q.mul(q.mul(q.inv(g), cur), g)}) {
                    if (orbit.insert(c).second) {
                        if (orbit.size() > budget)
                            fail(ErrKind::BudgetExceeded, "conjugation orbit passes the budget");
                        work.push_back(c);
                    }
                }
        }
        seeds.assign(orbit.begin(), orbit.end());
    }
    std::vector<Vec> steps = seeds;
    for (const Vec& g : seeds) steps.push_back(q.inv(g));
    std::set<Vec> seen{q.identity()};
    std::deque<Vec> work{q.identity()};
    while (!work.empty()) {
        Vec cur = work.front();
        work.pop_front();
        for (const Vec& s : steps) {
            Vec nxt = q.mul(cur, s);
            if (seen.insert(nxt).second) {
                if (seen.size() > budget)
                    fail(ErrKind::BudgetExceeded, "subgroup closure passes the element budget");
                work.push_back(nxt);
            }
        }
    }
    return std::vector<Vec>(seen.begin(), seen.end());
}

QuotientGroupData quotient_group_data(const FiniteQuotient& q, const SubgroupHandle& h) {
    QuotientGroupData out;
    out.order_exp = q.level * q.dim - h.rank();

    std::vector<Vec> axes = axis_vectors(q);
    std::vector<Vec> comms;
    for (int i = 0; i < q.dim; i++)
        for (int j = i + 1; j < q.dim; j++) comms.push_back(q.commutator(axes[i], axes[j]));
    SubgroupHandle derived = normal_closure(q, comms);
    out.abelian = true;
    for (const auto& [slot, piv] : derived.pivots)
        if (!h.contains(piv)) {
            out.abelian = false;
            break;
        }

    // lower central series of G lifted to the quotient group
    SubgroupHandle cur;
    cur.quot = q;
    for (const Vec& e : axes) sift_add(cur, e, false, {});
    if (cur.rank() != q.level * q.dim) fail(ErrKind::Internal, "full quotient has deficient rank");
    int cls = 0;
    while (cur.rank() != h.rank()) {
        cls++;
        if (cls > q.level * q.dim) fail(ErrKind::Internal, "central series failed to reach the subgroup");
        SubgroupHandle next;
        next.quot = q;
        next.pivots = h.pivots;
        for (const auto& [slot, piv] : cur.pivots)
            for (const Vec& g : axes) sift_add(next, q.commutator(g, piv), true, axes);
        cur = next;
    }
    out.nilpotency_class = cls;
    if (out.abelian != (cls <= 1))
        fail(ErrKind::Internal, "commutator subgroup and central series disagree");

    if (out.abelian && out.order_exp > 0) {
        // s_j = log_p |G^{p^j}|; invariant exponents follow from the drops
        std::vector<int> s;
        for (int j = 0;; j++) {
            SubgroupHandle kj;
            kj.quot = q;
            kj.pivots = h.pivots;
            uint64_t shift = upow(q.p, j);
            for (int i = 0; i < q.dim; i++) {
                Vec e(q.dim, 0);
                e[i] = shift % q.ctx().mod;
                sift_add(kj, e, false, {});
            }
            s.push_back(kj.rank() - h.rank());
            if (s.back() == 0) break;
            if (j > q.level) fail(ErrKind::Internal, "power chain failed to terminate");
        }
        if (s.front() != out.order_exp) fail(ErrKind::Internal, "power chain misses the order");
        int total = 0;
        for (int i = 1;; i++) {
            int a = 0;
            for (size_t j = 0; j + 1 < s.size(); j++)
                if (s[j] - s[j + 1] >= i) a++;
            if (a == 0) break;
            out.invariant_exps.push_back(a);
            total += a;
        }
        std::sort(out.invariant_exps.rbegin(), out.invariant_exps.rend());
        if (total != out.order_exp) fail(ErrKind::Internal, "invariant factors miss the order");
    }
    return out;
}

GammaSigmaData gamma_sigma_data(const LieAlgebra& L, const SigmaAction& sigma, int k) {
    FiniteQuotient q = quotient(L, k);
    std::vector<Vec> rows = fixed_subgroup_generators(L, sigma);
    std::vector<Vec> gens;
    for (const Vec& row : rows) gens.push_back(q.reduce(row));
    GammaSigmaData out;
    out.level = k;
    out.r = (int)gens.size();
    out.h_circ = subgroup_closure(q, gens);
    out.h = normal_closure(q, gens);
    out.equals_circ = out.h_circ.rank() == out.h.rank();
    out.dp = dp_subgroup(out.h);
    out.g = quotient_group_data(q, out.h);
    return out;
}

std::string FpmfReport::to_json() const {
    nlohmann::json j;
    switch (verdict) {
        case FpmfVerdict::Fpmf: j["verdict"] = "FPMF"; break;
        case FpmfVerdict::NotFpmf: j["verdict"] = "not-FPMF"; break;
        case FpmfVerdict::Undecided: j["verdict"] = "undecided-at-level"; break;
    }
    j["level"] = level;
    j["G"]["order"] = order_json(p, at_level.g.order_exp);
    if (at_level.g.abelian) {
        auto inv = nlohmann::json::array();
        for (int e : at_level.g.invariant_exps) inv.push_back(order_json(p, e));
        j["G"]["invariants"] = inv;
    } else {
        j["G"]["invariants"] = nullptr;
    }
    j["G"]["class"] = at_level.g.nilpotency_class;
    j["dp_gamma_sigma"] = at_level.dp;
    j["equals_circ"] = at_level.equals_circ;
    if (witness) {
        j["witness"]["g"] = witness->g;
        j["witness"]["h"] = witness->h;
    } else {
        j["witness"] = nullptr;
    }
    j["stabilized"] = stabilized;
    return j.dump();
}

FpmfReport fpmf_check(const LieAlgebra& L, const SigmaAction& sigma, int k_max) {
    if (k_max < 2) fail(ErrKind::BadInput, "the scan needs k_max >= 2");
    FpmfReport rep;
    rep.p = L.p;
    bool prev_trivial = false;
    int prev_dp = -1;
    bool prev_equals = false;
    for (int k = 2; k <= k_max; k++) {
        GammaSigmaData data = gamma_sigma_data(L, sigma, k);
        FiniteQuotient q = data.h.quot;
        SubgroupHandle phi = frattini(data.h);
        auto w = action_witness(q, data.h, phi);
        if (w) {
            rep.verdict = FpmfVerdict::Fpmf;
            rep.level = k;
            rep.at_level = std::move(data);
            rep.witness = w;
            return rep;
        }
        bool consistent = data.dp == data.r && data.equals_circ;
        if (prev_trivial && prev_dp == data.dp && prev_equals == data.equals_circ && consistent) {
            rep.verdict = FpmfVerdict::NotFpmf;
            rep.level = k;
            rep.at_level = std::move(data);
            rep.stabilized = true;
            return rep;
        }
        prev_trivial = true;
        prev_dp = data.dp;
        prev_equals = data.equals_circ;
        if (k == k_max) {
            rep.verdict = FpmfVerdict::Undecided;
            rep.level = k;
            rep.at_level = std::move(data);
        }
    }
    return rep;
}

QuotientRankCheck quotient_rank_identity(const LieAlgebra& L, const SigmaAction& sigma, int k) {
    FiniteQuotient q = quotient(L, k);
    std::vector<Vec> rows = fixed_subgroup_generators(L, sigma);
    std::vector<Vec> gens;
    for (const Vec& row : rows) gens.push_back(q.reduce(row));
    SubgroupHandle h = normal_closure(q, gens);
    SubgroupHandle phi = frattini(h);
    std::vector<Vec> axes = axis_vectors(q);

    // W/Phi(H) is the augmentation-ideal submodule of the Frattini section
    SubgroupHandle w;
    w.quot = q;
    w.pivots = phi.pivots;
    for (const auto& [slot, piv] : h.pivots)
        for (const Vec& g : axes) sift_add(w, q.commutator(g, piv), true, axes);

    QuotientRankCheck out;
    out.r = (int)gens.size();
    out.coinvariant_dim = h.rank() - w.rank();

    SubgroupHandle span;
    span.quot = q;
    span.pivots = w.pivots;
    for (const Vec& g : gens) sift_add(span, g, false, {});
    out.fixed_classes_generate = out.coinvariant_dim == out.r && span.rank() == h.rank();

    out.sigma_trivial_on_coinvariants = true;
    for (const auto& [slot, piv] : h.pivots) {
        Vec moved = q.mul(q.apply(sigma.matrix, piv), q.inv(piv));
        if (!w.contains(moved)) {
            out.sigma_trivial_on_coinvariants = false;
            break;
        }
    }
    out.dp_at_least_r = h.rank() - phi.rank() >= out.r;
    return out;
}

bool sigma_fpf_on_quotient(const SubgroupHandle& h, const SigmaAction& sigma, uint64_t budget) {
    const FiniteQuotient& q = h.quot;
    if (q.order() > bigint(budget))
        fail(ErrKind::BudgetExceeded, "full quotient scan passes the element budget");
    Vec x(q.dim, 0);
    const uint64_t mod = q.ctx().mod;
    while (true) {
        if (!h.contains(x)) {
            Vec moved = q.mul(q.apply(sigma.matrix, x), q.inv(x));
            if (h.contains(moved)) return false;
        }
        int i = 0;
        while (i < q.dim) {
            if (++x[i] < mod) break;
            x[i] = 0;
            i++;
        }
        if (i == q.dim) break;
    }
    return true;
}

} // namespace proplie
