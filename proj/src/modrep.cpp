#include "proplie/modrep.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "json_util.hpp"
#include "proplie/liealg.hpp"

namespace proplie {

long long CharVector::dimension() const {
    long long total = 0;
    for (long long m : mults) total += m;
    return total;
}

uint64_t character_root(uint64_t p, int ell) { return primitive_root_of_order(p, 1, ell); }

CharVector make_char_vector(uint64_t p, int ell, std::vector<long long> mults) {
    PadicCtx probe(p, 1);
    if (ell < 2 || !is_prime_u64((uint64_t)ell))
        fail(ErrKind::BadInput, "character order must be prime, got " + std::to_string(ell));
    character_root(p, ell);
    if ((int)mults.size() != ell)
        fail(ErrKind::BadInput, "expected " + std::to_string(ell) + " multiplicities, got " +
                                    std::to_string(mults.size()));
    for (long long m : mults)
        if (m < 0) fail(ErrKind::BadInput, "multiplicities must be non-negative");
    CharVector v;
    v.p = p;
    v.ell = ell;
    v.mults = std::move(mults);
    return v;
}

CharVector char_regular(uint64_t p, int ell) {
    return make_char_vector(p, ell, std::vector<long long>(ell, 1));
}

CharVector char_add(const CharVector& a, const CharVector& b) {
    if (a.p != b.p || a.ell != b.ell)
        fail(ErrKind::InconsistentInput, "character vectors live over different group algebras");
    std::vector<long long> m(a.mults);
    for (int j = 0; j < a.ell; j++) m[j] += b.mults[j];
    return make_char_vector(a.p, a.ell, std::move(m));
}

long long r_min_gens(const CharVector& v) {
    return *std::max_element(v.mults.begin(), v.mults.end());
}

CharVector char_dual(const CharVector& v) {
    std::vector<long long> m(v.ell);
    for (int j = 0; j < v.ell; j++) m[(v.ell - j) % v.ell] = v.mults[j];
    return make_char_vector(v.p, v.ell, std::move(m));
}

CharVector dirichlet_module(uint64_t p, int ell,
                            const std::vector<DecompGroup>& decomposition_subgroups,
                            long long t_size, bool mu_p_in_K, int chi_p_index) {
    if (t_size < 0) fail(ErrKind::BadInput, "|T| must be non-negative");
    if (mu_p_in_K && (chi_p_index < 0 || chi_p_index >= ell))
        fail(ErrKind::BadInput, "cyclotomic character index out of range");
    std::vector<long long> m(ell, 0);
    for (DecompGroup d : decomposition_subgroups) {
        if (d == DecompGroup::Trivial)
            for (int j = 0; j < ell; j++) m[j] += 1;
        else
            m[0] += 1;
    }
    for (int j = 0; j < ell; j++) m[j] += t_size;
    if (mu_p_in_K) m[chi_p_index] += 1;
    m[0] -= 1;
    if (m[0] < 0)
        fail(ErrKind::InconsistentInput,
             "no trivial character left after removing the unit-rank correction");
    return make_char_vector(p, ell, std::move(m));
}

std::string char_vector_to_json(const CharVector& v) {
    nlohmann::json j;
    j["p"] = (long long)v.p;
    j["ell"] = v.ell;
    j["mults"] = v.mults;
    return j.dump(2) + "\n";
}

CharVector char_vector_from_json(const std::string& text) {
    using namespace jsonu;
    nlohmann::json j = parse_object(text, "character vector");
    const long long p = parse_ll(need(j, "p", "character vector"), "p");
    const long long ell = parse_ll(need(j, "ell", "character vector"), "ell");
    if (p < 3) fail(ErrKind::BadInput, "p must be an odd prime");
    if (ell < 2 || ell > 1 << 20) fail(ErrKind::BadInput, "ell out of range");
    const nlohmann::json& jm = need(j, "mults", "character vector");
    if (!jm.is_array()) fail(ErrKind::BadInput, "mults must be an array");
    std::vector<long long> mults;
    for (const auto& e : jm) mults.push_back(parse_ll(e, "multiplicity"));
    return make_char_vector((uint64_t)p, (int)ell, std::move(mults));
}

namespace {

VecList mat_add(const PadicCtx& c, const VecList& a, const VecList& b) {
    VecList out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        out[i].resize(a[i].size());
        for (size_t j = 0; j < a[i].size(); j++) out[i][j] = c.add(a[i][j], b[i][j]);
    }
    return out;
}

// sum_{e<k} m^e by binary expansion of k
VecList geometric_sum(const PadicCtx& c, const VecList& m, const bigint& k) {
    const int n = (int)m.size();
    VecList s(n, Vec(n, 0));
    VecList pw = mat_identity(c, n);
    std::vector<int> bits;
    for (bigint t = k; t > 0; t /= 2) bits.push_back((int)(t % 2));
    for (int i = (int)bits.size() - 1; i >= 0; i--) {
        s = mat_add(c, s, mat_mat(c, pw, s));
        pw = mat_mat(c, pw, pw);
        if (bits[i]) {
            s = mat_add(c, s, pw);
            pw = mat_mat(c, pw, m);
        }
    }
    return s;
}

std::vector<VecList> intake_action(const PadicCtx& c, int dimension, size_t ngens,
                                   const std::vector<VecList>& action) {
    if (action.size() != ngens)
        fail(ErrKind::BadInput, "expected one action matrix per group generator");
    std::vector<VecList> out;
    for (const VecList& m : action) {
        if ((int)m.size() != dimension)
            fail(ErrKind::BadInput, "action matrix does not match the module dimension");
        VecList r(dimension, Vec(dimension, 0));
        for (int i = 0; i < dimension; i++) {
            if ((int)m[i].size() != dimension)
                fail(ErrKind::BadInput, "action matrix must be square");
            for (int j = 0; j < dimension; j++) r[i][j] = m[i][j] % c.mod;
        }
        out.push_back(std::move(r));
    }
    return out;
}

// Walk the Cayley graph of the quotient from the identity, assigning each
// element the matrix of its walk word.  With check_edges every edge is
// compared against the recorded image; conflict-freeness on all edges is
// exactly the statement that the generator images extend to a homomorphism.
VecList quotient_walk(const FiniteQuotient& q, const PadicCtx& mc, int dimension,
                      const std::vector<VecList>& action, bool check_edges, uint64_t budget) {
    if (q.order() > bigint(budget))
        fail(ErrKind::BudgetExceeded, "group order exceeds the element budget");
    std::map<Vec, size_t> index;
    std::vector<Vec> elems;
    std::vector<VecList> mats;
    elems.push_back(q.identity());
    mats.push_back(mat_identity(mc, dimension));
    index.emplace(elems[0], 0);
    VecList norm(dimension, Vec(dimension, 0));
    for (size_t head = 0; head < elems.size(); head++) {
        norm = mat_add(mc, norm, mats[head]);
        for (int i = 0; i < q.dim; i++) {
            Vec step(q.dim, 0);
            step[i] = 1;
            Vec v2 = q.mul(elems[head], step);
            auto it = index.find(v2);
            if (it == index.end()) {
                VecList m2 = mat_mat(mc, mats[head], action[i]);
                index.emplace(v2, elems.size());
                elems.push_back(std::move(v2));
                mats.push_back(std::move(m2));
            } else if (check_edges) {
                if (mat_mat(mc, mats[head], action[i]) != mats[it->second])
                    fail(ErrKind::InconsistentInput,
                         "action matrices violate the relations of the quotient group");
            }
        }
    }
    if (bigint(elems.size()) != q.order())
        fail(ErrKind::Internal, "axis generators failed to span the quotient");
    return norm;
}

} // namespace

bigint GModule::group_order() const {
    if (quotient) return quotient->order();
    bigint v = 1;
    for (int a : invariants)
        for (int i = 0; i < a; i++) v *= p;
    return v;
}

GModule make_gmodule(uint64_t p, const std::vector<int>& invariants,
                     const std::vector<VecList>& action, int dimension) {
    GModule m;
    m.p = p;
    m.ctx = PadicCtx(p, 1);
    if (dimension < 0) fail(ErrKind::BadInput, "module dimension must be non-negative");
    m.dimension = dimension;
    for (int a : invariants)
        if (a < 1) fail(ErrKind::BadInput, "abelian invariants must be positive exponents");
    m.invariants = invariants;
    m.action = intake_action(m.ctx, dimension, invariants.size(), action);
    if (dimension > 0) {
        for (size_t i = 0; i < m.action.size(); i++) {
            bigint ord = 1;
            for (int e = 0; e < invariants[i]; e++) ord *= p;
            if (!mat_is_identity(mat_pow(m.ctx, m.action[i], ord)))
                fail(ErrKind::InconsistentInput,
                     "action matrix violates the order of its generator");
            for (size_t k = 0; k < i; k++)
                if (mat_mat(m.ctx, m.action[i], m.action[k]) !=
                    mat_mat(m.ctx, m.action[k], m.action[i]))
                    fail(ErrKind::InconsistentInput, "action matrices of an abelian group must commute");
        }
    }
    return m;
}

GModule make_gmodule(const FiniteQuotient& q, const std::vector<VecList>& action, int dimension,
                     uint64_t budget) {
    GModule m;
    m.p = q.p;
    m.ctx = PadicCtx(q.p, 1);
    if (dimension < 0) fail(ErrKind::BadInput, "module dimension must be non-negative");
    m.dimension = dimension;
    m.quotient = q;
    m.action = intake_action(m.ctx, dimension, (size_t)q.dim, action);
    if (dimension > 0) quotient_walk(q, m.ctx, dimension, m.action, true, budget);
    return m;
}

int norm_rank_t(const GModule& m, uint64_t budget) {
    if (m.dimension == 0) return 0;
    VecList norm;
    if (m.quotient) {
        norm = quotient_walk(*m.quotient, m.ctx, m.dimension, m.action, false, budget);
    } else {
        norm = mat_identity(m.ctx, m.dimension);
        for (size_t i = 0; i < m.action.size(); i++) {
            bigint ord = 1;
            for (int e = 0; e < m.invariants[i]; e++) ord *= m.p;
            norm = mat_mat(m.ctx, norm, geometric_sum(m.ctx, m.action[i], ord));
        }
    }
    return howell_form(m.ctx, m.dimension, norm).log_size();
}

bigint t_lower_bound(const bigint& dp_m, const bigint& order_g, const bigint& r_mg) {
    if (dp_m < 0 || r_mg < 0) fail(ErrKind::BadInput, "ranks must be non-negative");
    if (order_g < 1) fail(ErrKind::BadInput, "group order must be positive");
    bigint t = dp_m - (order_g - 1) * r_mg;
    return t < 0 ? bigint(0) : t;
}

std::string gmodule_to_json(const GModule& m) {
    if (m.quotient)
        fail(ErrKind::BadInput, "only modules over groups given by abelian invariants serialize");
    nlohmann::json j;
    j["p"] = (long long)m.p;
    j["group_invariants"] = m.invariants;
    nlohmann::json mats = nlohmann::json::array();
    for (const VecList& a : m.action) {
        nlohmann::json rows = nlohmann::json::array();
        for (const Vec& r : a) {
            nlohmann::json row = nlohmann::json::array();
            for (uint64_t e : r) row.push_back(e);
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    j["action"] = std::move(mats);
    return j.dump(2) + "\n";
}

GModule gmodule_from_json(const std::string& text) {
    using namespace jsonu;
    nlohmann::json j = parse_object(text, "module");
    const long long p = parse_ll(need(j, "p", "module"), "p");
    if (p < 3) fail(ErrKind::BadInput, "p must be an odd prime");
    PadicCtx c((uint64_t)p, 1);
    const nlohmann::json& ji = need(j, "group_invariants", "module");
    if (!ji.is_array()) fail(ErrKind::BadInput, "group_invariants must be an array");
    std::vector<int> invariants;
    for (const auto& e : ji) invariants.push_back((int)parse_ll(e, "group invariant"));
    const nlohmann::json& ja = need(j, "action", "module");
    if (!ja.is_array()) fail(ErrKind::BadInput, "action must be an array of matrices");
    std::vector<VecList> action;
    int dimension = 0;
    for (const auto& jm : ja) {
        auto rows = parse_bigmat(jm, "action matrix");
        VecList a;
        for (const auto& r : rows) {
            Vec v;
            for (const bigint& e : r) v.push_back(c.reduce(e));
            a.push_back(std::move(v));
        }
        dimension = (int)a.size();
        action.push_back(std::move(a));
    }
    return make_gmodule((uint64_t)p, invariants, action, dimension);
}

} // namespace proplie
