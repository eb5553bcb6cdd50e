#include "proplie/liealg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "json_util.hpp"

namespace proplie {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((__uint128_t)a * b % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t e, uint64_t m) {
    uint64_t acc = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return acc;
}

uint64_t powmod_big(uint64_t base, bigint e, uint64_t m) {
    uint64_t acc = 1 % m;
    base %= m;
    while (e > 0) {
        if ((e & 1) != 0) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return acc;
}

Vec unit_vec(int d, int i) {
    Vec v(d, 0);
    v[i] = 1;
    return v;
}

Vec scale_vec(const PadicCtx& c, uint64_t s, const Vec& v) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); i++) out[i] = c.mul(s, v[i]);
    return out;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](uint64_t x) { return x == 0; });
}

// rank of a matrix over F_p (rows given as residues against any p^N context)
int fp_rank(uint64_t p, const VecList& rows, int ncols) {
    std::vector<Vec> ech;
    std::vector<int> piv;
    for (const Vec& row : rows) {
        Vec w(ncols);
        for (int i = 0; i < ncols; i++) w[i] = row[i] % p;
        for (size_t r = 0; r < ech.size(); r++) {
            uint64_t f = w[piv[r]];
            if (f == 0) continue;
            uint64_t neg = p - f;
            for (int i = 0; i < ncols; i++) w[i] = (w[i] + mulmod_u64(neg, ech[r][i], p)) % p;
        }
        int pc = -1;
        for (int i = 0; i < ncols; i++)
            if (w[i]) {
                pc = i;
                break;
            }
        if (pc < 0) continue;
        uint64_t inv = powmod_u64(w[pc], p - 2, p);
        for (int i = 0; i < ncols; i++) w[i] = mulmod_u64(w[i], inv, p);
        ech.push_back(w);
        piv.push_back(pc);
    }
    return (int)ech.size();
}

VecList reduce_mat(const PadicCtx& c, const BigMat& m, int rows, int cols, const std::string& what) {
    if ((int)m.size() != rows) fail(ErrKind::BadInput, what + ": expected " + std::to_string(rows) + " rows");
    VecList out(rows, Vec(cols, 0));
    for (int i = 0; i < rows; i++) {
        if ((int)m[i].size() != cols)
            fail(ErrKind::BadInput, what + ": row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < cols; j++) out[i][j] = c.reduce(m[i][j]);
    }
    return out;
}

} // namespace

int LieAlgebra::pair_index(int i, int j) const {
    // lex position of (i, j) with i < j among all such pairs
    return i * dim - i * (i + 1) / 2 + (j - i - 1);
}

Vec LieAlgebra::bracket_basis(int i, int j) const {
    if (i == j) return Vec(dim, 0);
    if (i < j) return cij[pair_index(i, j)];
    Vec out = cij[pair_index(j, i)];
    for (auto& e : out) e = ctx.neg(e);
    return out;
}

Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y) {
    if ((int)x.size() != L.dim || (int)y.size() != L.dim)
        fail(ErrKind::BadInput, "bracket: coordinate length does not match the algebra dimension");
    const PadicCtx& c = L.ctx;
    Vec out(L.dim, 0);
    for (int i = 0; i < L.dim; i++)
        for (int j = i + 1; j < L.dim; j++) {
            uint64_t t = c.sub(c.mul(x[i], y[j]), c.mul(x[j], y[i]));
            if (t == 0) continue;
            const Vec& row = L.cij[L.pair_index(i, j)];
            for (int k = 0; k < L.dim; k++)
                if (row[k]) out[k] = c.add(out[k], c.mul(t, row[k]));
        }
    return out;
}

LieAlgebra make_liealg(uint64_t p, int N, std::vector<std::string> basis,
                       const std::vector<BracketEntry>& brackets,
                       std::optional<MatrixRealization> realization,
                       std::vector<AutomorphismSpec> automorphisms) {
    LieAlgebra L;
    L.ctx = PadicCtx(p, N);
    L.p = p;
    L.N = N;
    L.dim = (int)basis.size();
    if (L.dim < 1) fail(ErrKind::BadInput, "algebra dimension must be at least 1");
    L.basis = std::move(basis);

    const int npairs = L.dim * (L.dim - 1) / 2;
    L.cij_raw.assign(npairs, std::vector<bigint>(L.dim, 0));
    L.cij.assign(npairs, Vec(L.dim, 0));
    std::vector<bool> seen(npairs, false);
    for (const auto& [i, j, coeffs] : brackets) {
        if (i < 0 || j < 0 || i >= L.dim || j >= L.dim)
            fail(ErrKind::BadInput, "bracket pair index out of range");
        if (i >= j) fail(ErrKind::BadInput, "bracket pairs must have i < j (antisymmetry is implicit)");
        if ((int)coeffs.size() != L.dim)
            fail(ErrKind::BadInput, "bracket coefficient vector has wrong length");
        const int idx = L.pair_index(i, j);
        if (seen[idx])
            fail(ErrKind::InconsistentInput,
                 "duplicate bracket pair (" + L.basis[i] + ", " + L.basis[j] + ")");
        seen[idx] = true;
        L.cij_raw[idx] = coeffs;
        for (int k = 0; k < L.dim; k++) L.cij[idx][k] = L.ctx.reduce(coeffs[k]);
    }

    for (int i = 0; i < L.dim; i++)
        for (int j = i + 1; j < L.dim; j++)
            for (int k = j + 1; k < L.dim; k++) {
                Vec jac = bracket(L, unit_vec(L.dim, i), L.bracket_basis(j, k));
                Vec t2 = bracket(L, unit_vec(L.dim, j), L.bracket_basis(k, i));
                Vec t3 = bracket(L, unit_vec(L.dim, k), L.bracket_basis(i, j));
                for (int m = 0; m < L.dim; m++) jac[m] = L.ctx.add(jac[m], L.ctx.add(t2[m], t3[m]));
                if (!is_zero_vec(jac))
                    fail(ErrKind::InconsistentInput,
                         "Jacobi identity fails on (" + L.basis[i] + ", " + L.basis[j] + ", " +
                             L.basis[k] + ")");
            }

    if (realization) {
        const int n = realization->n;
        if (n < 1) fail(ErrKind::BadInput, "matrix realization needs n >= 1");
        if ((int)realization->images.size() != L.dim)
            fail(ErrKind::BadInput, "matrix realization must give one matrix per basis vector");
        std::vector<VecList> M(L.dim);
        for (int i = 0; i < L.dim; i++) {
            M[i] = reduce_mat(L.ctx, realization->images[i], n, n,
                              "realization image of " + L.basis[i]);
            for (const Vec& row : M[i])
                for (uint64_t e : row)
                    if (L.ctx.val(e) < 1)
                        fail(ErrKind::BadInput,
                             "realization entries must have valuation >= 1 (image of " +
                                 L.basis[i] + ")");
        }
        for (int i = 0; i < L.dim; i++)
            for (int j = i + 1; j < L.dim; j++) {
                VecList ab = mat_mat(L.ctx, M[i], M[j]);
                VecList ba = mat_mat(L.ctx, M[j], M[i]);
                VecList want(n, Vec(n, 0));
                const Vec& row = L.cij[L.pair_index(i, j)];
                for (int k = 0; k < L.dim; k++) {
                    if (row[k] == 0) continue;
                    for (int r = 0; r < n; r++)
                        for (int s = 0; s < n; s++)
                            want[r][s] = L.ctx.add(want[r][s], L.ctx.mul(row[k], M[k][r][s]));
                }
                for (int r = 0; r < n; r++)
                    for (int s = 0; s < n; s++)
                        if (L.ctx.sub(ab[r][s], ba[r][s]) != want[r][s])
                            fail(ErrKind::InconsistentInput,
                                 "matrix realization does not reproduce the bracket (" +
                                     L.basis[i] + ", " + L.basis[j] + ")");
            }
        L.realization = std::move(realization);
    }

    for (auto& a : automorphisms) {
        try {
            check_automorphism(L, a.matrix, a.order);
        } catch (const Error& e) {
            fail(e.kind(), "automorphism '" + a.name + "': " + e.what());
        }
    }
    L.automorphisms = std::move(automorphisms);
    return L;
}

bool is_powerful(const LieAlgebra& L) {
    for (const Vec& row : L.cij)
        for (uint64_t e : row)
            if (L.ctx.val(e) < 1) return false;
    return true;
}

bool is_fab(const LieAlgebra& L) {
    return rank_over_Q(L.cij_raw, L.dim) == L.dim;
}

SigmaAction check_automorphism(const LieAlgebra& L, const BigMat& A, int ell) {
    if (ell < 1) fail(ErrKind::BadInput, "declared order must be >= 1");
    const PadicCtx& c = L.ctx;
    VecList M = reduce_mat(c, A, L.dim, L.dim, "automorphism matrix");
    if (fp_rank(L.p, M, L.dim) != L.dim)
        fail(ErrKind::BadInput, "automorphism matrix is not invertible mod p");
    if (!mat_is_identity(mat_pow(c, M, ell)))
        fail(ErrKind::InconsistentInput,
             "matrix does not satisfy A^" + std::to_string(ell) + " = I mod p^N");
    for (int i = 0; i < L.dim; i++)
        for (int j = i + 1; j < L.dim; j++) {
            Vec lhs = mat_vec(c, M, L.cij[L.pair_index(i, j)]);
            Vec ci(L.dim), cjv(L.dim);
            for (int r = 0; r < L.dim; r++) {
                ci[r] = M[r][i];
                cjv[r] = M[r][j];
            }
            Vec rhs = bracket(L, ci, cjv);
            if (lhs != rhs)
                fail(ErrKind::InconsistentInput,
                     "bracket not preserved on (" + L.basis[i] + ", " + L.basis[j] + ")");
        }
    SigmaAction s;
    s.matrix = std::move(M);
    s.order = ell;
    return s;
}

SigmaAction named_automorphism(const LieAlgebra& L, const std::string& name) {
    for (const auto& a : L.automorphisms)
        if (a.name == name) return check_automorphism(L, a.matrix, a.order);
    fail(ErrKind::BadInput, "unknown automorphism '" + name + "'");
}

uint64_t primitive_root_of_order(uint64_t p, int N, int ell) {
    if (ell < 1) fail(ErrKind::BadInput, "order must be >= 1");
    if ((p - 1) % (uint64_t)ell != 0)
        fail(ErrKind::UnsupportedOrder,
             "order " + std::to_string(ell) + " does not divide p-1 = " + std::to_string(p - 1));
    std::vector<uint64_t> prime_divs;
    {
        uint64_t m = (uint64_t)ell;
        for (uint64_t q = 2; q * q <= m; q++)
            if (m % q == 0) {
                prime_divs.push_back(q);
                while (m % q == 0) m /= q;
            }
        if (m > 1) prime_divs.push_back(m);
    }
    auto has_order_ell = [&](uint64_t w, uint64_t mod) {
        if (powmod_u64(w, (uint64_t)ell, mod) != 1 % mod) return false;
        for (uint64_t q : prime_divs)
            if (powmod_u64(w, (uint64_t)ell / q, mod) == 1 % mod) return false;
        return true;
    };
    uint64_t w = 0;
    for (uint64_t cand = 1; cand < p; cand++)
        if (has_order_ell(cand, p)) {
            w = cand;
            break;
        }
    if (w == 0) fail(ErrKind::Internal, "no element of the requested order mod p");
    PadicCtx c(p, N);
    uint64_t t = powmod_big(w, boost::multiprecision::pow(bigint(p), (unsigned)(N - 1)), c.mod);
    if (!has_order_ell(t, c.mod))
        fail(ErrKind::Internal, "Teichmueller lift does not have the requested order");
    return t;
}

AdaptedBasis sigma_adapted_basis(const LieAlgebra& L, const SigmaAction& s) {
    const PadicCtx& c = L.ctx;
    const int d = L.dim, ell = s.order;
    AdaptedBasis out;
    out.omega = primitive_root_of_order(L.p, L.N, ell);
    const uint64_t omega_inv = c.inv(out.omega);
    const uint64_t inv_ell = c.inv(c.reduce_ll(ell));

    std::vector<VecList> pw(ell);
    pw[0] = mat_identity(c, d);
    for (int j = 1; j < ell; j++) pw[j] = mat_mat(c, s.matrix, pw[j - 1]);

    // greedy mod-p echelon; accepted adapted vectors are exact eigenvectors
    std::vector<Vec> ech;
    std::vector<int> piv;
    auto try_take = [&](const Vec& v) -> bool {
        Vec w(d);
        for (int i = 0; i < d; i++) w[i] = v[i] % L.p;
        for (size_t r = 0; r < ech.size(); r++) {
            uint64_t f = w[piv[r]];
            if (f == 0) continue;
            uint64_t neg = L.p - f;
            for (int i = 0; i < d; i++) w[i] = (w[i] + mulmod_u64(neg, ech[r][i], L.p)) % L.p;
        }
        int pc = -1;
        for (int i = 0; i < d; i++)
            if (w[i]) {
                pc = i;
                break;
            }
        if (pc < 0) return false;
        uint64_t inv = powmod_u64(w[pc], L.p - 2, L.p);
        for (int i = 0; i < d; i++) w[i] = mulmod_u64(w[i], inv, L.p);
        ech.push_back(w);
        piv.push_back(pc);
        return true;
    };

    for (int t = 0; t < ell; t++) {
        VecList proj(d, Vec(d, 0));
        for (int j = 0; j < ell; j++) {
            const uint64_t coef =
                c.mul(inv_ell, powmod_u64(omega_inv, (uint64_t)t * (uint64_t)j, c.mod));
            for (int r = 0; r < d; r++)
                for (int cc = 0; cc < d; cc++)
                    proj[r][cc] = c.add(proj[r][cc], c.mul(coef, pw[j][r][cc]));
        }
        const uint64_t lambda = powmod_u64(out.omega, (uint64_t)t, c.mod);
        for (int col = 0; col < d; col++) {
            Vec v(d);
            for (int r = 0; r < d; r++) v[r] = proj[r][col];
            if (!try_take(v)) continue;
            out.rows.push_back(v);
            out.labels.push_back(lambda);
            out.char_index.push_back(t);
            if (t == 0) out.fixed_count++;
        }
    }
    if ((int)out.rows.size() != d)
        fail(ErrKind::Internal, "eigenspace projectors did not span the algebra");
    for (int i = 0; i < d; i++)
        if (mat_vec(c, s.matrix, out.rows[i]) != scale_vec(c, out.labels[i], out.rows[i]))
            fail(ErrKind::Internal, "adapted vector is not an exact eigenvector mod p^N");

    VecList B(d, Vec(d, 0));
    for (int i = 0; i < d; i++)
        for (int r = 0; r < d; r++) B[r][i] = out.rows[i][r];
    out.to_adapted.assign(d, Vec(d, 0));
    for (int i = 0; i < d; i++) {
        Vec col = solve_unit_system(c, B, unit_vec(d, i));
        for (int r = 0; r < d; r++) out.to_adapted[r][i] = col[r];
    }
    return out;
}

SigmaType sigma_type(const LieAlgebra& L, const SigmaAction& s) {
    AdaptedBasis ab = sigma_adapted_basis(L, s);
    SigmaType t;
    t.multiplicities.assign(s.order, 0);
    for (int ci : ab.char_index) t.multiplicities[ci]++;
    t.r = ab.fixed_count;
    t.complement = L.dim - t.r;
    return t;
}

TypeConstraintVerdict involution_type_constraint(const LieAlgebra& L, const SigmaAction& s) {
    if (s.order != 2)
        fail(ErrKind::InconsistentInput, "type constraint applies to involutions only");
    if (L.dim <= 1)
        fail(ErrKind::InconsistentInput, "type constraint requires dimension > 1");
    if (!is_fab(L))
        fail(ErrKind::InconsistentInput, "type constraint requires a FAb algebra");
    AdaptedBasis ab = sigma_adapted_basis(L, s);
    TypeConstraintVerdict v;
    v.r = ab.fixed_count;
    v.complement = L.dim - v.r;
    v.pass = v.r >= 1 && v.complement >= 2;
    if (v.r >= 1) v.fixed_witness = ab.rows[0];
    if (v.r < L.dim) v.moved_witness = ab.rows[v.r];
    std::ostringstream os;
    os << "type (" << v.r << ", " << v.complement << "): "
       << (v.pass ? "admissible for an involution on a FAb algebra"
                  : "violates r >= 1 and d - r >= 2");
    v.detail = os.str();
    return v;
}

using nlohmann::json;
using namespace jsonu;

LieAlgebra liealg_from_json(const std::string& text) {
    json j = parse_object(text, "algebra file");

    const long long p = parse_ll(need(j, "p", "algebra"), "p");
    const long long N = parse_ll(need(j, "precision", "algebra"), "precision");
    const long long dim = parse_ll(need(j, "dim", "algebra"), "dim");
    if (p < 3) fail(ErrKind::BadInput, "p must be an odd prime");
    if (N < 1 || N > 62) fail(ErrKind::BadInput, "precision out of range");
    if (dim < 1 || dim > 4096) fail(ErrKind::BadInput, "dim out of range");

    const json& jb = need(j, "basis", "algebra");
    if (!jb.is_array() || (long long)jb.size() != dim)
        fail(ErrKind::BadInput, "basis must list exactly dim labels");
    std::vector<std::string> basis;
    for (const auto& b : jb) {
        if (!b.is_string()) fail(ErrKind::BadInput, "basis labels must be strings");
        basis.push_back(b.get<std::string>());
    }

    const json& jbr = need(j, "brackets", "algebra");
    if (!jbr.is_array()) fail(ErrKind::BadInput, "brackets must be an array");
    std::vector<BracketEntry> brackets;
    for (const auto& e : jbr) {
        if (!e.is_object()) fail(ErrKind::BadInput, "each bracket entry must be an object");
        const int i = (int)parse_ll(need(e, "i", "bracket"), "bracket i");
        const int k = (int)parse_ll(need(e, "j", "bracket"), "bracket j");
        const json& jc = need(e, "coeffs", "bracket");
        if (!jc.is_array()) fail(ErrKind::BadInput, "bracket coeffs must be an array");
        std::vector<bigint> coeffs;
        for (const auto& cc : jc) coeffs.push_back(parse_int(cc, "bracket coefficient"));
        brackets.emplace_back(i, k, std::move(coeffs));
    }

    std::optional<MatrixRealization> realization;
    if (auto it = j.find("matrix_realization"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) fail(ErrKind::BadInput, "matrix_realization must be an object");
        MatrixRealization mr;
        mr.n = (int)parse_ll(need(*it, "n", "matrix_realization"), "realization n");
        const json& imgs = need(*it, "images", "matrix_realization");
        if (!imgs.is_array()) fail(ErrKind::BadInput, "realization images must be an array");
        for (const auto& m : imgs) mr.images.push_back(parse_bigmat(m, "realization image"));
        realization = std::move(mr);
    }

    std::vector<AutomorphismSpec> autos;
    if (auto it = j.find("automorphisms"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) fail(ErrKind::BadInput, "automorphisms must be an array");
        for (const auto& a : *it) {
            if (!a.is_object()) fail(ErrKind::BadInput, "each automorphism must be an object");
            AutomorphismSpec sp;
            const json& nm = need(a, "name", "automorphism");
            if (!nm.is_string()) fail(ErrKind::BadInput, "automorphism name must be a string");
            sp.name = nm.get<std::string>();
            sp.order = (int)parse_ll(need(a, "order", "automorphism"), "automorphism order");
            sp.matrix = parse_bigmat(need(a, "matrix", "automorphism"), "automorphism matrix");
            autos.push_back(std::move(sp));
        }
    }

    return make_liealg((uint64_t)p, (int)N, std::move(basis), brackets, std::move(realization),
                       std::move(autos));
}

std::string liealg_to_json(const LieAlgebra& L) {
    json j;
    j["p"] = (long long)L.p;
    j["precision"] = L.N;
    j["dim"] = L.dim;
    j["basis"] = L.basis;
    json brackets = json::array();
    for (int i = 0; i < L.dim; i++)
        for (int k = i + 1; k < L.dim; k++) {
            const auto& raw = L.cij_raw[L.pair_index(i, k)];
            if (std::all_of(raw.begin(), raw.end(), [](const bigint& b) { return b == 0; }))
                continue;
            json e;
            e["i"] = i;
            e["j"] = k;
            json coeffs = json::array();
            for (const auto& cc : raw) coeffs.push_back(int_json(cc));
            e["coeffs"] = std::move(coeffs);
            brackets.push_back(std::move(e));
        }
    j["brackets"] = std::move(brackets);
    if (L.realization) {
        json mr;
        mr["n"] = L.realization->n;
        json imgs = json::array();
        for (const auto& m : L.realization->images) imgs.push_back(bigmat_json(m));
        mr["images"] = std::move(imgs);
        j["matrix_realization"] = std::move(mr);
    }
    if (!L.automorphisms.empty()) {
        json autos = json::array();
        for (const auto& a : L.automorphisms) {
            json e;
            e["name"] = a.name;
            e["order"] = a.order;
            e["matrix"] = bigmat_json(a.matrix);
            autos.push_back(std::move(e));
        }
        j["automorphisms"] = std::move(autos);
    }
    return j.dump(2) + "\n";
}

LieAlgebra liealg_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::BadInput, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return liealg_from_json(buf.str());
}

void liealg_save(const LieAlgebra& L, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrKind::BadInput, "cannot write '" + path + "'");
    out << liealg_to_json(L);
}

} // namespace proplie
