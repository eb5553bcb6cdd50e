#include "proplie/catalog.hpp"

#include <algorithm>

#include "proplie/errors.hpp"

namespace proplie {
namespace {

constexpr int kDefaultPrecision = 4;

int pick_precision(int requested, int minimum) {
  if (requested == 0) return std::max(kDefaultPrecision, minimum);
  if (requested < minimum)
    fail(ErrKind::BadInput, "catalog: precision too small for the requested parameters");
  return requested;
}

bigint p_power(uint64_t p, int k) {
  bigint v = 1;
  for (int i = 0; i < k; i++) v *= p;
  return v;
}

BigMat zero_mat(int n) { return BigMat(n, std::vector<bigint>(n, 0)); }

BigMat mul(const BigMat& a, const BigMat& b) {
  int n = (int)a.size();
  BigMat c = zero_mat(n);
  for (int i = 0; i < n; i++)
    for (int l = 0; l < n; l++)
      if (a[i][l] != 0)
        for (int j = 0; j < n; j++) c[i][j] += a[i][l] * b[l][j];
  return c;
}

BigMat lie_bracket(const BigMat& a, const BigMat& b) {
  BigMat ab = mul(a, b), ba = mul(b, a);
  int n = (int)a.size();
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) ab[i][j] -= ba[i][j];
  return ab;
}

BigMat diag_entries(int n, std::vector<bigint> d) {
  BigMat a = zero_mat(n);
  for (int i = 0; i < n; i++) a[i][i] = d[i];
  return a;
}

// smallest positive non-square unit mod p
uint64_t smallest_nonresidue(uint64_t p) {
  for (uint64_t e = 2; e < p; e++) {
    uint64_t acc = 1, base = e, ex = (p - 1) / 2;
    while (ex) {
      if (ex & 1) acc = (uint64_t)((__uint128_t)acc * base % p);
      base = (uint64_t)((__uint128_t)base * base % p);
      ex >>= 1;
    }
    if (acc == p - 1) return e;
  }
  fail(ErrKind::Internal, "no quadratic non-residue found");
}

BigMat scalar_diag_auto(const std::vector<bigint>& entries) {
  int d = (int)entries.size();
  BigMat a = zero_mat(d);
  for (int i = 0; i < d; i++) a[i][i] = entries[i];
  return a;
}

}  // namespace

CatalogEntry make_dirprod(uint64_t p, int precision) {
  int N = pick_precision(precision, 2);
  CatalogEntry e;
  e.name = "dirprod";
  e.p = p;
  AutomorphismSpec sigma{"sigma", 2, scalar_diag_auto({1, -1})};
  e.algebra = make_liealg(p, N, {"x", "y"}, {}, std::nullopt, {sigma});
  e.fab = false;
  SigmaFacts f;
  f.name = "sigma";
  f.check_level = 2;
  f.fpmf_kmax = 4;
  f.type = {1, 1};
  f.fpmf = false;
  f.circ_rank = 1;
  f.equals_circ = true;
  e.sigma_facts.push_back(std::move(f));
  return e;
}

CatalogEntry make_semidirect(uint64_t p, int k, int precision) {
  if (k < 1) fail(ErrKind::BadInput, "make_semidirect: k must be at least 1");
  int N = pick_precision(precision, k + 2);
  CatalogEntry e;
  e.name = "semidirect";
  e.p = p;
  e.k = k;
  bigint pk = p_power(p, k);
  std::vector<BracketEntry> brackets{{0, 1, {0, -pk}}};
  MatrixRealization real;
  real.n = 2;
  real.images = {diag_entries(2, {-pk, 0}), BigMat{{0, bigint(p)}, {0, 0}}};
  AutomorphismSpec sigma{"sigma", 2, scalar_diag_auto({1, -1})};
  e.algebra = make_liealg(p, N, {"x", "y"}, brackets, real, {sigma});
  e.fab = false;
  SigmaFacts f;
  f.name = "sigma";
  f.check_level = k + 1;
  f.fpmf_kmax = std::max(3, k + 2);
  f.type = {1, 1};
  f.fpmf = true;
  f.g_invariant_exps = std::vector<int>{k};
  f.dp_closure = 2;
  f.circ_rank = 1;
  f.equals_circ = false;
  e.sigma_facts.push_back(std::move(f));
  return e;
}

CatalogEntry make_heisenberg(uint64_t p, int precision) {
  int N = pick_precision(precision, 2);
  CatalogEntry e;
  e.name = "heisenberg";
  e.p = p;
  bigint bp = p;
  std::vector<BracketEntry> brackets{
      {0, 1, {0, 0, 0}},   // (x, y) = 0
      {0, 2, {0, 0, bp}},  // (x, z) = p z
      {1, 2, {0, 0, -bp}}  // (y, z) = -p z
  };
  MatrixRealization real;
  real.n = 2;
  real.images = {diag_entries(2, {bp, 0}), diag_entries(2, {0, bp}),
                 BigMat{{0, bp}, {0, 0}}};
  AutomorphismSpec sigma{"sigma_A", 2, scalar_diag_auto({1, 1, -1})};
  e.algebra = make_liealg(p, N, {"x", "y", "z"}, brackets, real, {sigma});
  e.fab = false;
  SigmaFacts f;
  f.name = "sigma_A";
  f.check_level = 2;
  f.type = {2, 1};
  f.fpmf = true;
  f.g_invariant_exps = std::vector<int>{1};
  f.circ_rank = 2;
  f.equals_circ = false;
  e.sigma_facts.push_back(std::move(f));
  return e;
}

CatalogEntry make_sl(uint64_t p, int n, int precision) {
  if (n < 2) fail(ErrKind::BadInput, "make_sl: n must be at least 2");
  int N = pick_precision(precision, 2);
  int dim = n * n - 1;

  // basis: E_ij (i != j, lexicographic), then D_2..D_n
  std::vector<std::string> names;
  std::vector<BigMat> basis_mats;
  std::vector<std::pair<int, int>> offdiag;  // 0-based (i, j) per E slot
  bigint bp = p;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      if (i == j) continue;
      BigMat m = zero_mat(n);
      m[i][j] = bp;
      basis_mats.push_back(std::move(m));
      offdiag.push_back({i, j});
      names.push_back(n == 2 ? (i == 0 ? "x" : "y")
                             : "E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  for (int i = 1; i < n; i++) {
    std::vector<bigint> d(n, 0);
    d[0] = bp;
    d[i] = -bp;
    basis_mats.push_back(diag_entries(n, d));
    names.push_back(n == 2 ? "z" : "D" + std::to_string(i + 1));
  }
  int e_count = (int)offdiag.size();

  // read a traceless bracket value off the basis: off-diagonal entries give
  // E coefficients directly, the diagonal part decomposes over the D_i
  auto decompose = [&](const BigMat& m) {
    std::vector<bigint> c(dim, 0);
    for (int s = 0; s < e_count; s++) {
      auto [i, j] = offdiag[s];
      if (m[i][j] % bp != 0) fail(ErrKind::Internal, "sl bracket not in the lattice");
      c[s] = m[i][j] / bp;
    }
    bigint head = 0;
    for (int i = 1; i < n; i++) {
      if (m[i][i] % bp != 0) fail(ErrKind::Internal, "sl bracket not in the lattice");
      c[e_count + i - 1] = -m[i][i] / bp;
      head += c[e_count + i - 1];
    }
    if (m[0][0] != bp * head) fail(ErrKind::Internal, "sl bracket has nonzero trace");
    return c;
  };

  std::vector<BracketEntry> brackets;
  for (int a = 0; a < dim; a++)
    for (int b = a + 1; b < dim; b++)
      brackets.push_back({a, b, decompose(lie_bracket(basis_mats[a], basis_mats[b]))});

  MatrixRealization real;
  real.n = n;
  real.images = basis_mats;

  std::vector<AutomorphismSpec> autos;
  std::vector<SigmaFacts> facts;
  for (int k = 1; k < n; k++) {
    // conjugation by diag(1 x k, -1 x (n-k)): E_ij flips iff i, j straddle
    std::vector<bigint> d(dim, 1);
    for (int s = 0; s < e_count; s++) {
      auto [i, j] = offdiag[s];
      bool cross = (i < k) != (j < k);
      d[s] = cross ? -1 : 1;
    }
    std::string aname = n == 2 ? "sigma_D" : "sigma_A_" + std::to_string(k);
    autos.push_back({aname, 2, scalar_diag_auto(d)});
    SigmaFacts f;
    f.name = aname;
    f.check_level = 2;
    int moved = 2 * k * (n - k);
    f.type = {dim - moved, moved};
    f.fpmf = true;
    f.g_invariant_exps = std::vector<int>(moved, 1);
    f.circ_rank = dim - moved;
    f.equals_circ = false;
    facts.push_back(std::move(f));
  }
  if (n == 2) {
    // antidiagonal involution: x -> y / eps, y -> eps x, z -> -z
    PadicCtx c(p, N);
    uint64_t eps = smallest_nonresidue(p);
    uint64_t eps_inv = c.inv(eps);
    BigMat m = zero_mat(3);
    m[1][0] = eps_inv;
    m[0][1] = eps;
    m[2][2] = -1;
    autos.push_back({"sigma_eps", 2, m});
    SigmaFacts f;
    f.name = "sigma_eps";
    f.check_level = 2;
    f.type = {1, 2};
    f.fpmf = true;
    f.circ_rank = 1;
    facts.push_back(std::move(f));
  }

  CatalogEntry e;
  e.name = "sl";
  e.p = p;
  e.n = n;
  e.algebra = make_liealg(p, N, names, brackets, real, autos);
  e.fab = true;
  e.sigma_facts = std::move(facts);
  return e;
}

const std::vector<SigmaFacts>& expected_facts(const CatalogEntry& entry) {
  return entry.sigma_facts;
}

bool sigma_fpf_via_transversal(const SubgroupHandle& h, const SigmaAction& sigma,
                               uint64_t budget) {
  const FiniteQuotient& q = h.quot;
  std::vector<Vec> gens;
  for (int i = 0; i < q.dim; i++) {
    Vec e(q.dim, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  std::vector<Vec> reps{q.identity()};
  auto known = [&](const Vec& x) {
    for (const auto& r : reps)
      if (h.contains(q.mul(q.inv(r), x))) return true;
    return false;
  };
  for (std::size_t head = 0; head < reps.size(); head++) {
    Vec cur = reps[head];  // copy: reps may reallocate below
    for (const auto& g : gens) {
      Vec nx = q.mul(cur, g);
      if (known(nx)) continue;
      if (reps.size() >= budget)
        fail(ErrKind::BudgetExceeded, "coset transversal ran past the element budget");
      reps.push_back(std::move(nx));
    }
  }
  for (const auto& r : reps) {
    if (h.contains(r)) continue;
    if (h.contains(q.mul(q.inv(r), q.apply(sigma.matrix, r)))) return false;
  }
  return true;
}

namespace {

std::string render_bool(bool b) { return b ? "true" : "false"; }

std::string render_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); i++) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string entry_subject(const CatalogEntry& e) {
  std::string s = e.name + " p=" + std::to_string(e.p);
  if (e.n) s += " n=" + std::to_string(e.n);
  if (e.k) s += " k=" + std::to_string(e.k);
  return s;
}

void record(std::vector<FactCheck>& out, const std::string& subject,
            const std::string& fact, bool pass, std::string detail = "") {
  out.push_back({subject, fact, pass, std::move(detail)});
}

}  // namespace

std::vector<FactCheck> verify_catalog_entry(const CatalogEntry& entry, uint64_t budget) {
  std::vector<FactCheck> out;
  std::string s0 = entry_subject(entry);
  record(out, s0, "powerful", is_powerful(entry.algebra));
  if (entry.fab) {
    bool got = is_fab(entry.algebra);
    record(out, s0, "fab", got == *entry.fab,
           "got " + render_bool(got) + ", want " + render_bool(*entry.fab));
  }
  for (const auto& f : entry.sigma_facts) {
    std::string sn = s0 + " / " + f.name;
    try {
      SigmaAction sig = named_automorphism(entry.algebra, f.name);
      record(out, sn, "order 2", sig.order == 2);
      if (f.type) {
        SigmaType t = sigma_type(entry.algebra, sig);
        bool ok = t.r == f.type->first && t.complement == f.type->second;
        record(out, sn, "type", ok,
               "got (" + std::to_string(t.r) + "," + std::to_string(t.complement) +
                   "), want (" + std::to_string(f.type->first) + "," +
                   std::to_string(f.type->second) + ")");
      }
      if (f.g_invariant_exps || f.dp_closure || f.circ_rank || f.equals_circ) {
        GammaSigmaData d = gamma_sigma_data(entry.algebra, sig, f.check_level);
        if (f.circ_rank)
          record(out, sn, "fixed rank", d.r == *f.circ_rank,
                 "got " + std::to_string(d.r) + ", want " + std::to_string(*f.circ_rank));
        if (f.dp_closure)
          record(out, sn, "dp of closure", d.dp == *f.dp_closure,
                 "got " + std::to_string(d.dp) + ", want " + std::to_string(*f.dp_closure));
        if (f.equals_circ)
          record(out, sn, "closure equals fixed subgroup",
                 d.equals_circ == *f.equals_circ,
                 "got " + render_bool(d.equals_circ) + ", want " +
                     render_bool(*f.equals_circ));
        if (f.g_invariant_exps) {
          bool ok = d.g.abelian && d.g.invariant_exps == *f.g_invariant_exps;
          record(out, sn, "G invariants", ok,
                 "got " + (d.g.abelian ? render_ints(d.g.invariant_exps)
                                       : std::string("nonabelian")) +
                     ", want " + render_ints(*f.g_invariant_exps));
        }
        record(out, sn, "sigma fixed-point-free on G",
               sigma_fpf_via_transversal(d.h, sig, budget));
        if (d.h.quot.order() <= bigint(std::min<uint64_t>(budget, 100000)))
          record(out, sn, "sigma fixed-point-free on G (ambient scan)",
                 sigma_fpf_on_quotient(d.h, sig, budget));
      }
      if (f.fpmf) {
        FpmfReport r = fpmf_check(entry.algebra, sig, f.fpmf_kmax);
        bool ok = *f.fpmf ? (r.verdict == FpmfVerdict::Fpmf && r.witness.has_value())
                          : (r.verdict == FpmfVerdict::NotFpmf && r.stabilized);
        record(out, sn, "fpmf", ok,
               std::string("want ") + (*f.fpmf ? "FPMF with witness" : "stable not-FPMF"));
      }
    } catch (const Error& err) {
      record(out, sn, "computation", false, err.what());
    }
  }
  return out;
}

CatalogEntry make_catalog_entry(const std::string& name, uint64_t p, int param,
                                int precision) {
  if (name == "dirprod") return make_dirprod(p, precision);
  if (name == "semidirect") return make_semidirect(p, param == 0 ? 1 : param, precision);
  if (name == "heisenberg") return make_heisenberg(p, precision);
  if (name == "sl") return make_sl(p, param == 0 ? 2 : param, precision);
  if (name == "sl2") return make_sl(p, 2, precision);
  fail(ErrKind::BadInput, "unknown catalog entry: " + name);
}

std::vector<std::string> catalog_names() {
  return {"dirprod", "semidirect", "heisenberg", "sl", "sl2"};
}

}  // namespace proplie
