#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proplie/chgroup.hpp"
#include "proplie/liealg.hpp"

namespace proplie {

inline constexpr uint64_t kDefaultElementBudget = 1000000;

// Finite quotient of the uniform group at level k: coordinate tuples in
// (Z/p^k)^d under the group law truncated mod p^k.  Immutable once built.
// class2_linear marks levels where subgroup closures are plain submodule
// closures (k = 1 always; k = 2 needs p >= 5 since 1/12 loses a digit at
// p = 3); it enables the Howell-form cross-check, not a separate code path.
struct FiniteQuotient {
    uint64_t p = 0;
    int level = 0;
    int dim = 0;
    bool class2_linear = false;
    std::shared_ptr<const GroupCtx> law;

    const PadicCtx& ctx() const { return law->ctx(); }
    bigint order() const;
    Vec identity() const { return Vec(dim, 0); }
    Vec reduce(const Vec& x) const;
    Vec mul(const Vec& x, const Vec& y) const { return law->mul(x, y); }
    Vec inv(const Vec& x) const { return law->inv(x); }
    Vec pow(const Vec& x, const bigint& e) const { return law->pow(x, e); }
    // group commutator x y x^-1 y^-1
    Vec commutator(const Vec& x, const Vec& y) const;
    // linear action of an integer matrix, reduced mod p^level
    Vec apply(const BigMat& m, const Vec& x) const;
    Vec apply(const VecList& m, const Vec& x) const;
};

// pre: 1 <= k <= precision of L; the law is revalidated at precision k
FiniteQuotient quotient(const LieAlgebra& L, int k);

// Subgroup stored as a pivot table.  Slot (v, i) holds an element all of
// whose coordinates have valuation >= v and whose first coordinate of
// valuation exactly v is the i-th.  The table is closed under p-th powers,
// pairwise commutators, and (for normal closures) conjugation by the
// requested ambient set, so membership is a deterministic digit sift and
// the order is p^#pivots.
struct SubgroupHandle {
    FiniteQuotient quot;
    std::vector<Vec> gens;
    std::map<std::pair<int, int>, Vec> pivots;

    int rank() const { return (int)pivots.size(); } // log_p of the order
    bigint order() const;
    bool contains(const Vec& x) const;
    bool same_group_as(const SubgroupHandle& other) const;
    // all elements as normal-form products, ascending pivot slots
    std::vector<Vec> elements(uint64_t budget = kDefaultElementBudget) const;
};

SubgroupHandle subgroup_closure(const FiniteQuotient& q, const std::vector<Vec>& gens);
SubgroupHandle normal_closure(const FiniteQuotient& q, const std::vector<Vec>& gens);

// Frattini subgroup H^p [H,H]: the closure of pivot p-th powers and pivot
// commutators, normal inside H.
SubgroupHandle frattini(const SubgroupHandle& h);

// log_p of |H / Frattini(H)|, the minimal generator count
int dp_subgroup(const SubgroupHandle& h);

// Explicit-set oracle: BFS over products, preceded by a conjugation orbit
// when normal.  Refuses with BudgetExceeded when the element count passes
// the budget.
std::vector<Vec> closure_elements_bfs(const FiniteQuotient& q, const std::vector<Vec>& gens,
                                      bool normal, uint64_t budget = kDefaultElementBudget);

// Structure of G = Q/H for a normal subgroup handle: order exponent,
// abelianness (decided exactly via the commutator subgroup), invariant
// factor exponents a_1 >= a_2 >= ... when abelian, and nilpotency class.
struct QuotientGroupData {
    int order_exp = 0;
    bool abelian = false;
    std::vector<int> invariant_exps;
    int nilpotency_class = 0;
};

QuotientGroupData quotient_group_data(const FiniteQuotient& q, const SubgroupHandle& h);

// Level-k image of the sigma-fixed subgroup and its normal closure, with
// the data the finiteness propositions talk about.
struct GammaSigmaData {
    int level = 0;
    int r = 0;  // rank of the fixed submodule
    int dp = 0; // d_p of the normal closure at this level
    bool equals_circ = false;
    QuotientGroupData g;
    SubgroupHandle h_circ;
    SubgroupHandle h;
};

GammaSigmaData gamma_sigma_data(const LieAlgebra& L, const SigmaAction& sigma, int k);

enum class FpmfVerdict { Fpmf, NotFpmf, Undecided };

// conjugation by g moves pivot h of the closure outside its Frattini
struct FpmfWitness {
    Vec g;
    Vec h;
};

struct FpmfReport {
    FpmfVerdict verdict = FpmfVerdict::Undecided;
    int level = 0; // level establishing the verdict, or the last level tried
    uint64_t p = 0;
    GammaSigmaData at_level;
    std::optional<FpmfWitness> witness;
    // two consecutive trivial levels with matching invariants were seen;
    // a not-FPMF verdict always has this set
    bool stabilized = false;
    std::string to_json() const;
};

// Scans levels 2..k_max.  FPMF needs a concrete witness; not-FPMF needs two
// consecutive trivial levels plus the necessary conditions d_p = r and
// closure = plain closure; anything else is undecided at k_max.
FpmfReport fpmf_check(const LieAlgebra& L, const SigmaAction& sigma, int k_max);

// The three clauses tied to the fixed generators at level k:
// (i) their classes minimally generate the Frattini section as a G-module,
// (ii) sigma acts trivially on the G-coinvariants of that section,
// (iii) d_p of the closure is at least r.
struct QuotientRankCheck {
    int r = 0;
    int coinvariant_dim = 0;
    bool fixed_classes_generate = false;
    bool sigma_trivial_on_coinvariants = false;
    bool dp_at_least_r = false;
    bool all() const {
        return fixed_classes_generate && sigma_trivial_on_coinvariants && dp_at_least_r;
    }
};

QuotientRankCheck quotient_rank_identity(const LieAlgebra& L, const SigmaAction& sigma, int k);

// sigma(x) = x mod H only for x in H, checked by scanning the whole
// quotient; BudgetExceeded when p^{kd} passes the budget.
bool sigma_fpf_on_quotient(const SubgroupHandle& h, const SigmaAction& sigma,
                           uint64_t budget = kDefaultElementBudget);

} // namespace proplie
