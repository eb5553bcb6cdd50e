#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proplie/finitep.hpp"
#include "proplie/linalg.hpp"

namespace proplie {

// Multiplicity vector of a module over F_p[D] with D cyclic of prime order
// ell, ell | p-1.  Index j labels the character sending the fixed generator
// of D to omega^j, where omega = character_root(p, ell).
struct CharVector {
    uint64_t p = 0;
    int ell = 0;
    std::vector<long long> mults; // length ell, non-negative

    long long dimension() const;
};

// smallest positive integer of multiplicative order ell mod p
uint64_t character_root(uint64_t p, int ell);

CharVector make_char_vector(uint64_t p, int ell, std::vector<long long> mults);

// regular representation: every character once
CharVector char_regular(uint64_t p, int ell);

CharVector char_add(const CharVector& a, const CharVector& b);

// minimal number of module generators; a single generator spans at most one
// copy of each character
long long r_min_gens(const CharVector& v);

// dual module: mults[j] -> mults[-j mod ell]; r is invariant
CharVector char_dual(const CharVector& v);

// decomposition subgroup at an archimedean place; D has prime order, so only
// the two extremes occur
enum class DecompGroup { Trivial, Full };

// Character of the p-reduced T-unit group of a degree-ell cyclic extension:
// one induced character per archimedean place of the base field (trivial
// decomposition group induces the regular character, full decomposition the
// trivial character), |T| regular summands, optionally the cyclotomic
// character at index chi_p_index, minus one trivial character.
CharVector dirichlet_module(uint64_t p, int ell,
                            const std::vector<DecompGroup>& decomposition_subgroups,
                            long long t_size, bool mu_p_in_K, int chi_p_index);

std::string char_vector_to_json(const CharVector& v);
CharVector char_vector_from_json(const std::string& text);

// F_p-linear representation of a finite p-group.  The group is either an
// abelian p-group with exponent invariants [a_1..a_d], G = prod Z/p^{a_i},
// or a finite uniform quotient; action holds one dim x dim matrix mod p per
// group generator.  Construction verifies the defining relations.
struct GModule {
    uint64_t p = 0;
    int dimension = 0;
    std::vector<int> invariants;
    std::optional<FiniteQuotient> quotient;
    std::vector<VecList> action;
    PadicCtx ctx; // mod-p arithmetic

    bigint group_order() const;
};

GModule make_gmodule(uint64_t p, const std::vector<int>& invariants,
                     const std::vector<VecList>& action, int dimension);
GModule make_gmodule(const FiniteQuotient& q, const std::vector<VecList>& action, int dimension,
                     uint64_t budget = kDefaultElementBudget);

// Free rank t in M = F_p[G]^t + torsion, computed as the F_p-rank of the
// group norm acting on M.  F_p[G] is local Frobenius with one-dimensional
// socle spanned by the norm, and the norm kills every torsion module.
int norm_rank_t(const GModule& m, uint64_t budget = kDefaultElementBudget);

// t >= d_p M - (|G|-1) r(M^G), clamped at zero
bigint t_lower_bound(const bigint& dp_m, const bigint& order_g, const bigint& r_mg);

// abelian form only
std::string gmodule_to_json(const GModule& m);
GModule gmodule_from_json(const std::string& text);

} // namespace proplie
