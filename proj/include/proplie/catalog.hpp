#pragma once

// Constructors for the built-in example families: the abelian direct
// product, the metabelian semidirect product, the Heisenberg algebra, and
// the trace-zero matrix algebras sl_n.  Each entry carries a validated
// algebra (structure constants, matrix realization where one exists, named
// order-2 automorphisms) plus a record of expected structural facts that
// the verification harness replays against the generic machinery.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proplie/finitep.hpp"
#include "proplie/liealg.hpp"

namespace proplie {

// Facts tied to one named automorphism.  Absent fields are simply not
// asserted for that entry.  check_level is the quotient level at which the
// group-side facts (invariants, dp, circ comparisons) are meant to hold;
// fpmf_kmax is the scan ceiling handed to the FPMF decision.
struct SigmaFacts {
  std::string name;
  int check_level = 2;
  int fpmf_kmax = 3;
  std::optional<std::pair<int, int>> type;  // (r, d - r) on L/pL
  std::optional<bool> fpmf;
  // invariant factor exponents of G = Gamma / Gamma_sigma, descending;
  // absent when G is infinite or unasserted
  std::optional<std::vector<int>> g_invariant_exps;
  std::optional<int> dp_closure;  // d_p of the normal closure at check_level
  std::optional<int> circ_rank;   // rank of the sigma-fixed submodule
  std::optional<bool> equals_circ;
};

struct CatalogEntry {
  std::string name;  // dirprod | semidirect | heisenberg | sl
  uint64_t p = 3;
  int n = 0;  // sl: matrix size (dim = n^2 - 1)
  int k = 0;  // semidirect: valuation of a - 1
  LieAlgebra algebra;
  std::optional<bool> fab;
  std::vector<SigmaFacts> sigma_facts;
};

// precision 0 selects the family default (4, raised to k + 2 for the
// semidirect family so the full cyclic quotient stays visible).

// Z_p x Z_p with sigma: x -> x, y -> -y.  No matrix realization.
CatalogEntry make_dirprod(uint64_t p, int precision = 0);

// <x, y | (x, y) = -p^k y> with sigma: x -> x, y -> -y; realized by
// x = diag(-p^k, 0), y = p E_12 inside 2x2 matrices.  k >= 1.
CatalogEntry make_semidirect(uint64_t p, int k, int precision = 0);

// dim 3, (x, y) = 0, (x, z) = p z, (y, z) = -p z; realized by
// x = p E_11, y = p E_22, z = p E_12; sigma_A is conjugation by diag(1, -1).
CatalogEntry make_heisenberg(uint64_t p, int precision = 0);

// Trace-zero matrices reduced trivially mod p: basis p E_ij (i != j) and
// D_i = diag(p, 0, .., -p, .., 0), dim n^2 - 1.  n >= 2.  Automorphisms
// sigma_A_k (conjugation by diag with k ones then n-k minus-ones) for
// 1 <= k <= n-1; for n = 2 the basis is named x, y, z and the involutions
// are sigma_D plus sigma_eps (conjugation by the antidiagonal of the
// smallest quadratic non-residue).
CatalogEntry make_sl(uint64_t p, int n, int precision = 0);

// Assembled at construction; exposed as the uniform accessor.
const std::vector<SigmaFacts>& expected_facts(const CatalogEntry& entry);

// Dispatch by family name ("sl2" is accepted for sl with n = 2).  param is
// k for semidirect and n for sl; ignored by the other families.
CatalogEntry make_catalog_entry(const std::string& name, uint64_t p, int param,
                                int precision = 0);

std::vector<std::string> catalog_names();

// One replayed fact: the recorded expectation compared against what the
// generic liealg/finitep machinery computes.
struct FactCheck {
  std::string subject;  // entry and automorphism, e.g. "sl p=3 n=2 / sigma_D"
  std::string fact;
  bool pass = false;
  std::string detail;
};

// Replays every recorded fact plus two standing invariants: the quotient
// G = Gamma/Gamma_sigma carries a fixed-point-free sigma action (checked on
// coset representatives, and double-checked by a full ambient scan whenever
// the ambient quotient is small enough), and the algebra is powerful.
// Errors raised mid-check are converted into failing facts.
std::vector<FactCheck> verify_catalog_entry(const CatalogEntry& entry,
                                            uint64_t budget = kDefaultElementBudget);

// sigma fixes no nonidentity coset of h in its ambient quotient.  Coset
// representatives are grown by a generator walk; BudgetExceeded when the
// index passes the budget.
bool sigma_fpf_via_transversal(const SubgroupHandle& h, const SigmaAction& sigma,
                               uint64_t budget = kDefaultElementBudget);

}  // namespace proplie
