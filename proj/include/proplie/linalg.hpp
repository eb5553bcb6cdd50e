#pragma once

#include <vector>

#include "proplie/padic.hpp"

namespace proplie {

using Vec = std::vector<uint64_t>;    // residues against an ambient PadicCtx
using VecList = std::vector<Vec>;

// Canonical Howell-style echelon basis for a submodule of (Z/p^k)^dim.
// Pivot entries are normalized to p^v, pivot columns strictly increase,
// entries below a pivot are zero and entries above it are reduced mod p^v.
// Together with the annihilator-tail completion this makes the form unique
// per span, so module equality is row-by-row comparison.
struct HowellBasis {
    PadicCtx ctx;
    int dim = 0;
    VecList rows;
    std::vector<int> pivot_col;
    std::vector<int> pivot_val;

    bool contains(const Vec& v) const;
    bool same_span(const HowellBasis& other) const;
    bigint span_size() const;
    // log_p of span size
    int log_size() const;
};

HowellBasis howell_form(const PadicCtx& ctx, int dim, const VecList& gens);

// Right kernel {x : M x = 0 mod p^k} of an (nrows x ncols) matrix given as
// rows; returns a canonical basis of the kernel as a submodule of
// (Z/p^k)^ncols.
HowellBasis kernel_mod_pk(const PadicCtx& ctx, const VecList& rows, int ncols);

// Invariant factors (> 1, largest first) of (Z/p^k)^dim / span.
std::vector<bigint> quotient_invariants(const HowellBasis& span);

// Rank over the fraction field of an integer matrix.
int rank_over_Q(const std::vector<std::vector<bigint>>& rows, int ncols);

// Elementary divisors of an integer matrix (Smith normal form diagonal,
// nonzero entries only, each dividing the next).
std::vector<bigint> smith_divisors(std::vector<std::vector<bigint>> m);

// dense matrix helpers over a PadicCtx (row-major, square or rectangular)
struct MatShape {
    int rows = 0, cols = 0;
};

Vec mat_vec(const PadicCtx& ctx, const VecList& m, const Vec& v);
VecList mat_mat(const PadicCtx& ctx, const VecList& a, const VecList& b);
VecList mat_identity(const PadicCtx& ctx, int n);
VecList mat_pow(const PadicCtx& ctx, VecList m, bigint e);
bool mat_is_identity(const VecList& m);

// Solve A x = b mod p^k where A is square with unit determinant mod p.
// ErrKind::Internal if A is not invertible mod p.
Vec solve_unit_system(const PadicCtx& ctx, VecList a, Vec b);

} // namespace proplie
