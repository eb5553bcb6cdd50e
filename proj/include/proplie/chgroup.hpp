#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "proplie/chseries.hpp"
#include "proplie/liealg.hpp"

namespace proplie {

enum class Backend {
    Series, // Dynkin-word expansion with a certified truncation degree
    Matrix, // log(exp(x)exp(y)) through the realization, lattice readback
};

namespace detail {

// Word-by-word evaluator for Phi truncated at the degree certified for
// (target, vfloor).  Arithmetic runs at precision target + debit, where
// debit is the largest v_p(den q_w) in the kept table, so every exact
// division by p^(e_w) still leaves target correct digits.
struct SeriesEvaluator {
    PadicCtx ectx; // elevated context p^(target + debit)
    int target = 0;
    int vfloor = 0;
    int deg = 0;
    int debit = 0;
    int dim = 0;
    const CHTable* table = nullptr;
    std::unordered_map<uint32_t, size_t> index;
    std::vector<uint64_t> num_mod; // numerator of q_w mod p^(target+debit)
    std::vector<uint64_t> uinv;    // inverse of the unit part of den q_w
    std::vector<int> shift;        // e_w = v_p(den q_w)
    VecList rows;                  // structure constants mod p^(target+debit)

    // x, y are residues mod p^target with valuation >= vfloor; the result is
    // exact mod p^target.
    Vec mul(const Vec& x, const Vec& y) const;
};

SeriesEvaluator make_series_evaluator(const LieAlgebra& L, int target, int vfloor);

// Realization-side engine: n*n-by-dim integer matrix A with columns
// vec(M_i); headroom = sum of v_p over the elementary divisors of A, the
// worst precision the lattice readback can consume across its pivots.
struct MatrixEngine {
    uint64_t p = 3;
    int n = 0;
    int dim = 0;
    int headroom = 0;
    std::vector<BigMat> images;
    std::vector<std::vector<bigint>> lattice; // n*n rows, dim cols
};

MatrixEngine make_matrix_engine(const LieAlgebra& L);

// Coordinates z with sum z_i M_i = Z mod p^P, read mod p^(P - headroom).
// Z must lie in the lattice mod p^P; a nonzero residual is an internal
// defect because exp/log never leave the span of a powerful lattice.
Vec lattice_solve(const MatrixEngine& eng, const PadicCtx& ctx, const VecList& z);

} // namespace detail

// The uniform group attached to a powerful algebra: elements are additive
// Lie coordinates mod p^N and the law is x*y = Phi(x,y).  Both backends
// give the exact law mod p^N; the matrix backend needs a realization whose
// images reproduce the bracket as exact integer matrices.
class GroupCtx {
  public:
    explicit GroupCtx(const LieAlgebra& L, Backend backend = Backend::Series);

    const LieAlgebra& algebra() const { return L_; }
    Backend backend() const { return backend_; }
    const PadicCtx& ctx() const { return L_.ctx; }
    // truncation degree of the base-precision series table; 0 for matrix
    int series_degree() const { return sev_ ? sev_->deg : 0; }

    Vec identity() const { return Vec(L_.dim, 0); }

    Vec mul(const Vec& x, const Vec& y) const;
    // coordinate negation, verified against Phi(x, -x) = 0 on every call
    Vec inv(const Vec& x) const;
    // square-and-multiply; negative exponents through inv
    Vec pow(const Vec& x, const bigint& e) const;

    // exponents (a_1..a_d) mod p^N with x = x_1^(a_1) * ... * x_d^(a_d) for
    // the basis-axis elements x_i, solved digit by digit; the claimed
    // product is re-multiplied and compared before returning.
    Vec to_second_kind(const Vec& x) const;
    Vec from_second_kind(const Vec& a) const;

    // lim_n (1/p^n)(x^(p^n) * y^(p^n)) and lim_n (1/p^2n)[x^(p^n), y^(p^n)],
    // iterated until two consecutive values agree mod p^N; stabilization is
    // guaranteed by n = N, and n = N+2 without agreement raises
    // ConvergenceFailure.
    Vec additive_limit(const Vec& x, const Vec& y) const;
    Vec bracket_limit(const Vec& x, const Vec& y) const;

  private:
    Vec canon(const Vec& x) const;

    LieAlgebra L_;
    Backend backend_;
    std::optional<detail::SeriesEvaluator> sev_;
    std::optional<detail::MatrixEngine> meng_;
};

// sigma-adapted basis vectors with character +1; they topologically
// generate the connected fixed-point subgroup.
std::vector<Vec> fixed_subgroup_generators(const LieAlgebra& L, const SigmaAction& s);

} // namespace proplie
