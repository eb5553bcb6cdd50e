#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "proplie/linalg.hpp"
#include "proplie/padic.hpp"

namespace proplie {

using BigMat = std::vector<std::vector<bigint>>;

// Named d x d integer matrix with a declared order; images of basis vector
// e_j sit in column j, so the matrix acts on coordinate vectors from the left.
struct AutomorphismSpec {
    std::string name;
    int order = 1;
    BigMat matrix;
};

// Optional faithful realization: d square matrices M_i with [M_i, M_j]
// matching the structure constants mod p^N.  Entries must have valuation
// >= 1 so the matrices stay inside the exp/log convergence domain.
struct MatrixRealization {
    int n = 0;
    std::vector<BigMat> images;
};

// Validated automorphism of a LieAlgebra.  character_labels stays empty
// until a sigma-adapted basis has been computed.
struct SigmaAction {
    VecList matrix; // residues mod p^N
    int order = 1;
    Vec character_labels;
};

// Z_p-Lie algebra of dimension d presented by structure constants mod p^N.
// Bracket rows are stored for i < j only, in lexicographic order;
// antisymmetry is synthesized.  Raw integer entries are kept alongside the
// reduced residues: rank computations over the fraction field use the exact
// integers.
struct LieAlgebra {
    uint64_t p = 3;
    int N = 1;
    int dim = 0;
    std::vector<std::string> basis;
    std::vector<std::vector<bigint>> cij_raw;
    VecList cij;
    std::optional<MatrixRealization> realization;
    std::vector<AutomorphismSpec> automorphisms;

    PadicCtx ctx;

    int pair_index(int i, int j) const; // requires i < j
    Vec bracket_basis(int i, int j) const;
};

using BracketEntry = std::tuple<int, int, std::vector<bigint>>;

// Validating constructor: checks index ranges, duplicate pairs, Jacobi mod
// p^N on every basis triple, realization faithfulness, and every declared
// automorphism.  Fails fast on the first violation.
LieAlgebra make_liealg(uint64_t p, int N, std::vector<std::string> basis,
                       const std::vector<BracketEntry>& brackets,
                       std::optional<MatrixRealization> realization = std::nullopt,
                       std::vector<AutomorphismSpec> automorphisms = {});

// JSON form: { "p", "precision", "dim", "basis", "brackets":
// [{"i","j","coeffs":[...]}...], "matrix_realization": {"n","images"}?,
// "automorphisms": [{"name","order","matrix"}...] }.  Integer fields accept
// plain JSON integers or decimal strings; values outside 64 bits must use
// strings.  Emission mirrors that rule, so round-trips are byte-stable.
LieAlgebra liealg_from_json(const std::string& text);
std::string liealg_to_json(const LieAlgebra& L);
LieAlgebra liealg_load(const std::string& path);
void liealg_save(const LieAlgebra& L, const std::string& path);

Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y);

// (L,L) subset p L; equivalently every structure-constant entry has
// valuation >= 1 (2 is a unit for odd p).
bool is_powerful(const LieAlgebra& L);

// Full derived rank over the fraction field: the bracket rows c_ij span
// rank d.  Computed on the exact integer entries, not mod p.
bool is_fab(const LieAlgebra& L);

// Verifies that A is integral, invertible mod p, satisfies A^ell = I mod
// p^N, and preserves every basis bracket mod p^N.  A bracket violation
// reports the offending basis pair.
SigmaAction check_automorphism(const LieAlgebra& L, const BigMat& A, int ell);

// Looks up a declared automorphism by name and re-validates it.
SigmaAction named_automorphism(const LieAlgebra& L, const std::string& name);

// Smallest positive integer of multiplicative order ell mod p, lifted to the
// Teichmueller representative mod p^N (so its order mod p^N is exactly ell).
// ErrKind::UnsupportedOrder unless ell divides p-1.
uint64_t primitive_root_of_order(uint64_t p, int N, int ell);

// Basis of eigenvectors of sigma mod p^N built from the idempotents
// e_t = ell^{-1} sum_j omega^{-tj} sigma^j.  Vectors with eigenvalue 1 come
// first.  rows[i] is the i-th adapted vector in the original coordinates;
// to_adapted sends original coordinates to adapted ones.
struct AdaptedBasis {
    VecList rows;
    VecList to_adapted;
    Vec labels;
    std::vector<int> char_index;
    int fixed_count = 0;
    uint64_t omega = 1;
};

AdaptedBasis sigma_adapted_basis(const LieAlgebra& L, const SigmaAction& s);

// Character multiplicities of sigma on L/pL; r = multiplicity of the
// trivial character.
struct SigmaType {
    int r = 0;
    int complement = 0;
    std::vector<int> multiplicities;
};

SigmaType sigma_type(const LieAlgebra& L, const SigmaAction& s);

// For an involution on a FAb algebra of dimension > 1: r >= 1 and
// d - r >= 2.  Witness vectors are adapted basis representatives.
struct TypeConstraintVerdict {
    bool pass = false;
    int r = 0;
    int complement = 0;
    Vec fixed_witness;
    Vec moved_witness;
    std::string detail;
};

TypeConstraintVerdict involution_type_constraint(const LieAlgebra& L, const SigmaAction& s);

} // namespace proplie
