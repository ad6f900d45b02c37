#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/ff.hpp"
#include "mackeylab/group.hpp"
#include "mackeylab/poly.hpp"

// Finite-dimensional associative F_p-algebras given by sparse structure
// constants, with an optional family grading: basis elements carry a
// (src, dst) pair and compose like maps between family members. The product
// a*b means "first a, then b", so for graded elements a: H->K and b: K->L
// the product a*b runs H->L.
//
// Left modules are stored componentwise: a module M over a graded algebra
// splits as the direct sum of its evaluations M_t = e_t M, and a basis
// element b acts by a small matrix M_{dst b} -> M_{src b}. Ungraded
// algebras use a single component.

namespace mackeylab::fdalg {

using ff::Fp;
using ff::Mat;

struct Term {
    uint32_t k;  // basis index
    uint32_t c;  // coefficient
};

struct FDAlgebra {
    Fp f;
    uint32_t n = 0;
    std::vector<uint32_t> unit;               // dense coords of 1
    std::vector<std::vector<Term>> table;     // table[i*n+j] = b_i * b_j
    // family grading; fam_idem empty means ungraded
    uint32_t nfam = 1;
    std::vector<uint32_t> src, dst;           // per basis element
    std::vector<uint32_t> fam_idem;           // basis index of e_t per member
    std::vector<std::string> fam_label;
    std::string descriptor;

    bool has_family() const { return !fam_idem.empty(); }
    const std::vector<Term>& prod(uint32_t i, uint32_t j) const { return table[size_t(i) * n + j]; }

    // element arithmetic on dense coordinate vectors
    std::vector<uint32_t> mul(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const;
    std::vector<uint32_t> pow_elem(const std::vector<uint32_t>& x, uint64_t e) const;
    Mat left_mult(const std::vector<uint32_t>& x) const;  // n x n, column action
};

using AlgPtr = std::shared_ptr<const FDAlgebra>;

struct ProdEntry {
    uint32_t i, j;
    std::vector<Term> terms;
};

// Builds and verifies an algebra: associativity on (composable) triples,
// unit law, grading consistency. Throws std::invalid_argument on violation.
AlgPtr make_algebra(Fp f, uint32_t n, std::vector<uint32_t> unit,
                    const std::vector<ProdEntry>& entries, std::string descriptor);
AlgPtr make_graded_algebra(Fp f, uint32_t n, const std::vector<ProdEntry>& entries,
                           uint32_t nfam, std::vector<uint32_t> src, std::vector<uint32_t> dst,
                           std::vector<uint32_t> fam_idem, std::vector<std::string> fam_label,
                           std::string descriptor);
AlgPtr opposite(const AlgPtr& a);
AlgPtr group_algebra(const groups::GroupPtr& g, Fp f);

// ---- radical ---- //

struct Radical {
    Mat basis;            // rows span rad(A)
    std::string method;
    // family-local data, filled when every diagonal block e_t A e_t is local
    bool family_local = false;
    std::vector<std::vector<uint32_t>> block_elems;  // per member: ids with src==dst==t
    std::vector<std::vector<uint32_t>> block_chi;    // residue character per block id
    std::vector<uint32_t> offdiag;                   // ids with src != dst
};

// Tries the family route: per-block residue characters, candidate
// J = offdiagonal + block character kernels, then verifies J is a two-sided
// ideal with nilpotent blocks. Those checks imply J = rad(A).
std::optional<Radical> try_radical_family(const AlgPtr& a);

// Chain of characteristic-polynomial coefficient forms c_{p^i}(xy) on the
// left regular representation, iterated over levels p^i <= n. Result is
// verified: two-sided ideal, nilpotent, quotient re-run gives zero.
Mat radical_charpoly_chain(const AlgPtr& a);

// Cross-check oracle: annihilator of the composition factors of the left
// regular module, factors found by seeded chopping.
Mat radical_by_chop(const AlgPtr& a, uint64_t seed);

// family route when available, charpoly chain otherwise
Radical radical(const AlgPtr& a);

// ---- regular decomposition ---- //

struct PIMClass {
    std::vector<uint32_t> idem;  // primitive idempotent coords
    Mat basis;                   // rows: basis of A*idem
    uint32_t mult = 1;
    uint32_t simple_dim = 1;
    std::string label;
};

struct RegularDecomp {
    AlgPtr a;
    Radical rad;
    std::vector<PIMClass> pims;
    // every primitive idempotent of the chosen complete orthogonal set,
    // ungrouped; sums to 1
    std::vector<std::vector<uint32_t>> prim_idems;
};

RegularDecomp regular_decomposition(const AlgPtr& a, uint64_t seed = 0xB0C);
// cartan[i][j] = multiplicity of simple j in PIM i
std::vector<std::vector<uint32_t>> cartan(const RegularDecomp& d);

// ---- modules ---- //

struct AModule {
    AlgPtr a;
    std::vector<uint32_t> cdim;  // per family member
    std::vector<Mat> rho;        // per basis element b: cdim[src_b] x cdim[dst_b]
    std::string name;

    uint32_t dim() const;
};

struct AMap {
    std::vector<Mat> comp;  // per member t: N_t x M_t
};

AModule direct_sum_mod(const AModule& x, const AModule& y);
bool verify_amodule(const AModule& m);  // full structure-constant check
std::vector<AMap> hom_modules(const AModule& m, const AModule& n);
std::optional<AMap> iso_modules(const AModule& m, const AModule& n, uint64_t seed);

// ---- homological engine (graded algebras with family-local radical) ---- //

struct Homology;
using HomologyPtr = std::shared_ptr<const Homology>;

struct Homology {
    AlgPtr a;
    Radical rad;
    // pim_elems[t][u] = basis ids with src u, dst t; PIM_t component u
    std::vector<std::vector<std::vector<uint32_t>>> pim_elems;
    HomologyPtr op;  // opposite-algebra context, op->op == nullptr
};

HomologyPtr make_homology(const AlgPtr& a);

AModule pim_module(const HomologyPtr& h, uint32_t t);
AModule simple_module(const HomologyPtr& h, uint32_t t);
AModule regular_module(const HomologyPtr& h);
AModule dual_over_op(const HomologyPtr& h, const AModule& m);

// row bases of rad(A)*M inside each component of M
std::vector<Mat> radical_rows(const HomologyPtr& h, const AModule& m);
std::vector<uint32_t> top_mults(const HomologyPtr& h, const AModule& m);

struct Cover {
    AModule p;
    AMap onto;
    std::vector<uint32_t> mults;  // PIM multiplicities per family member
};
Cover projective_cover(const HomologyPtr& h, const AModule& m);

struct KernelMod {
    AModule k;
    std::vector<Mat> rows;  // kernel row bases inside the source module
};
KernelMod kernel_module(const AModule& src, const AModule& dst, const AMap& f);

enum class ResStatus { finite, periodic, truncated };

struct Resolution {
    ResStatus status = ResStatus::truncated;
    uint32_t pd = 0;                 // finite case
    uint32_t onset = 0, period = 0;  // periodic case
    std::vector<std::vector<uint32_t>> terms;  // per stage, PIM mults
    std::vector<uint32_t> kernel_dims;
    uint32_t stages = 0;
};

Resolution minimal_resolution(const HomologyPtr& h, const AModule& m, uint32_t cap,
                              uint64_t seed = 0xB0C);

bool is_projective(const HomologyPtr& h, const AModule& m);
bool is_injective(const HomologyPtr& h, const AModule& m);
bool self_injective(const AlgPtr& a);

// per layer, simple multiplicities by family member
std::vector<std::vector<uint32_t>> radical_layers(const HomologyPtr& h, const AModule& m);
std::vector<std::vector<uint32_t>> socle_layers(const HomologyPtr& h, const AModule& m);

}  // namespace mackeylab::fdalg
