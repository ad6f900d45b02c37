#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mackeylab/fdalg.hpp"
#include "mackeylab/group.hpp"
#include "mackeylab/kgmod.hpp"

// The endomorphism ring of P = direct sum of coset permutation modules
// k[G/H], graded by the subgroup family, together with the fixed-point and
// fixed-quotient functors into its module category.  A hom k[G/H] -> k[G/K]
// is determined by the image of the coset eH, which must be an H-fixed
// vector of k[G/K]; the H-orbit sums of cosets give the basis, indexed by
// double cosets HgK.

namespace mackeylab::comack {

using ff::Fp;
using ff::Mat;
using groups::GroupPtr;

enum class FamilyMode { all_subgroups, class_reps };

struct YoshidaContext {
    GroupPtr g;
    Fp f;
    FamilyMode mode = FamilyMode::class_reps;
    groups::SubgroupLattice lat;
    std::vector<uint32_t> family;         // subgroup ids, ascending
    std::vector<kgmod::KGModule> blocks;  // k[G/H] per member
    fdalg::AlgPtr alg;                    // End of the direct sum, family graded
    fdalg::HomologyPtr hom;               // null when some block fails to be local
    std::vector<uint32_t> tau;            // orbit-transpose anti-automorphism, basis permutation
    std::vector<std::string> labels;      // member labels: subgroup order, letter suffix on ties

    struct BasisElem {
        uint32_t src = 0, dst = 0;    // family members H, K
        uint32_t rep = 0;             // least group element of the double coset H g K
        std::vector<uint32_t> orbit;  // coset indexes of the dst block hit by eH
    };
    std::vector<BasisElem> elems;

    uint32_t members() const { return uint32_t(family.size()); }
    const groups::Subgroup& sub(uint32_t t) const { return lat.subgroups[family[t]]; }
};

using ContextPtr = std::shared_ptr<const YoshidaContext>;

// |G| <= 16; structure constants verified by the algebra builder, dimension
// identity dim E = sum of double coset counts checked here
ContextPtr build_yoshida(const GroupPtr& g, uint32_t p, FamilyMode mode);

// requires the homological engine (p-groups in practice); throws otherwise
const fdalg::HomologyPtr& homology(const ContextPtr& ctx);

enum class Provenance { fp, fq, abstract_mod };

struct CMFunctor {
    ContextPtr ctx;
    fdalg::AModule mod;
    Provenance prov = Provenance::abstract_mod;
    std::optional<kgmod::KGModule> carrier;  // U for fp, M for fq

    const std::vector<uint32_t>& eval_dims() const { return mod.cdim; }
};

// H |-> U^H with the algebra acting by precomposition
CMFunctor fp(const ContextPtr& ctx, const kgmod::KGModule& u);
// H |-> coinvariants of M, as the twisted dual of fp of the dual module
CMFunctor fq(const ContextPtr& ctx, const kgmod::KGModule& m);
// the simple living over member t (requires the engine)
CMFunctor simple_functor(const ContextPtr& ctx, uint32_t t);

// components transposed through the anti-automorphism; an involution
fdalg::AModule twisted_dual(const ContextPtr& ctx, const fdalg::AModule& m);
// swaps fp and fq provenance, dualizing the carrier
CMFunctor dual_functor(const CMFunctor& f);

// functorial action on a kG-linear map f: src -> dst (matrix dst.d x src.d)
fdalg::AMap map_fp(const ContextPtr& ctx, const kgmod::KGModule& src,
                   const kgmod::KGModule& dst, const Mat& f);
fdalg::AMap map_fq(const ContextPtr& ctx, const kgmod::KGModule& src,
                   const kgmod::KGModule& dst, const Mat& f);

// the norm comparison fq(m) -> fp(m): a coinvariant class maps to the sum
// of its translates; verified to commute with the algebra action, an
// isomorphism when m is free
fdalg::AMap norm_comparison(const ContextPtr& ctx, const kgmod::KGModule& m);

// maps[0]: terms[0] -> target, maps[i]: terms[i] -> terms[i-1]
struct CMComplex {
    CMFunctor target;
    std::vector<CMFunctor> terms;
    std::vector<fdalg::AMap> maps;
    std::string strategy;  // how the dihedral differential was found
};

// rank bookkeeping for an exactness check; alternating kernels vs images
void verify_exact(const CMComplex& c);  // throws std::logic_error
// every differential lands inside the radical of its target (engine needed)
bool is_minimal_complex(const CMComplex& c);

// 0 <- fq(m) <- fp(P0) <- fp(P1) <- fp(syzygy^2 m) <- 0 from a minimal free
// resolution prefix of m; p-groups only; exactness verified
CMComplex resolution_start(const ContextPtr& ctx, const kgmod::KGModule& m, uint64_t seed);

// the pinned resolution of fq(k): cyclic p-groups (length 2) and dihedral
// 2-groups including Klein four (length 3, third term built on
// X = G/H + G/C + G/K for two generating reflections, last term a point)
CMComplex explicit_resolution(const ContextPtr& ctx, uint64_t seed);

struct PdProbe {
    bool finite = false;
    uint32_t pd = 0;  // finite case
    uint32_t depth = 0;
    uint32_t tambara_bound = 0;  // largest elementary abelian subquotient rank + 1
    bool conclusive = false;     // infinite verdict justified by the bound or periodicity
    fdalg::Resolution res;
    std::string evidence;
};
PdProbe pd_probe(const CMFunctor& f, uint32_t depth, uint64_t seed = 0xB0C);

struct GorensteinRow {
    uint32_t member = 0;
    std::string label;
    bool finite = false;
    uint32_t pd = 0;
};
struct GorensteinReport {
    std::vector<GorensteinRow> rows;  // descending member order, may stop early
    bool stopped_early = false;
    bool all_finite = false;
    uint32_t max_pd = 0;
    bool prediction = false;  // structural verdict from the Sylow shape
    bool consistent = false;
};
// probes fq(k[G/H]) for every family member, largest subgroup first,
// stopping once an infinite pd settles the verdict
GorensteinReport gorenstein_probe(const GroupPtr& g, uint32_t p, uint32_t depth,
                                  uint64_t seed = 0xB0C);

// label of the unique minimal member supporting a simple module
std::string simple_label(const ContextPtr& ctx, const fdalg::AModule& s);
// radical layers rendered as "[a b][c]..." with member labels
std::string loewy_diagram(const ContextPtr& ctx, const fdalg::AModule& m);

enum class Direction { down, up };
// restriction (down: functor over big -> functor over small) or induction
// (up), computed on the carrier; abstract provenance unsupported
CMFunctor change_group(const ContextPtr& big, const ContextPtr& small,
                       const groups::Subgroup& h, const groups::InducedGroup& hg,
                       const CMFunctor& f, Direction dir);

}  // namespace mackeylab::comack
