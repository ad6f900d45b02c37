#pragma once

#include <string>
#include <vector>

#include "mackeylab/fdalg.hpp"
#include "mackeylab/ff.hpp"
#include "mackeylab/group.hpp"

// Finite-dimensional kG-modules with an eager matrix per group element,
// column action: v |-> act(g) v and act(gh) = act(g) act(h).

namespace mackeylab::kgmod {

using ff::Fp;
using ff::Mat;
using groups::GroupPtr;
using groups::Subgroup;

struct KGModule {
    GroupPtr g;
    Fp f;
    uint32_t d = 0;
    std::vector<Mat> act;  // indexed by group element
    std::string name;

    const Mat& of(uint32_t s) const { return act[s]; }
};

// least element per left coset gH, ascending
std::vector<uint32_t> coset_reps(const groups::Group& g, const Subgroup& h);

// Builds from images of the group's preferred generators and verifies the
// whole table: act(1) = id and act(s x) = act(s) act(x) for each generator s
// and every x. Throws std::invalid_argument if the images break that.
KGModule make_module(const GroupPtr& g, Fp f,
                     const std::vector<std::pair<uint32_t, Mat>>& gen_images,
                     std::string name);

KGModule trivial_module(const GroupPtr& g, Fp f);
KGModule regular_module(const GroupPtr& g, Fp f);
// k[G/H] on the cosets in coset_reps order
KGModule permutation_module(const GroupPtr& g, Fp f, const Subgroup& h, std::string name = "");

KGModule direct_sum(const KGModule& x, const KGModule& y);
KGModule dual(const KGModule& m);  // act*(g) = act(g^{-1})^T

// restriction along a subgroup, as a module over the re-indexed group
KGModule restrict_to(const KGModule& m, const groups::InducedGroup& hg);
// induction k[G] (x)_{kH} M; mh lives over hg.grp
KGModule induce(const GroupPtr& g, Fp f, const Subgroup& h, const groups::InducedGroup& hg,
                const KGModule& mh);

// rows spanning { v : act(h) v = v for all h in the list }
Mat fixed_points(const KGModule& m, const std::vector<uint32_t>& elems);

// sum of act(r) over coset representatives of k/h; maps M^H into M^K
Mat trace_map(const KGModule& m, const groups::Group& g, const Subgroup& h, const Subgroup& k);

struct BrauerQuotient {
    Mat fixed;         // rows: basis of M^P, ambient coordinates
    Mat traced;        // rows: sum of the proper trace images, ambient coordinates
    uint32_t dim = 0;  // dim M^P - dim traced
};
// Brauer construction at a p-subgroup (order a power of the coefficient
// prime); traces come from the maximal proper subgroups of P
BrauerQuotient brauer_quotient(const KGModule& m, const groups::SubgroupLattice& lat,
                               uint32_t p_sub_id);

// basis of kG-homs M -> N (as matrices N_dim x M_dim)
std::vector<Mat> hom_basis(const KGModule& m, const KGModule& n);
std::optional<Mat> iso_kgmod(const KGModule& m, const KGModule& n, uint64_t seed);

// Minimal cover data over a p-group: rad M = sum over generators s of
// im(act(s) - 1).
Mat radical_vectors(const KGModule& m);     // rows spanning rad(kG) M
std::vector<uint32_t> loewy_layers(const KGModule& m);

// Minimal free cover data over a p-group. The seed shuffles which lift of
// the top basis is used; everything downstream is independent of it up to
// isomorphism.
struct CoverData {
    KGModule free;    // (kG)^t, basis (copy, group element)
    Mat onto;         // m.d x free.d, the cover map
    KGModule kernel;  // the syzygy, action inherited through rows
    Mat rows;         // kernel.d x free.d, kernel basis inside the free module
};
CoverData minimal_cover(const KGModule& m, uint64_t seed);

// kernel of a minimal cover; p-groups only
KGModule syzygy(const KGModule& m, uint64_t seed);
KGModule syzygy_steps(const KGModule& m, uint32_t steps, uint64_t seed);

// Full indecomposable decomposition via primitive idempotents of End(M).
// Throws if the idempotent search exhausts its budget.
std::vector<KGModule> decompose(const KGModule& m, uint64_t seed = 0xB0C);

// End(M) as a structure-constant algebra together with the matrix basis
struct EndAlgebra {
    fdalg::AlgPtr alg;
    std::vector<Mat> basis;
};
EndAlgebra end_algebra(const KGModule& m);

}  // namespace mackeylab::kgmod
