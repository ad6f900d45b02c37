#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mackeylab/comack.hpp"
#include "mackeylab/fdalg.hpp"
#include "mackeylab/group.hpp"
#include "mackeylab/kgmod.hpp"

// The full Mackey algebra by linearized spans: a basis element is a triple
// (middle subgroup L, point x of G/H, point y of G/K) with L inside
// Stab(x) and Stab(y), taken up to simultaneous translation.  Composition
// pulls two spans back over the shared leg and decomposes the pullback
// into orbits, so the Mackey formula is computed, never transcribed.

namespace mackeylab::mackey {

using ff::Fp;
using ff::Mat;
using groups::GroupPtr;

struct Span {
    uint32_t h = 0, k = 0;    // subgroup ids of the two feet
    uint32_t x = 0, y = 0;    // coset indexes in G/H and G/K
    uint32_t mid = 0;         // subgroup id of the middle group
};

struct MackeyAlgebra {
    GroupPtr g;
    Fp f;
    groups::SubgroupLattice lat;
    std::vector<std::vector<uint32_t>> reps;      // coset reps per subgroup
    std::vector<std::vector<uint32_t>> coset_of;  // element -> coset index, per subgroup
    std::vector<Span> spans;                      // canonical form, basis order
    std::vector<std::string> labels;              // subgroup labels, order with tie suffix
    fdalg::AlgPtr alg;

    // canonicalizes the triple and returns its basis index
    uint32_t span_index(uint32_t mid, uint32_t h, uint32_t x, uint32_t k, uint32_t y) const;
    uint32_t transfer(uint32_t h, uint32_t l) const;     // t^H_L, needs L <= H
    uint32_t restriction(uint32_t h, uint32_t l) const;  // r^H_L
};
using MackeyPtr = std::shared_ptr<const MackeyAlgebra>;

// |G| <= 8; the result is graded over all subgroups with the identity
// spans as the family idempotents
MackeyPtr build_mackey(const GroupPtr& g, uint32_t p);

// A Mackey functor is a module over the algebra; evaluations are the
// components cut out by the identity spans.
using MackeyModule = fdalg::AModule;

// the quotient acting on fixed points of the sum of all coset modules,
// identified inside the endomorphism ring of that sum
struct CohQuotient {
    comack::ContextPtr yoshida;  // all-subgroups context; member t = subgroup id t
    Mat to_yoshida;              // row per span: its image in yoshida coordinates
    uint32_t image_dim = 0;
    uint32_t kernel_dim = 0;
};
CohQuotient cohomological_quotient(const MackeyPtr& mu);

// evaluations U^H, spans acting by trace after translation
MackeyModule fixed_point_mackey_module(const MackeyPtr& mu, const kgmod::KGModule& u);

// one module per isomorphism class of projective indecomposables
std::vector<MackeyModule> pim_modules(const MackeyPtr& mu, uint64_t seed = 0xB0C);

// the (1,1) corner is the group algebra; evaluation at the trivial
// subgroup with the corner acting is a kG-module
kgmod::KGModule evaluation_at_one(const MackeyPtr& mu, const MackeyModule& m);

struct SplitMonoReport {
    uint32_t sampled = 0;
    uint32_t injective_found = 0;
    bool all_split = true;
    std::string counterexample;  // empty means none
};
// random maps between random direct sums of projectives (multiplicities
// at most two); every injective sample must admit a retraction
SplitMonoReport split_mono_probe(const GroupPtr& g, uint32_t p, uint32_t trials,
                                 uint64_t seed = 0xB0C);

struct BrauerRow {
    uint32_t pim = 0;
    uint32_t sub = 0;
    uint32_t residue_dim = 0;  // X(H) modulo proper transfers
    uint32_t brauer_dim = 0;   // Brauer quotient of X(1) at H
};
struct BrauerReport {
    std::vector<BrauerRow> rows;
    bool all_equal = true;
};
// p-groups only: compares the transfer residue of each projective at each
// subgroup with the Brauer quotient of its evaluation at the bottom
BrauerReport brauer_identity_check(const GroupPtr& g, uint32_t p, uint64_t seed = 0xB0C);

}  // namespace mackeylab::mackey
