#pragma once
// Finite groups as explicit multiplication tables (identity = element 0),
// subgroup lattices, double cosets, Sylow structure and the structural
// predictions driven by the Sylow shape.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mackeylab::groups {

struct Group {
    uint32_t n = 1;
    std::vector<uint32_t> table;  // table[a*n+b] = a*b
    std::vector<uint32_t> inverse;
    std::vector<uint32_t> gens;   // preferred generating set
    std::string descriptor;

    uint32_t op(uint32_t a, uint32_t b) const { return table[size_t(a) * n + b]; }
    uint32_t inv(uint32_t a) const { return inverse[a]; }
    uint32_t conj(uint32_t g, uint32_t x) const { return op(op(g, x), inv(g)); }
    uint32_t order_of(uint32_t g) const;
    uint32_t exponent() const;
    bool is_abelian() const;
    // number of elements of each order, as a sorted (order, count) list
    std::vector<std::pair<uint32_t, uint32_t>> order_profile() const;
};

using GroupPtr = std::shared_ptr<const Group>;

// Constructors.  All verify the group axioms on the full table and throw
// std::invalid_argument on violation; order cap 64.
GroupPtr cyclic_group(uint32_t n);
GroupPtr dihedral_group(uint32_t order);     // order >= 4, even; dihedral:4 is the Klein group
GroupPtr quaternion_group();                 // Q_8
GroupPtr product_group(const GroupPtr& a, const GroupPtr& b);
GroupPtr group_from_table(uint32_t n, std::vector<uint32_t> table, std::string descriptor);

// descriptor mini-language: cyclic:N | dihedral:N | q8 | prod(D1,D2)
GroupPtr parse_group(const std::string& descriptor);

// closure of a generating set, as a sorted element list
std::vector<uint32_t> closure(const Group& g, std::vector<uint32_t> gens);

struct Subgroup {
    std::vector<uint32_t> elems;  // sorted, elems[0] == 0
    uint32_t id = 0;              // index into the lattice order
    bool contains(uint32_t x) const;
    uint32_t order() const { return uint32_t(elems.size()); }
};

struct SubgroupLattice {
    GroupPtr g;
    std::vector<Subgroup> subgroups;        // sorted by (order, elems lex); id = index
    std::vector<uint32_t> class_of;         // conjugacy class index per subgroup
    std::vector<uint32_t> class_rep;        // least subgroup id per class
    std::vector<std::vector<bool>> leq;     // leq[a][b]: subgroup a contained in b

    uint32_t find(const std::vector<uint32_t>& elems) const;  // id, throws if absent
    uint32_t trivial_id() const { return 0; }
    uint32_t full_id() const { return uint32_t(subgroups.size() - 1); }
    std::vector<uint32_t> maximal_proper_in(uint32_t id) const;
    bool is_normal(uint32_t id) const;
    uint32_t normalizer(uint32_t id) const;  // subgroup id of N_G(H)
    uint32_t conjugate_subgroup(uint32_t id, uint32_t by) const;
};

// Enumerates every subgroup: cyclic subgroups first, then closure under
// pairwise joins until stable.  Order cap 64.
SubgroupLattice subgroup_lattice(const GroupPtr& g);

// small generating set of a subgroup (greedy by descending element order)
std::vector<uint32_t> subgroup_generators(const Group& g, const Subgroup& h);

// the subgroup as a group in its own right (elements re-indexed by position
// in h.elems) plus the element map new -> old
struct InducedGroup {
    GroupPtr grp;
    std::vector<uint32_t> to_parent;
};
InducedGroup subgroup_as_group(const GroupPtr& g, const Subgroup& h);

struct DoubleCosets {
    std::vector<uint32_t> rep;              // least element per coset, ascending
    std::vector<uint32_t> size;
    std::vector<uint32_t> coset_of;         // per group element
};
DoubleCosets double_cosets(const Group& g, const Subgroup& h, const Subgroup& k);

// exhaustive generator-image backtracking; intended for order <= 16 but
// works (slowly) beyond
bool isomorphic(const Group& a, const Group& b);

// canonical-ish name: matches cyclic/dihedral/quaternion/products catalog,
// falls back to an order+profile tag.  Isomorphic inputs get equal labels
// (within the catalog range, order <= 16).
std::string iso_label(const GroupPtr& g);

enum class SylowShape { order_invertible, cyclic, dihedral, other };

struct SylowReport {
    SylowShape shape;
    uint32_t sylow_id = 0;                  // subgroup id in the lattice (trivial if invertible)
    std::optional<uint32_t> witness_id;     // subgroup of the Sylow witnessing "other"
    std::string witness_label;              // C_pxC_p, C_2xC_4, Q_8, or C_2^3
};

// Shape of a Sylow p-subgroup; for shape == other a witness subgroup
// isomorphic to C_p x C_p (p odd) or one of C_2xC_4, Q_8, C_2^3 (p = 2) is
// attached.  The Klein group counts as dihedral.
SylowReport sylow_shape(const SubgroupLattice& lat, uint32_t p);

// largest rank of an elementary abelian p-subquotient H/N, N normal in H
struct TambaraRank {
    uint32_t rank = 0;
    uint32_t h_id = 0, n_id = 0;  // witness pair
};
TambaraRank tambara_rank(const SubgroupLattice& lat, uint32_t p);

struct Prediction {
    bool gorenstein_over_fp;
    bool finite_gldim_over_fp;
    bool finite_gldim_over_z;
};
// Structure-level prediction from Sylow shapes alone:
//   gorenstein_over_fp:   Sylow_p cyclic or (p = 2 and dihedral), or p invertible
//   finite_gldim_over_fp: p invertible, or p = 2 and Sylow cyclic of order 2
//   finite_gldim_over_z:  for every prime q | |G|, Sylow_q cyclic (q odd) or
//                         cyclic/dihedral (q = 2)
Prediction predict(const SubgroupLattice& lat, uint32_t p);

}  // namespace mackeylab::groups
