#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mackeylab/kgmod.hpp"

using namespace mackeylab;
using namespace mackeylab::kgmod;
using ff::make_field;
using ff::Mat;

namespace {

// ---- oracles ---- //

// dim Hom(k[G/H], k[G/K]) and dim (k[G/H])^K both count double cosets;
// the lattice code computes those by plain orbit enumeration.
uint32_t dcount(const groups::Group& g, const Subgroup& h, const Subgroup& k) {
    return uint32_t(groups::double_cosets(g, h, k).rep.size());
}

// cosets gH fixed by every element of P, counted directly
uint32_t fixed_coset_count(const groups::Group& g, const Subgroup& h, const Subgroup& p) {
    auto reps = coset_reps(g, h);
    std::vector<uint32_t> coset_of(g.n, 0);
    for (uint32_t i = 0; i < reps.size(); ++i)
        for (uint32_t e : h.elems) coset_of[g.op(reps[i], e)] = i;
    uint32_t cnt = 0;
    for (uint32_t i = 0; i < reps.size(); ++i) {
        bool fix = true;
        for (uint32_t x : p.elems)
            if (coset_of[g.op(x, reps[i])] != i) fix = false;
        cnt += fix;
    }
    return cnt;
}

bool intertwines_everywhere(const Mat& t, const KGModule& m, const KGModule& n) {
    for (uint32_t s = 0; s < m.g->n; ++s)
        if (ff::mul(t, m.act[s]) != ff::mul(n.act[s], t)) return false;
    return true;
}

std::vector<uint32_t> dims_of(const std::vector<KGModule>& parts) {
    std::vector<uint32_t> d;
    for (const auto& p : parts) d.push_back(p.d);
    std::sort(d.begin(), d.end());
    return d;
}

uint32_t subgroup_of_order(const groups::SubgroupLattice& lat, uint32_t order) {
    for (uint32_t i = 0; i < lat.subgroups.size(); ++i)
        if (lat.subgroups[i].order() == order) return i;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("coset representatives partition the group") {
    auto g = groups::dihedral_group(8);
    auto lat = groups::subgroup_lattice(g);
    for (const auto& h : lat.subgroups) {
        auto reps = coset_reps(*g, h);
        CHECK(reps.size() * h.order() == g->n);
        std::vector<char> seen(g->n, 0);
        for (uint32_t r : reps)
            for (uint32_t e : h.elems) {
                uint32_t x = g->op(r, e);
                CHECK(!seen[x]);
                seen[x] = 1;
            }
    }
}

TEST_CASE("permutation modules act by permutation matrices") {
    auto g = groups::dihedral_group(6);
    auto lat = groups::subgroup_lattice(g);
    auto f2 = make_field(2);
    const auto& h = lat.subgroups[subgroup_of_order(lat, 2)];
    KGModule m = permutation_module(g, f2, h);
    CHECK(m.d == 3);
    for (uint32_t s = 0; s < g->n; ++s)
        for (uint32_t j = 0; j < m.d; ++j) {
            uint32_t colsum = 0;
            for (uint32_t i = 0; i < m.d; ++i) colsum += m.act[s].at(i, j);
            CHECK(colsum == 1);
        }
    // G/G is a point
    KGModule one = permutation_module(g, f2, lat.subgroups[lat.full_id()]);
    CHECK(one.d == 1);
    CHECK(one.act == trivial_module(g, f2).act);
    // G/1 is the regular module
    KGModule reg = permutation_module(g, f2, lat.subgroups[lat.trivial_id()]);
    CHECK(reg.act == regular_module(g, f2).act);
}

TEST_CASE("make_module accepts valid tables and rejects broken ones") {
    auto c2 = groups::cyclic_group(2);
    auto f3 = make_field(3);
    Mat sign(f3, 1, 1);
    sign.at(0, 0) = 2;
    KGModule m = make_module(c2, f3, {{1, sign}}, "sign");
    CHECK(m.d == 1);
    CHECK(m.act[1].at(0, 0) == 2);

    // g^2 = 1 but the image does not square to the identity
    auto f2 = make_field(2);
    Mat bad(f2, 2, 2);
    bad.at(0, 1) = 1;
    bad.at(1, 0) = 1;
    bad.at(1, 1) = 1;
    CHECK_THROWS_AS(make_module(c2, f2, {{1, bad}}, "bad"), std::invalid_argument);

    // image set that generates a proper subgroup only
    auto c4 = groups::cyclic_group(4);
    Mat one = Mat::identity(f2, 1);
    CHECK_THROWS_AS(make_module(c4, f2, {{2, one}}, "partial"), std::invalid_argument);

    // identity element must act as the identity
    Mat z(f2, 1, 1);
    CHECK_THROWS_AS(make_module(c2, f2, {{0, z}, {1, one}}, "drop"), std::invalid_argument);
}

TEST_CASE("hom dimensions match double coset counts") {
    auto f2 = make_field(2);
    for (const char* desc : {"dihedral:6", "dihedral:8", "cyclic:6"}) {
        auto g = groups::parse_group(desc);
        auto lat = groups::subgroup_lattice(g);
        for (const auto& h : lat.subgroups)
            for (const auto& k : lat.subgroups) {
                KGModule mh = permutation_module(g, f2, h);
                KGModule mk = permutation_module(g, f2, k);
                CHECK(hom_basis(mh, mk).size() == dcount(*g, h, k));
            }
    }
}

TEST_CASE("hom basis elements commute with every group element") {
    auto g = groups::dihedral_group(8);
    auto f2 = make_field(2);
    auto lat = groups::subgroup_lattice(g);
    KGModule m = permutation_module(g, f2, lat.subgroups[subgroup_of_order(lat, 2)]);
    KGModule n = regular_module(g, f2);
    for (const Mat& t : hom_basis(m, n)) CHECK(intertwines_everywhere(t, m, n));
    for (const Mat& t : hom_basis(n, m)) CHECK(intertwines_everywhere(t, n, m));
}

TEST_CASE("fixed points match orbit counts") {
    auto f3 = make_field(3);
    for (const char* desc : {"dihedral:6", "cyclic:6", "q8"}) {
        auto g = groups::parse_group(desc);
        auto lat = groups::subgroup_lattice(g);
        for (const auto& h : lat.subgroups)
            for (const auto& k : lat.subgroups) {
                KGModule m = permutation_module(g, f3, h);
                CHECK(fixed_points(m, k.elems).rows == dcount(*g, k, h));
            }
    }
    // the regular module of a p-group fixes only the norm line
    auto c4 = groups::cyclic_group(4);
    auto f2 = make_field(2);
    KGModule reg = regular_module(c4, f2);
    Mat fx = fixed_points(reg, {0, 1, 2, 3});
    REQUIRE(fx.rows == 1);
    for (uint32_t j = 0; j < 4; ++j) CHECK(fx.at(0, j) == 1);
}

TEST_CASE("trace map sums coset representatives") {
    auto c6 = groups::cyclic_group(6);
    auto lat = groups::subgroup_lattice(c6);
    uint32_t id2 = subgroup_of_order(lat, 2);
    uint32_t id6 = lat.full_id();
    // on the trivial module the trace is the index
    for (uint32_t p : {2u, 3u, 5u}) {
        KGModule t = trivial_module(c6, make_field(p));
        Mat tr = trace_map(t, *c6, lat.subgroups[id2], lat.subgroups[id6]);
        CHECK(tr.at(0, 0) == 3 % p);
    }
}

TEST_CASE("dual is involutive and fixes permutation modules") {
    auto g = groups::dihedral_group(8);
    auto f2 = make_field(2);
    auto lat = groups::subgroup_lattice(g);
    KGModule m = permutation_module(g, f2, lat.subgroups[subgroup_of_order(lat, 2)]);
    CHECK(dual(dual(m)).act == m.act);
    // permutation matrices are orthogonal, so the dual is equal on the nose
    CHECK(dual(m).act == m.act);
    // a non-self-dual action: sign-twisted line over F_3
    auto c4 = groups::cyclic_group(4);
    auto f5 = make_field(5);
    Mat i2(f5, 1, 1);
    i2.at(0, 0) = 2;  // order 4 in F_5
    KGModule line = make_module(c4, f5, {{1, i2}}, "line");
    CHECK(dual(line).act[1].at(0, 0) == 3);
    CHECK(dual(dual(line)).act == line.act);
}

TEST_CASE("induction from the trivial subgroup is the regular module") {
    auto g = groups::dihedral_group(6);
    auto f2 = make_field(2);
    auto lat = groups::subgroup_lattice(g);
    const auto& triv = lat.subgroups[lat.trivial_id()];
    auto hg = groups::subgroup_as_group(g, triv);
    KGModule ind = induce(g, f2, triv, hg, trivial_module(hg.grp, f2));
    CHECK(ind.d == g->n);
    CHECK(iso_kgmod(ind, regular_module(g, f2), 7).has_value());
}

TEST_CASE("induced trivial modules are coset permutation modules") {
    auto f2 = make_field(2);
    for (const char* desc : {"dihedral:8", "dihedral:6", "cyclic:4"}) {
        auto g = groups::parse_group(desc);
        auto lat = groups::subgroup_lattice(g);
        for (const auto& h : lat.subgroups) {
            auto hg = groups::subgroup_as_group(g, h);
            KGModule ind = induce(g, f2, h, hg, trivial_module(hg.grp, f2));
            KGModule perm = permutation_module(g, f2, h);
            REQUIRE(ind.d == perm.d);
            auto t = iso_kgmod(ind, perm, 11);
            REQUIRE(t.has_value());
            CHECK(intertwines_everywhere(*t, ind, perm));
            CHECK(ff::is_invertible(*t));
        }
    }
}

TEST_CASE("restriction of the regular module is free") {
    auto c4 = groups::cyclic_group(4);
    auto f2 = make_field(2);
    auto lat = groups::subgroup_lattice(c4);
    const auto& h = lat.subgroups[subgroup_of_order(lat, 2)];
    auto hg = groups::subgroup_as_group(c4, h);
    KGModule res = restrict_to(regular_module(c4, f2), hg);
    auto parts = decompose(res);
    CHECK(dims_of(parts) == std::vector<uint32_t>{2, 2});
    for (const auto& p : parts) CHECK(iso_kgmod(p, regular_module(hg.grp, f2), 3).has_value());
}

TEST_CASE("radical vectors and loewy layers over p-groups") {
    auto f2 = make_field(2);
    auto klein = groups::dihedral_group(4);
    KGModule reg = regular_module(klein, f2);
    CHECK(radical_vectors(reg).rows == 3);
    CHECK(loewy_layers(reg) == std::vector<uint32_t>{1, 2, 1});
    CHECK(loewy_layers(trivial_module(klein, f2)) == std::vector<uint32_t>{1});

    auto c4 = groups::cyclic_group(4);
    CHECK(loewy_layers(regular_module(c4, f2)) == std::vector<uint32_t>{1, 1, 1, 1});

    auto c3c3 = groups::product_group(groups::cyclic_group(3), groups::cyclic_group(3));
    auto f3 = make_field(3);
    CHECK(loewy_layers(regular_module(c3c3, f3)) == std::vector<uint32_t>{1, 2, 3, 2, 1});

    // not defined away from p-groups
    auto c6 = groups::cyclic_group(6);
    CHECK_THROWS_AS(radical_vectors(regular_module(c6, f2)), std::invalid_argument);
}

TEST_CASE("syzygy of a free module vanishes") {
    auto f2 = make_field(2);
    auto klein = groups::dihedral_group(4);
    CHECK(syzygy(regular_module(klein, f2), 5).d == 0);
    auto q8 = groups::quaternion_group();
    KGModule free2 = direct_sum(regular_module(q8, f2), regular_module(q8, f2));
    CHECK(syzygy(free2, 5).d == 0);
}

TEST_CASE("syzygy dimensions of the trivial module") {
    // first kernel is the augmentation ideal; the second needs one copy of
    // kG per independent generator of G, so dim = rank * |G| - (|G| - 1)
    struct Row {
        const char* desc;
        uint32_t p;
        uint32_t omega1, omega2;
    };
    const Row rows[] = {
        {"cyclic:4", 2, 3, 1},
        {"dihedral:4", 2, 3, 5},
        {"dihedral:8", 2, 7, 9},
        {"q8", 2, 7, 9},
        {"prod(cyclic:4,cyclic:2)", 2, 7, 9},
        {"prod(cyclic:3,cyclic:3)", 3, 8, 10},
    };
    for (const auto& r : rows) {
        CAPTURE(r.desc);
        auto g = groups::parse_group(r.desc);
        auto f = make_field(r.p);
        KGModule o1 = syzygy(trivial_module(g, f), 1);
        CHECK(o1.d == r.omega1);
        KGModule o2 = syzygy(o1, 1);
        CHECK(o2.d == r.omega2);
    }
}

TEST_CASE("omega-squared loewy layers") {
    auto f3 = make_field(3);
    auto c3c3 = groups::product_group(groups::cyclic_group(3), groups::cyclic_group(3));
    KGModule o2 = syzygy_steps(trivial_module(c3c3, f3), 2, 9);
    REQUIRE(o2.d == 10);
    CHECK(loewy_layers(o2) == std::vector<uint32_t>{3, 2, 3, 2});

    auto f2 = make_field(2);
    auto klein = groups::dihedral_group(4);
    KGModule k2 = syzygy_steps(trivial_module(klein, f2), 2, 9);
    REQUIRE(k2.d == 5);
    CHECK(loewy_layers(k2) == std::vector<uint32_t>{3, 2});
}

TEST_CASE("cyclic syzygies are periodic") {
    auto c4 = groups::cyclic_group(4);
    auto f2 = make_field(2);
    KGModule triv = trivial_module(c4, f2);
    KGModule o2 = syzygy_steps(triv, 2, 1);
    REQUIRE(o2.d == 1);
    CHECK(iso_kgmod(o2, triv, 2).has_value());
    KGModule o3 = syzygy(o2, 1);
    CHECK(iso_kgmod(o3, syzygy(triv, 4), 2).has_value());
}

TEST_CASE("syzygy is seed independent up to isomorphism") {
    auto klein = groups::dihedral_group(4);
    auto f2 = make_field(2);
    KGModule triv = trivial_module(klein, f2);
    KGModule a = syzygy_steps(triv, 2, 1);
    KGModule b = syzygy_steps(triv, 2, 22);
    KGModule c = syzygy_steps(triv, 2, 333);
    REQUIRE(a.d == 5);
    CHECK(b.d == 5);
    CHECK(c.d == 5);
    CHECK(iso_kgmod(a, b, 17).has_value());
    CHECK(iso_kgmod(a, c, 17).has_value());
}

TEST_CASE("restricting omega-squared to a klein subgroup") {
    auto g = groups::product_group(groups::cyclic_group(4), groups::cyclic_group(2));
    auto f2 = make_field(2);
    auto lat = groups::subgroup_lattice(g);
    uint32_t kid = UINT32_MAX;
    for (uint32_t i = 0; i < lat.subgroups.size(); ++i) {
        const auto& s = lat.subgroups[i];
        if (s.order() != 4) continue;
        bool flat = true;
        for (uint32_t e : s.elems)
            if (g->order_of(e) > 2) flat = false;
        if (flat) kid = i;
    }
    REQUIRE(kid != UINT32_MAX);
    auto hg = groups::subgroup_as_group(g, lat.subgroups[kid]);

    KGModule o2 = syzygy_steps(trivial_module(g, f2), 2, 6);
    REQUIRE(o2.d == 9);
    auto parts = decompose(restrict_to(o2, hg));
    REQUIRE(dims_of(parts) == std::vector<uint32_t>{4, 5});
    std::sort(parts.begin(), parts.end(),
              [](const KGModule& x, const KGModule& y) { return x.d < y.d; });
    CHECK(iso_kgmod(parts[0], regular_module(hg.grp, f2), 13).has_value());
    KGModule o2_sub = syzygy_steps(trivial_module(hg.grp, f2), 2, 6);
    CHECK(iso_kgmod(parts[1], o2_sub, 13).has_value());
}

TEST_CASE("restricting omega-squared to a cyclic subgroup of q8") {
    auto q8 = groups::quaternion_group();
    auto f2 = make_field(2);
    auto lat = groups::subgroup_lattice(q8);
    // every order-4 subgroup of Q_8 is cyclic
    auto hg = groups::subgroup_as_group(q8, lat.subgroups[subgroup_of_order(lat, 4)]);

    KGModule o2 = syzygy_steps(trivial_module(q8, f2), 2, 6);
    REQUIRE(o2.d == 9);
    auto parts = decompose(restrict_to(o2, hg));
    REQUIRE(dims_of(parts) == std::vector<uint32_t>{1, 4, 4});
    std::sort(parts.begin(), parts.end(),
              [](const KGModule& x, const KGModule& y) { return x.d < y.d; });
    CHECK(iso_kgmod(parts[0], trivial_module(hg.grp, f2), 13).has_value());
    CHECK(iso_kgmod(parts[1], regular_module(hg.grp, f2), 13).has_value());
    CHECK(iso_kgmod(parts[2], regular_module(hg.grp, f2), 13).has_value());
}

TEST_CASE("brauer quotient of permutation modules counts fixed cosets") {
    auto f2 = make_field(2);
    for (const char* desc : {"dihedral:8", "cyclic:6", "dihedral:4"}) {
        auto g = groups::parse_group(desc);
        auto lat = groups::subgroup_lattice(g);
        for (uint32_t pid = 0; pid < lat.subgroups.size(); ++pid) {
            uint32_t o = lat.subgroups[pid].order();
            while (o % 2 == 0) o /= 2;
            if (o != 1) continue;
            for (const auto& h : lat.subgroups) {
                KGModule m = permutation_module(g, f2, h);
                auto bq = brauer_quotient(m, lat, pid);
                CHECK(bq.dim == fixed_coset_count(*g, h, lat.subgroups[pid]));
            }
        }
    }
}

TEST_CASE("brauer quotient pinned values") {
    auto f2 = make_field(2);
    auto klein = groups::dihedral_group(4);
    auto lat = groups::subgroup_lattice(klein);
    KGModule reg = regular_module(klein, f2);
    // free modules die at every nontrivial p-subgroup
    for (uint32_t pid = 1; pid < lat.subgroups.size(); ++pid)
        CHECK(brauer_quotient(reg, lat, pid).dim == 0);
    CHECK(brauer_quotient(reg, lat, lat.trivial_id()).dim == 4);
    // the trivial module survives everywhere
    KGModule triv = trivial_module(klein, f2);
    for (uint32_t pid = 0; pid < lat.subgroups.size(); ++pid)
        CHECK(brauer_quotient(triv, lat, pid).dim == 1);
    // k[G/H] at H itself keeps the fixed cosets, two of them here
    uint32_t h2 = subgroup_of_order(lat, 2);
    KGModule perm = permutation_module(klein, f2, lat.subgroups[h2]);
    CHECK(brauer_quotient(perm, lat, h2).dim == 2);
    // odd-order subgroups are rejected
    auto c6 = groups::cyclic_group(6);
    auto lat6 = groups::subgroup_lattice(c6);
    KGModule t6 = trivial_module(c6, f2);
    CHECK_THROWS_AS(brauer_quotient(t6, lat6, subgroup_of_order(lat6, 3)),
                    std::invalid_argument);
}

TEST_CASE("end algebra of the regular module has group order dimension") {
    auto f2 = make_field(2);
    for (const char* desc : {"cyclic:6", "dihedral:6", "dihedral:4"}) {
        auto g = groups::parse_group(desc);
        EndAlgebra ea = end_algebra(regular_module(g, f2));
        CHECK(ea.alg->n == g->n);
    }
    auto c2 = groups::cyclic_group(2);
    CHECK(end_algebra(trivial_module(c2, f2)).alg->n == 1);
}

TEST_CASE("decompose splits regular modules into their blocks") {
    auto f2 = make_field(2);
    auto c3 = groups::cyclic_group(3);
    CHECK(dims_of(decompose(regular_module(c3, f2))) == std::vector<uint32_t>{1, 2});
    auto c6 = groups::cyclic_group(6);
    CHECK(dims_of(decompose(regular_module(c6, f2))) == std::vector<uint32_t>{2, 4});
    auto s3 = groups::dihedral_group(6);
    CHECK(dims_of(decompose(regular_module(s3, f2))) == std::vector<uint32_t>{2, 2, 2});
    // local endomorphism ring: nothing to split
    auto klein = groups::dihedral_group(4);
    CHECK(dims_of(decompose(regular_module(klein, f2))) == std::vector<uint32_t>{4});
}

TEST_CASE("decompose handles repeated summands") {
    auto c2 = groups::cyclic_group(2);
    auto f2 = make_field(2);
    KGModule two = direct_sum(trivial_module(c2, f2), trivial_module(c2, f2));
    CHECK(dims_of(decompose(two)) == std::vector<uint32_t>{1, 1});
    KGModule mix = direct_sum(trivial_module(c2, f2), regular_module(c2, f2));
    auto parts = decompose(mix);
    REQUIRE(dims_of(parts) == std::vector<uint32_t>{1, 2});
}

TEST_CASE("decompose is stable across seeds") {
    auto c6 = groups::cyclic_group(6);
    auto f2 = make_field(2);
    KGModule reg = regular_module(c6, f2);
    for (uint64_t seed : {1ull, 99ull, 31337ull})
        CHECK(dims_of(decompose(reg, seed)) == std::vector<uint32_t>{2, 4});
}

TEST_CASE("decompose parts reassemble to the original module") {
    auto s3 = groups::dihedral_group(6);
    auto f2 = make_field(2);
    KGModule reg = regular_module(s3, f2);
    auto parts = decompose(reg);
    REQUIRE(!parts.empty());
    KGModule glued = parts[0];
    for (uint32_t i = 1; i < parts.size(); ++i) glued = direct_sum(glued, parts[i]);
    CHECK(iso_kgmod(glued, reg, 23).has_value());
}
