#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "mackeylab/group.hpp"
#include "oracles.hpp"

using namespace mackeylab::groups;

namespace {

using Profile = std::vector<std::pair<uint32_t, uint32_t>>;

const Subgroup& by_elems(const SubgroupLattice& lat, std::vector<uint32_t> elems) {
    return lat.subgroups[lat.find(elems)];
}

}  // namespace

TEST_CASE("cyclic group basics") {
    auto g = cyclic_group(6);
    CHECK(g->n == 6);
    CHECK(g->op(2, 5) == 1);
    CHECK(g->inv(2) == 4);
    CHECK(g->order_of(2) == 3);
    CHECK(g->order_of(1) == 6);
    CHECK(g->exponent() == 6);
    CHECK(g->is_abelian());
    CHECK(g->descriptor == "cyclic:6");
}

TEST_CASE("table verification rejects broken tables") {
    auto g = cyclic_group(6);
    auto t = g->table;
    t[1 * 6 + 2] = 0;  // 1*2 = e while 2*1 stays 3
    CHECK_THROWS_AS(group_from_table(6, t, "broken"), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_group(0), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_group(65), std::invalid_argument);
    CHECK_THROWS_AS(dihedral_group(7), std::invalid_argument);
    CHECK_THROWS_AS(dihedral_group(2), std::invalid_argument);
}

TEST_CASE("quaternion group") {
    auto q = quaternion_group();
    CHECK(q->order_profile() == Profile{{1, 1}, {2, 1}, {4, 6}});
    CHECK_FALSE(q->is_abelian());
    CHECK(q->inv(2) == 3);       // i^-1 = -i
    CHECK(q->op(2, 4) == 6);     // ij = k
    CHECK(q->op(4, 2) == 7);     // ji = -k
    CHECK(q->op(2, 2) == 1);     // i^2 = -1
    CHECK(q->exponent() == 4);
}

TEST_CASE("dihedral groups") {
    auto d8 = dihedral_group(8);
    CHECK(d8->order_of(1) == 4);            // rotation
    CHECK(d8->order_of(4) == 2);            // reflection
    CHECK(d8->conj(4, 1) == 3);             // s r s = r^-1
    CHECK_FALSE(d8->is_abelian());
    CHECK(d8->order_profile() == Profile{{1, 1}, {2, 5}, {4, 2}});

    auto klein = dihedral_group(4);
    CHECK(klein->is_abelian());
    CHECK(klein->order_profile() == Profile{{1, 1}, {2, 3}});
}

TEST_CASE("products and parsing") {
    auto g = parse_group("prod(cyclic:2,cyclic:4)");
    CHECK(g->n == 8);
    CHECK(g->is_abelian());
    CHECK(g->order_profile() == Profile{{1, 1}, {2, 3}, {4, 4}});
    CHECK(g->descriptor == "prod(cyclic:2,cyclic:4)");
    CHECK(parse_group("q8")->n == 8);
    CHECK(parse_group("prod(prod(cyclic:2,cyclic:2),cyclic:2)")->n == 8);
    CHECK_THROWS(parse_group("frobnicate"));
    CHECK_THROWS(parse_group("prod(cyclic:2"));
    CHECK_THROWS(parse_group("cyclic:-3"));
}

TEST_CASE("closure agrees with pairwise saturation") {
    std::mt19937_64 rng(31);
    auto d12 = dihedral_group(12);
    auto q8 = quaternion_group();
    for (int it = 0; it < 25; ++it) {
        std::vector<uint32_t> gens{uint32_t(rng() % d12->n), uint32_t(rng() % d12->n)};
        CHECK(closure(*d12, gens) == oracle::closure_pairwise(*d12, gens));
    }
    for (uint32_t a = 0; a < q8->n; ++a)
        for (uint32_t b = 0; b < q8->n; ++b)
            CHECK(closure(*q8, {a, b}) == oracle::closure_pairwise(*q8, {a, b}));
}

TEST_CASE("subgroup lattice sizes") {
    auto count = [](const char* d) {
        return subgroup_lattice(parse_group(d)).subgroups.size();
    };
    CHECK(count("cyclic:4") == 3);
    CHECK(count("cyclic:6") == 4);
    CHECK(count("cyclic:12") == 6);
    CHECK(count("dihedral:4") == 5);
    CHECK(count("dihedral:6") == 6);
    CHECK(count("dihedral:8") == 10);
    CHECK(count("dihedral:12") == 16);
    CHECK(count("q8") == 6);
    CHECK(count("prod(cyclic:2,cyclic:4)") == 8);
    CHECK(count("prod(prod(cyclic:2,cyclic:2),cyclic:2)") == 16);
    CHECK(count("prod(cyclic:3,cyclic:3)") == 6);
}

TEST_CASE("lattice order, containment, classes") {
    auto lat = subgroup_lattice(dihedral_group(8));
    REQUIRE(lat.subgroups.size() == 10);
    CHECK(lat.subgroups[lat.trivial_id()].order() == 1);
    CHECK(lat.subgroups[lat.full_id()].order() == 8);
    for (uint32_t i = 0; i < lat.subgroups.size(); ++i) {
        CHECK(lat.leq[lat.trivial_id()][i]);
        CHECK(lat.leq[i][lat.full_id()]);
        // ids ordered by size
        if (i) CHECK(lat.subgroups[i - 1].order() <= lat.subgroups[i].order());
    }

    // D_8 has 8 conjugacy classes of subgroups
    CHECK(lat.class_rep.size() == 8);
    uint32_t s0 = lat.find({0, 4}), s2 = lat.find({0, 6}), s1 = lat.find({0, 5});
    CHECK(lat.class_of[s0] == lat.class_of[s2]);
    CHECK(lat.class_of[s0] != lat.class_of[s1]);

    // center is normal, a reflection subgroup is not
    CHECK(lat.is_normal(lat.find({0, 2})));
    CHECK_FALSE(lat.is_normal(s0));
    CHECK(lat.subgroups[lat.normalizer(s0)].elems == std::vector<uint32_t>{0, 2, 4, 6});

    auto maximal = lat.maximal_proper_in(lat.full_id());
    CHECK(maximal.size() == 3);
    for (uint32_t id : maximal) CHECK(lat.subgroups[id].order() == 4);

    auto lat12 = subgroup_lattice(dihedral_group(12));
    CHECK(lat12.class_rep.size() == 10);
}

TEST_CASE("subgroup generators and induced groups") {
    for (const char* d : {"dihedral:8", "q8", "prod(prod(cyclic:2,cyclic:2),cyclic:2)"}) {
        auto g = parse_group(d);
        auto lat = subgroup_lattice(g);
        for (const auto& s : lat.subgroups) {
            auto gens = subgroup_generators(*g, s);
            CHECK(closure(*g, gens) == s.elems);
            CHECK(gens.size() <= 3);
        }
    }
    auto d8 = dihedral_group(8);
    auto lat = subgroup_lattice(d8);
    auto ind = subgroup_as_group(d8, by_elems(lat, {0, 1, 2, 3}));
    CHECK(isomorphic(*ind.grp, *cyclic_group(4)));
    CHECK(ind.to_parent == std::vector<uint32_t>{0, 1, 2, 3});
}

TEST_CASE("double cosets") {
    auto d8 = dihedral_group(8);
    auto lat = subgroup_lattice(d8);
    const Subgroup& s = by_elems(lat, {0, 4});

    auto dc = double_cosets(*d8, s, s);
    CHECK(dc.rep == std::vector<uint32_t>{0, 1, 2});
    CHECK(dc.size == std::vector<uint32_t>{2, 4, 2});

    const Subgroup& c4 = by_elems(lat, {0, 1, 2, 3});
    auto dc2 = double_cosets(*d8, c4, s);
    CHECK(dc2.rep == std::vector<uint32_t>{0});
    CHECK(dc2.size == std::vector<uint32_t>{8});

    // partition + orbit-size identity on several (H, K) pairs
    std::mt19937_64 rng(32);
    for (const char* d : {"dihedral:8", "dihedral:12", "q8", "prod(cyclic:2,cyclic:4)"}) {
        auto g = parse_group(d);
        auto l = subgroup_lattice(g);
        for (int it = 0; it < 8; ++it) {
            const Subgroup& h = l.subgroups[rng() % l.subgroups.size()];
            const Subgroup& k = l.subgroups[rng() % l.subgroups.size()];
            auto cosets = double_cosets(*g, h, k);
            uint32_t total = 0;
            for (uint32_t id = 0; id < cosets.rep.size(); ++id) {
                auto expect = oracle::double_coset_set(*g, h, cosets.rep[id], k);
                std::set<uint32_t> got;
                for (uint32_t x = 0; x < g->n; ++x)
                    if (cosets.coset_of[x] == id) got.insert(x);
                CHECK(got == expect);
                CHECK(cosets.size[id] == expect.size());
                total += cosets.size[id];

                // |H x K| = |H||K| / |K meet x^-1 H x|
                uint32_t meet = 0;
                for (uint32_t y : k.elems)
                    if (h.contains(g->conj(cosets.rep[id], y))) ++meet;
                CHECK(cosets.size[id] * meet == h.order() * k.order());
            }
            CHECK(total == g->n);
        }
    }
}

TEST_CASE("isomorphism testing") {
    CHECK(isomorphic(*parse_group("prod(cyclic:2,cyclic:3)"), *cyclic_group(6)));
    CHECK(isomorphic(*parse_group("prod(cyclic:2,cyclic:2)"), *dihedral_group(4)));
    CHECK(isomorphic(*parse_group("prod(cyclic:4,cyclic:3)"), *cyclic_group(12)));
    CHECK_FALSE(isomorphic(*cyclic_group(4), *dihedral_group(4)));
    CHECK_FALSE(isomorphic(*quaternion_group(), *dihedral_group(8)));
    CHECK_FALSE(isomorphic(*parse_group("prod(cyclic:2,cyclic:6)"), *cyclic_group(12)));
    CHECK_FALSE(isomorphic(*cyclic_group(6), *dihedral_group(6)));
    CHECK(isomorphic(*parse_group("prod(cyclic:2,q8)"), *parse_group("prod(q8,cyclic:2)")));
}

TEST_CASE("iso_label") {
    CHECK(iso_label(cyclic_group(1)) == "1");
    CHECK(iso_label(parse_group("prod(cyclic:2,cyclic:3)")) == "C6");
    CHECK(iso_label(dihedral_group(4)) == "C2xC2");
    CHECK(iso_label(parse_group("prod(cyclic:2,cyclic:2)")) == "C2xC2");
    CHECK(iso_label(dihedral_group(6)) == "D6");
    CHECK(iso_label(dihedral_group(8)) == "D8");
    CHECK(iso_label(quaternion_group()) == "Q8");
    CHECK(iso_label(parse_group("prod(cyclic:2,cyclic:4)")) == "C2xC4");
    CHECK(iso_label(parse_group("prod(prod(cyclic:2,cyclic:2),cyclic:2)")) == "C2^3");
    CHECK(iso_label(parse_group("prod(cyclic:3,cyclic:3)")) == "C3xC3");
    CHECK(iso_label(parse_group("prod(cyclic:4,cyclic:3)")) == "C12");
    CHECK(iso_label(parse_group("prod(cyclic:2,cyclic:6)")) == "C2xC6");
    CHECK(iso_label(dihedral_group(12)) == "D12");
}

TEST_CASE("sylow shapes") {
    auto shape = [](const char* d, uint32_t p) {
        auto lat = subgroup_lattice(parse_group(d));
        return sylow_shape(lat, p);
    };
    CHECK(shape("cyclic:3", 2).shape == SylowShape::order_invertible);
    CHECK(shape("cyclic:6", 2).shape == SylowShape::cyclic);
    CHECK(shape("cyclic:4", 2).shape == SylowShape::cyclic);
    CHECK(shape("dihedral:6", 3).shape == SylowShape::cyclic);
    CHECK(shape("dihedral:4", 2).shape == SylowShape::dihedral);
    CHECK(shape("dihedral:8", 2).shape == SylowShape::dihedral);
    CHECK(shape("dihedral:12", 2).shape == SylowShape::dihedral);

    auto r = shape("q8", 2);
    CHECK(r.shape == SylowShape::other);
    CHECK(r.witness_label == "Q_8");

    r = shape("prod(cyclic:2,cyclic:4)", 2);
    CHECK(r.shape == SylowShape::other);
    CHECK(r.witness_label == "C_2xC_4");

    r = shape("prod(prod(cyclic:2,cyclic:2),cyclic:2)", 2);
    CHECK(r.shape == SylowShape::other);
    CHECK(r.witness_label == "C_2^3");

    r = shape("prod(cyclic:3,cyclic:3)", 3);
    CHECK(r.shape == SylowShape::other);
    CHECK(r.witness_label == "C_3xC_3");
    REQUIRE(r.witness_id.has_value());
}

TEST_CASE("tambara rank") {
    auto rank_of = [](const char* d, uint32_t p) {
        auto g = parse_group(d);
        auto lat = subgroup_lattice(g);
        auto t = tambara_rank(lat, p);
        // witness sanity: |H| / |N| = p^rank
        uint32_t q = lat.subgroups[t.h_id].order() / lat.subgroups[t.n_id].order();
        uint32_t expect = 1;
        for (uint32_t i = 0; i < t.rank; ++i) expect *= p;
        CHECK(q == expect);
        return t.rank;
    };
    CHECK(rank_of("cyclic:1", 2) == 0);
    CHECK(rank_of("cyclic:6", 2) == 1);
    CHECK(rank_of("cyclic:9", 3) == 1);
    CHECK(rank_of("dihedral:4", 2) == 2);
    CHECK(rank_of("dihedral:8", 2) == 2);
    CHECK(rank_of("dihedral:12", 2) == 2);
    CHECK(rank_of("dihedral:12", 3) == 1);
    CHECK(rank_of("q8", 2) == 2);
    CHECK(rank_of("prod(cyclic:2,cyclic:4)", 2) == 2);
    CHECK(rank_of("prod(prod(cyclic:2,cyclic:2),cyclic:2)", 2) == 3);
    CHECK(rank_of("prod(cyclic:3,cyclic:3)", 3) == 2);
}

TEST_CASE("structural predictions") {
    auto pred = [](const char* d, uint32_t p) {
        auto lat = subgroup_lattice(parse_group(d));
        return predict(lat, p);
    };
    auto check = [&](const char* d, uint32_t p, bool gor, bool fp, bool z) {
        auto r = pred(d, p);
        CAPTURE(d);
        CAPTURE(p);
        CHECK(r.gorenstein_over_fp == gor);
        CHECK(r.finite_gldim_over_fp == fp);
        CHECK(r.finite_gldim_over_z == z);
    };
    check("cyclic:2", 2, true, true, true);
    check("cyclic:3", 2, true, true, true);
    check("cyclic:3", 3, true, false, true);
    check("cyclic:4", 2, true, false, true);
    check("cyclic:6", 2, true, true, true);
    check("dihedral:8", 2, true, false, true);
    check("dihedral:12", 2, true, false, true);
    check("q8", 2, false, false, false);
    check("prod(cyclic:2,cyclic:4)", 2, false, false, false);
    check("prod(cyclic:3,cyclic:3)", 3, false, false, false);
}
