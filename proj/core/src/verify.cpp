#include "mackeylab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mackeylab/comack.hpp"
#include "mackeylab/fdalg.hpp"
#include "mackeylab/ff.hpp"
#include "mackeylab/group.hpp"
#include "mackeylab/kgmod.hpp"
#include "mackeylab/mackey.hpp"

namespace mackeylab::verify {

using comack::ContextPtr;
using comack::FamilyMode;
using ff::Mat;
using kgmod::KGModule;
using report::Json;

namespace {

struct Suite {
    SuiteOptions opt;
    std::map<std::string, ContextPtr> ctxs;
    std::map<std::string, comack::PdProbe> fqk;

    ContextPtr ctx(const std::string& desc, uint32_t p) {
        std::string key = desc + "/" + std::to_string(p);
        auto it = ctxs.find(key);
        if (it != ctxs.end()) return it->second;
        auto c = comack::build_yoshida(groups::parse_group(desc), p,
                                       FamilyMode::class_reps);
        ctxs.emplace(key, c);
        return c;
    }

    // minimal resolution data for fq of the trivial module, cached
    const comack::PdProbe& fqk_probe(const std::string& desc, uint32_t p) {
        std::string key = desc + "/" + std::to_string(p);
        auto it = fqk.find(key);
        if (it != fqk.end()) return it->second;
        auto c = ctx(desc, p);
        auto probe = comack::pd_probe(
            comack::fq(c, kgmod::trivial_module(c->g, c->f)), opt.depth, opt.seed);
        return fqk.emplace(key, std::move(probe)).first->second;
    }
};

Json probe_json(const comack::PdProbe& p) {
    Json j;
    j["finite"] = p.finite;
    if (p.finite) j["pd"] = p.pd;
    j["conclusive"] = p.conclusive;
    j["bound"] = p.tambara_bound;
    j["evidence"] = p.evidence;
    return j;
}

// ---- 1: cyclic two-step resolutions ---- //

void crit_cyclic(Suite& s, report::Report& rep) {
    struct Row {
        const char* desc;
        uint32_t p;
    };
    const Row rows[] = {{"cyclic:2", 2}, {"cyclic:3", 3}, {"cyclic:4", 2}, {"cyclic:5", 5}};
    bool ok = true;
    Json m = Json::object();
    for (const Row& r : rows) {
        auto c = s.ctx(r.desc, r.p);
        auto cx = comack::explicit_resolution(c, s.opt.seed);
        bool exact = true;
        try {
            comack::verify_exact(cx);
        } catch (const std::logic_error&) {
            exact = false;
        }
        bool minimal = comack::is_minimal_complex(cx);
        uint32_t n = c->g->n;
        bool shape = cx.terms.size() == 3 && cx.maps.size() == 3 &&
                     cx.terms[0].carrier && cx.terms[0].carrier->d == n &&
                     cx.terms[1].carrier && cx.terms[1].carrier->d == n &&
                     cx.terms[2].carrier && cx.terms[2].carrier->d == 1;
        const auto& probe = s.fqk_probe(r.desc, r.p);
        bool pd2 = probe.finite && probe.pd == 2;
        ok = ok && exact && minimal && shape && pd2;
        m[r.desc] = {{"exact", exact},
                     {"minimal", minimal},
                     {"carriers", {n, n, 1}},
                     {"pd", probe.finite ? Json(probe.pd) : Json("unsettled")}};
    }
    rep.add("01-cyclic-resolutions", ok,
            "for cyclic groups of order 2, 3, 4, 5 the fixed point complex on two "
            "regular carriers and a point resolves the dual of the trivial functor "
            "exactly and minimally; its projective dimension is exactly 2",
            m);
}

// ---- 2: dihedral three-step resolutions ---- //

void crit_dihedral(Suite& s, report::Report& rep) {
    struct Row {
        const char* desc;
        uint32_t x;  // size of the union of the three reflection coset spaces
    };
    const Row rows[] = {{"prod(cyclic:2,cyclic:2)", 6}, {"dihedral:8", 10}};
    bool ok = true;
    Json m = Json::object();
    for (const Row& r : rows) {
        auto c = s.ctx(r.desc, 2);
        auto cx = comack::explicit_resolution(c, s.opt.seed);
        bool exact = true;
        try {
            comack::verify_exact(cx);
        } catch (const std::logic_error&) {
            exact = false;
        }
        bool shape = cx.terms.size() == 4 && cx.maps.size() == 4 &&
                     cx.terms[2].carrier && cx.terms[2].carrier->d == r.x &&
                     cx.terms[3].carrier && cx.terms[3].carrier->d == 1;
        const auto& probe = s.fqk_probe(r.desc, 2);
        bool pd3 = probe.finite && probe.pd == 3;
        ok = ok && exact && shape && pd3;
        m[r.desc] = {{"exact", exact},
                     {"x_size", r.x},
                     {"y_size", 1},
                     {"strategy", cx.strategy},
                     {"pd", probe.finite ? Json(probe.pd) : Json("unsettled")}};
    }
    rep.add("02-dihedral-resolutions", ok,
            "for the Klein four group and the dihedral group of order 8 the explicit "
            "length 3 complex is exact, its third carrier is the union of the three "
            "coset spaces cut out by two generating reflections and their product "
            "(sizes 6 and 10), the last carrier is a single point, and the "
            "projective dimension is exactly 3",
            m);
}

// ---- 3: second syzygy numbers ---- //

uint32_t order4_member(const groups::SubgroupLattice& lat, bool cyclic) {
    for (uint32_t t = 0; t < lat.subgroups.size(); ++t) {
        const auto& sub = lat.subgroups[t];
        if (sub.order() != 4) continue;
        bool has4 = false;
        for (uint32_t x : sub.elems) has4 = has4 || lat.g->order_of(x) == 4;
        if (has4 == cyclic) return t;
    }
    throw std::logic_error("no order 4 subgroup of the requested shape");
}

void crit_syzygy(Suite& s, report::Report& rep) {
    bool ok = true;
    Json m = Json::object();
    auto f2 = ff::make_field(2);
    {
        auto g = groups::parse_group("prod(cyclic:4,cyclic:2)");
        auto om2 = kgmod::syzygy_steps(kgmod::trivial_module(g, f2), 2, s.opt.seed);
        auto lat = groups::subgroup_lattice(g);
        auto hg = groups::subgroup_as_group(g, lat.subgroups[order4_member(lat, false)]);
        auto om2h = kgmod::syzygy_steps(kgmod::trivial_module(hg.grp, f2), 2, s.opt.seed);
        bool dims = om2.d == 9 && om2h.d == 5;
        bool split = kgmod::iso_kgmod(kgmod::restrict_to(om2, hg),
                                      kgmod::direct_sum(om2h, kgmod::regular_module(
                                                                  hg.grp, f2)),
                                      s.opt.seed)
                         .has_value();
        ok = ok && dims && split;
        m["c4xc2"] = {{"dim", om2.d}, {"klein_part", om2h.d}, {"splits", split}};
    }
    {
        auto g = groups::parse_group("q8");
        auto om2 = kgmod::syzygy_steps(kgmod::trivial_module(g, f2), 2, s.opt.seed);
        auto lat = groups::subgroup_lattice(g);
        auto hg = groups::subgroup_as_group(g, lat.subgroups[order4_member(lat, true)]);
        auto om2h = kgmod::syzygy_steps(kgmod::trivial_module(hg.grp, f2), 2, s.opt.seed);
        auto reg = kgmod::regular_module(hg.grp, f2);
        bool dims = om2h.d == 1;
        bool split = kgmod::iso_kgmod(kgmod::restrict_to(om2, hg),
                                      kgmod::direct_sum(kgmod::direct_sum(om2h, reg), reg),
                                      s.opt.seed)
                         .has_value();
        ok = ok && dims && split;
        m["q8"] = {{"dim", om2.d}, {"c4_part", om2h.d}, {"splits", split}};
    }
    {
        auto g = groups::parse_group("prod(cyclic:3,cyclic:3)");
        auto om2 =
            kgmod::syzygy_steps(kgmod::trivial_module(g, ff::make_field(3)), 2, s.opt.seed);
        auto layers = kgmod::loewy_layers(om2);
        ok = ok && om2.d == 10 && layers.size() == 4;
        m["c3xc3"] = {{"dim", om2.d}, {"loewy_length", layers.size()}};
    }
    rep.add("03-second-syzygy-numbers", ok,
            "second syzygies of the trivial module: dimension 9 for C4xC2 whose "
            "Klein restriction splits off a 5 dimensional second syzygy plus one "
            "free summand; the Q8 syzygy restricted to a C4 splits as a 1 "
            "dimensional second syzygy plus two free summands; dimension 10 with "
            "Loewy length 4 for C3xC3",
            m);
}

// ---- 4: probes with no finite projective dimension ---- //

const std::vector<std::pair<const char*, uint32_t>>& heavy_rows() {
    static const std::vector<std::pair<const char*, uint32_t>> rows = {
        {"prod(cyclic:2,cyclic:4)", 2},
        {"q8", 2},
        {"prod(prod(cyclic:2,cyclic:2),cyclic:2)", 2},
        {"prod(cyclic:3,cyclic:3)", 3},
    };
    return rows;
}

void crit_infinite(Suite& s, report::Report& rep) {
    bool ok = true, undecided = false;
    Json m = Json::object();
    for (const auto& [desc, p] : heavy_rows()) {
        const auto& probe = s.fqk_probe(desc, p);
        m[desc] = probe_json(probe);
        if (!probe.finite && !probe.conclusive) {
            undecided = true;
            continue;
        }
        ok = ok && !probe.finite && probe.conclusive && probe.tambara_bound <= 4;
    }
    const std::string claim =
        "the dual of the trivial functor for C2xC4, Q8, C2^3 over F2 and C3xC3 "
        "over F3 admits no finite projective resolution: no kernel vanishes "
        "through the probe depth, and by Tambara's bound any finite length would "
        "be at most the largest elementary abelian subquotient rank plus one "
        "(at most 4 here)";
    if (undecided && ok)
        rep.add_skip("04-infinite-pd-probes", claim, m);
    else
        rep.add("04-infinite-pd-probes", ok && !undecided, claim, m);
}

// ---- 5: the classification against the structural prediction ---- //

const std::vector<std::pair<const char*, uint32_t>>& suite_groups() {
    static const std::vector<std::pair<const char*, uint32_t>> rows = {
        {"cyclic:2", 2},
        {"cyclic:3", 3},
        {"cyclic:4", 2},
        {"cyclic:5", 5},
        {"prod(cyclic:2,cyclic:2)", 2},
        {"dihedral:8", 2},
        {"prod(cyclic:2,cyclic:4)", 2},
        {"q8", 2},
        {"prod(prod(cyclic:2,cyclic:2),cyclic:2)", 2},
        {"prod(cyclic:3,cyclic:3)", 3},
    };
    return rows;
}

void crit_gorenstein(Suite& s, report::Report& rep) {
    bool ok = true, undecided = false;
    Json m = Json::object();
    for (const auto& [desc, p] : suite_groups()) {
        auto gr = comack::gorenstein_probe(groups::parse_group(desc), p, s.opt.depth,
                                           s.opt.seed);
        // below depth 5 an unfinished probe row cannot justify an infinite
        // verdict, so the comparison is not decided
        bool trusted = gr.all_finite || s.opt.depth >= 5;
        undecided = undecided || !trusted;
        if (trusted) ok = ok && gr.consistent;
        m[desc] = {{"verdict", gr.all_finite},
                   {"prediction", gr.prediction},
                   {"consistent", gr.consistent},
                   {"max_pd", gr.max_pd},
                   {"stopped_early", gr.stopped_early},
                   {"decided", trusted}};
    }
    const std::string claim =
        "over F_p the endomorphism algebra of the permutation sum has every "
        "injective of finite projective dimension exactly when the Sylow "
        "p-subgroup is cyclic, or p = 2 and it is dihedral (Klein four included); "
        "probe verdicts match the structural prediction on all ten stock groups";
    if (undecided && ok)
        rep.add_skip("05-gorenstein-classification", claim, m);
    else
        rep.add("05-gorenstein-classification", ok && !undecided, claim, m);
}

// ---- 6: finite and periodic simple resolutions ---- //

void crit_simples(Suite& s, report::Report& rep) {
    bool ok = true;
    Json m = Json::object();
    {
        auto c = s.ctx("cyclic:2", 2);
        const auto& h = comack::homology(c);
        std::vector<uint32_t> pds;
        for (uint32_t t = 0; t < c->members(); ++t) {
            auto sf = comack::simple_functor(c, t);
            auto res = fdalg::minimal_resolution(h, sf.mod, s.opt.depth, s.opt.seed);
            if (res.status == fdalg::ResStatus::finite) pds.push_back(res.pd);
        }
        std::sort(pds.begin(), pds.end());
        ok = ok && pds == std::vector<uint32_t>{1, 2};
        m["cyclic:2"] = {{"simple_pds", pds}};
    }
    struct Row {
        const char* desc;
        uint32_t p;
        std::vector<uint32_t> mults;  // repeating stage, by member
        const char* shape;
    };
    const Row rows[] = {
        {"cyclic:3", 3, {1, 1}, "P_1 + P_3"},
        {"cyclic:4", 2, {1, 1, 0}, "P_1 + P_2"},
    };
    for (const Row& r : rows) {
        auto c = s.ctx(r.desc, r.p);
        const auto& h = comack::homology(c);
        uint32_t t1 = 0;
        while (c->labels[t1] != "1") ++t1;
        auto sf = comack::simple_functor(c, t1);
        auto res = fdalg::minimal_resolution(h, sf.mod, s.opt.depth, s.opt.seed);
        bool periodic = res.status == fdalg::ResStatus::periodic;
        bool stable = periodic;
        for (uint32_t i = res.onset; i < res.terms.size(); ++i)
            stable = stable && res.terms[i] == r.mults;
        ok = ok && stable;
        m[r.desc] = {{"periodic", periodic},
                     {"onset", res.onset},
                     {"period", res.period},
                     {"repeating", r.shape},
                     {"matched", stable}};
    }
    rep.add("06-global-dimension-field", ok,
            "both simples over the order 2 endomorphism algebra have finite "
            "projective dimension (1 and 2); the simple at the trivial member for "
            "orders 3 and 4 resolves eventually periodically, each repeating term "
            "being the projective at the trivial member plus the one at the index "
            "p member",
            m);
}

// ---- 7: projective structure over cyclic:4 ---- //

void crit_pims(Suite& s, report::Report& rep) {
    auto c = s.ctx("cyclic:4", 2);
    const auto& h = comack::homology(c);
    const std::map<std::string, std::vector<uint32_t>> profiles = {
        {"1", {4, 2, 1}},
        {"2", {2, 2, 1}},
        {"4", {1, 1, 1}},
    };
    bool ok = true;
    Json m = Json::object();
    for (uint32_t t = 0; t < c->members(); ++t) {
        auto pm = fdalg::pim_module(h, t);
        auto layers = fdalg::radical_layers(h, pm);
        std::vector<uint32_t> total(c->members(), 0);
        for (const auto& l : layers)
            for (uint32_t u = 0; u < c->members(); ++u) total[u] += l[u];
        ok = ok && total == profiles.at(c->labels[t]);
        m["P_" + c->labels[t]] = total;
    }
    uint32_t t4 = 0;
    while (c->labels[t4] != "4") ++t4;
    std::string ld = comack::loewy_diagram(c, fdalg::pim_module(h, t4));
    ok = ok && ld == "[4][2][1]";
    m["P_4_layers"] = ld;
    rep.add("07-pim-structure-c4", ok,
            "the three projective indecomposables over the order 4 endomorphism "
            "algebra have composition profiles 4/2/1, 2/2/1 and 1/1/1 across the "
            "members labeled 1, 2, 4, and the largest one has radical layers "
            "[4][2][1]",
            m);
}

// ---- 8: the full span algebra ---- //

void crit_mackey(Suite& s, report::Report& rep) {
    bool ok = true;
    Json m = Json::object();
    auto mu2 = mackey::build_mackey(groups::parse_group("cyclic:2"), 2);
    auto q = mackey::cohomological_quotient(mu2);
    ok = ok && mu2->alg->n == 6 && q.image_dim == 5;
    m["c2"] = {{"dim", mu2->alg->n}, {"quotient_image", q.image_dim}};

    struct Row {
        const char* desc;
        uint32_t p;
        bool selfinj;
    };
    const Row rows[] = {
        {"cyclic:2", 2, true},
        {"cyclic:3", 3, true},
        {"cyclic:4", 2, false},
        {"prod(cyclic:2,cyclic:2)", 2, false},
    };
    Json si = Json::object();
    for (const Row& r : rows) {
        bool got = fdalg::self_injective(mackey::build_mackey(groups::parse_group(r.desc), r.p)->alg);
        ok = ok && got == r.selfinj;
        si[r.desc] = got;
    }
    m["self_injective"] = si;

    for (const char* desc : {"cyclic:4", "prod(cyclic:2,cyclic:2)"}) {
        auto pr = mackey::split_mono_probe(groups::parse_group(desc), 2, s.opt.trials,
                                           s.opt.seed);
        ok = ok && pr.all_split && pr.injective_found > 0;
        m[std::string("probe_") + desc] = {{"sampled", pr.sampled},
                                           {"injective_found", pr.injective_found},
                                           {"all_split", pr.all_split}};
    }
    rep.add("08-full-mackey-algebra", ok,
            "the span algebra of C2 over F2 has dimension 6 and maps onto the 5 "
            "dimensional endomorphism algebra; it is self injective for C2/F2 and "
            "C3/F3 but not for C4/F2 or Klein/F2, yet every injective map between "
            "projective span modules found by random search splits",
            m);
}

// ---- 9: the fixed point construction sees every Brauer quotient ---- //

void crit_brauer(Suite& s, report::Report& rep) {
    bool ok = true;
    Json m = Json::object();
    for (const char* desc : {"cyclic:2", "cyclic:4"}) {
        auto br = mackey::brauer_identity_check(groups::parse_group(desc), 2, s.opt.seed);
        ok = ok && br.all_equal;
        m[desc] = {{"rows", br.rows.size()}, {"all_equal", br.all_equal}};
    }
    rep.add("09-brauer-identity", ok,
            "for every projective indecomposable span module over C2 and C4 at "
            "p = 2 and every subgroup H, the H component modulo transfers from "
            "proper subgroups has the same dimension as the Brauer quotient at H "
            "of the evaluation at the trivial subgroup",
            m);
}

// ---- 10: structural property sweeps ---- //

Mat span_submodule(const KGModule& m, const Mat& seeds) {
    ff::RowAccum acc(m.f, m.d);
    acc.insert_all(seeds);
    for (bool grew = true; grew;) {
        grew = false;
        Mat cur = acc.basis();
        for (uint32_t s : m.g->gens) {
            Mat img = ff::mul(cur, ff::transpose(m.act[s]));
            for (uint32_t i = 0; i < img.rows; ++i) grew = acc.insert_row(img, i) || grew;
        }
    }
    return acc.basis();
}

KGModule module_on_rows(const KGModule& big, const Mat& rows) {
    Mat rt = ff::transpose(rows);
    std::vector<std::pair<uint32_t, Mat>> imgs;
    for (uint32_t s : big.g->gens) {
        if (rows.rows == 0) {
            imgs.emplace_back(s, Mat(big.f, 0, 0));
            continue;
        }
        auto sol = ff::solve(rt, ff::mul(big.act[s], rt));
        if (!sol) throw std::logic_error("submodule rows are not invariant");
        imgs.emplace_back(s, *sol);
    }
    return kgmod::make_module(big.g, big.f, imgs, "sub");
}

KGModule quotient_by_rows(const KGModule& big, const Mat& rows, Mat& proj) {
    proj = ff::kernel(rows.rows ? rows : Mat(big.f, 0, big.d));
    std::vector<std::pair<uint32_t, Mat>> imgs;
    for (uint32_t s : big.g->gens) {
        auto sol = ff::solve_left(proj, ff::mul(proj, big.act[s]));
        if (!sol) throw std::logic_error("quotient rows are not invariant");
        imgs.emplace_back(s, *sol);
    }
    return kgmod::make_module(big.g, big.f, imgs, "quot");
}

bool exact_on_random_ses(Suite& s, const ContextPtr& c, uint32_t group_index) {
    KGModule amb =
        kgmod::direct_sum(kgmod::regular_module(c->g, c->f), c->blocks[1]);
    std::mt19937_64 rng(s.opt.seed + 1000 + group_index);
    for (uint32_t trial = 0; trial < 20; ++trial) {
        Mat seed(c->f, 1, amb.d);
        for (uint32_t j = 0; j < amb.d; ++j) seed.at(0, j) = rng() % c->f.p;
        Mat rows = span_submodule(amb, seed);
        KGModule a = module_on_rows(amb, rows);
        Mat proj;
        KGModule qm = quotient_by_rows(amb, rows, proj);
        Mat inc = ff::transpose(rows);

        auto fa = comack::fp(c, a), fm = comack::fp(c, amb), fqo = comack::fp(c, qm);
        auto fi = comack::map_fp(c, a, amb, inc);
        auto fj = comack::map_fp(c, amb, qm, proj);
        auto qa = comack::fq(c, a), qmid = comack::fq(c, amb), qq = comack::fq(c, qm);
        auto qi = comack::map_fq(c, a, amb, inc);
        auto qj = comack::map_fq(c, amb, qm, proj);
        for (uint32_t t = 0; t < c->members(); ++t) {
            if (ff::rank(fi.comp[t]) != fa.eval_dims()[t]) return false;
            if (!ff::mul(fj.comp[t], fi.comp[t]).is_zero()) return false;
            if (ff::rank(fi.comp[t]) + ff::rank(fj.comp[t]) != fm.eval_dims()[t])
                return false;
            if (ff::rank(qj.comp[t]) != qq.eval_dims()[t]) return false;
            if (!ff::mul(qj.comp[t], qi.comp[t]).is_zero()) return false;
            if (ff::rank(qi.comp[t]) + ff::rank(qj.comp[t]) != qmid.eval_dims()[t])
                return false;
        }
    }
    return true;
}

bool duality_swaps(const ContextPtr& c) {
    const auto& h = comack::homology(c);
    std::vector<uint32_t> picks = {0, c->members() - 1};
    for (uint32_t t : picks) {
        auto f = comack::fp(c, c->blocks[t]);
        if (!fdalg::is_projective(h, f.mod)) return false;
        if (!fdalg::is_injective(h, comack::twisted_dual(c, f.mod))) return false;
        auto sm = comack::simple_functor(c, t);
        bool pj = fdalg::is_projective(h, sm.mod);
        bool in = fdalg::is_injective(h, comack::twisted_dual(c, sm.mod));
        if (pj != in) return false;
        bool in2 = fdalg::is_injective(h, sm.mod);
        bool pj2 = fdalg::is_projective(h, comack::twisted_dual(c, sm.mod));
        if (in2 != pj2) return false;
    }
    return true;
}

// rank data of the cached resolution rerun with another seed; heavy groups
// only compare a three stage prefix
bool seed_stable(Suite& s, const std::string& desc, uint32_t p, bool heavy) {
    auto c = s.ctx(desc, p);
    const auto& h = comack::homology(c);
    const auto& base = s.fqk_probe(desc, p).res;
    auto mod = comack::fq(c, kgmod::trivial_module(c->g, c->f)).mod;
    uint32_t cap = heavy ? 3 : s.opt.depth;
    auto again = fdalg::minimal_resolution(h, mod, cap, s.opt.seed + 1);
    size_t k = std::min({again.kernel_dims.size(), base.kernel_dims.size(), size_t(cap)});
    if (k == 0) return false;
    for (size_t i = 0; i < k; ++i) {
        if (again.kernel_dims[i] != base.kernel_dims[i]) return false;
        if (again.terms[i] != base.terms[i]) return false;
    }
    return true;
}

void crit_structural(Suite& s, report::Report& rep) {
    bool ok = true;
    Json m = Json::object();
    const auto& rows = suite_groups();
    for (uint32_t gi = 0; gi < rows.size(); ++gi) {
        const std::string desc = rows[gi].first;
        uint32_t p = rows[gi].second;
        auto c = s.ctx(desc, p);
        // dimension identity against a fresh double coset count
        uint32_t want = 0;
        for (uint32_t t = 0; t < c->members(); ++t)
            for (uint32_t u = 0; u < c->members(); ++u)
                want += uint32_t(
                    groups::double_cosets(*c->g, c->sub(t), c->sub(u)).rep.size());
        bool dim_ok = c->alg->n == want;

        bool ses_ok = exact_on_random_ses(s, c, gi);
        bool dual_ok = duality_swaps(c);
        bool heavy = false;
        for (const auto& [hd, hp] : heavy_rows()) heavy = heavy || desc == hd;
        bool seed_ok = seed_stable(s, desc, p, heavy);
        ok = ok && dim_ok && ses_ok && dual_ok && seed_ok;
        m[desc] = {{"dim", c->alg->n},
                   {"dim_identity", dim_ok},
                   {"ses_exact", ses_ok},
                   {"duality_swap", dual_ok},
                   {"seed_stable", seed_ok}};
    }
    rep.add("10-structural-properties", ok,
            "on all ten stock groups: the endomorphism algebra dimension equals "
            "the double coset count; 20 random short exact sequences per group "
            "stay exact under fixed points on the left and under coinvariants on "
            "the right; the twist duality swaps projective and injective "
            "verdicts; resolution rank sequences do not depend on the seed",
            m);
}

}  // namespace

report::Report paper_suite(const SuiteOptions& opt) {
    Suite s{opt, {}, {}};
    report::Report rep;
    rep.command = "mackeylab suite";
    rep.depth = opt.depth;
    rep.seed = opt.seed;
    rep.trials = opt.trials;
    rep.timings = opt.timings;
    using Fn = void (*)(Suite&, report::Report&);
    const Fn checks[] = {crit_cyclic, crit_dihedral, crit_syzygy,  crit_infinite,
                         crit_gorenstein, crit_simples,  crit_pims, crit_mackey,
                         crit_brauer, crit_structural};
    for (Fn fn : checks) {
        auto t0 = std::chrono::steady_clock::now();
        fn(s, rep);
        auto t1 = std::chrono::steady_clock::now();
        if (opt.timings)
            rep.records.back().wall_ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    return rep;
}

}  // namespace mackeylab::verify
