#include "mackeylab/mackey.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <random>
#include <stdexcept>

namespace mackeylab::mackey {

using fdalg::AMap;
using fdalg::AModule;
using kgmod::KGModule;

namespace {

bool is_p_power(uint32_t n, uint32_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

std::vector<uint32_t> indicator(uint32_t n, uint32_t i) {
    std::vector<uint32_t> v(n, 0);
    v[i] = 1;
    return v;
}

// coordinates of src-basis row images in the dst basis, column action
Mat express(const Mat& src_images, const Mat& dst_basis) {
    if (dst_basis.rows == 0) {
        if (!src_images.is_zero()) throw std::logic_error("express: image misses the target");
        return Mat(src_images.f, 0, src_images.rows);
    }
    auto sol = ff::solve_left(dst_basis, src_images);
    if (!sol) throw std::logic_error("express: image misses the target");
    return ff::transpose(*sol);
}

struct SpanKey {
    std::array<uint32_t, 5> v;  // h, k, x, y, mid
    bool operator<(const SpanKey& o) const { return v < o.v; }
};

// distinct middle-group cosets wL covering the stabilizer of the x anchor
std::vector<uint32_t> stab_coset_reps(const MackeyAlgebra& a, const Span& s) {
    uint32_t rep_x = a.reps[s.h][s.x];
    std::vector<uint32_t> out;
    std::vector<char> seen(a.reps[s.mid].size(), 0);
    for (uint32_t e : a.lat.subgroups[s.h].elems) {
        uint32_t w = a.g->op(a.g->op(rep_x, e), a.g->inv(rep_x));
        uint32_t c = a.coset_of[s.mid][w];
        if (!seen[c]) {
            seen[c] = 1;
            out.push_back(a.reps[s.mid][c]);
        }
    }
    return out;
}

// the span as an operator on a module: u in U^K goes to the trace sum
Mat span_operator(const MackeyAlgebra& a, const Span& s, const KGModule& u) {
    uint32_t xi = a.g->inv(a.reps[s.h][s.x]);
    uint32_t y = a.reps[s.k][s.y];
    Mat t(u.f, u.d, u.d);
    for (uint32_t w : stab_coset_reps(a, s))
        t = ff::add(t, u.act[a.g->op(a.g->op(xi, w), y)]);
    return t;
}

}  // namespace

// ---- canonical form ---- //

static Span canonical_span(const MackeyAlgebra& a, uint32_t mid, uint32_t h, uint32_t x,
                           uint32_t k, uint32_t y) {
    const groups::Group& g = *a.g;
    uint32_t bx = UINT32_MAX, by = UINT32_MAX, bm = UINT32_MAX;
    uint32_t rx = a.reps[h][x], ry = a.reps[k][y];
    for (uint32_t t = 0; t < g.n; ++t) {
        uint32_t cx = a.coset_of[h][g.op(t, rx)];
        uint32_t cy = a.coset_of[k][g.op(t, ry)];
        if (cx > bx || (cx == bx && cy > by)) continue;
        uint32_t cm = a.lat.conjugate_subgroup(mid, t);
        if (cx < bx || cy < by) {
            bx = cx;
            by = cy;
            bm = cm;
        } else {
            bm = std::min(bm, cm);
        }
    }
    return Span{h, k, bx, by, bm};
}

uint32_t MackeyAlgebra::span_index(uint32_t mid, uint32_t h, uint32_t x, uint32_t k,
                                   uint32_t y) const {
    Span c = canonical_span(*this, mid, h, x, k, y);
    for (uint32_t i = 0; i < spans.size(); ++i) {
        const Span& s = spans[i];
        if (s.h == c.h && s.k == c.k && s.x == c.x && s.y == c.y && s.mid == c.mid)
            return i;
    }
    throw std::invalid_argument("span: middle group exceeds the anchor stabilizers");
}

uint32_t MackeyAlgebra::transfer(uint32_t h, uint32_t l) const {
    if (!lat.leq[l][h]) throw std::invalid_argument("transfer: not a subgroup");
    return span_index(l, h, 0, l, 0);
}

uint32_t MackeyAlgebra::restriction(uint32_t h, uint32_t l) const {
    if (!lat.leq[l][h]) throw std::invalid_argument("restriction: not a subgroup");
    return span_index(l, l, 0, h, 0);
}

// ---- construction ---- //

MackeyPtr build_mackey(const GroupPtr& g, uint32_t p) {
    if (g->n > 8) throw std::invalid_argument("mackey: group order capped at 8");
    auto a = std::make_shared<MackeyAlgebra>();
    a->g = g;
    a->f = ff::make_field(p);
    a->lat = groups::subgroup_lattice(g);
    uint32_t ns = uint32_t(a->lat.subgroups.size());

    for (uint32_t t = 0; t < ns; ++t) {
        a->reps.push_back(kgmod::coset_reps(*g, a->lat.subgroups[t]));
        std::vector<uint32_t> co(g->n, 0);
        for (uint32_t i = 0; i < a->reps[t].size(); ++i)
            for (uint32_t e : a->lat.subgroups[t].elems)
                co[g->op(a->reps[t][i], e)] = i;
        a->coset_of.push_back(std::move(co));
    }
    {
        std::vector<uint32_t> same(ns, 0), before(ns, 0);
        for (uint32_t t = 0; t < ns; ++t)
            for (uint32_t u = 0; u < ns; ++u) {
                if (a->lat.subgroups[u].order() != a->lat.subgroups[t].order()) continue;
                ++same[t];
                if (u < t) ++before[t];
            }
        for (uint32_t t = 0; t < ns; ++t) {
            std::string l = std::to_string(a->lat.subgroups[t].order());
            if (same[t] > 1) l += char('a' + before[t]);
            a->labels.push_back(std::move(l));
        }
    }

    // every triple, canonicalized; the map order fixes the basis order
    std::map<SpanKey, uint32_t> index;
    for (uint32_t h = 0; h < ns; ++h)
        for (uint32_t k = 0; k < ns; ++k)
            for (uint32_t x = 0; x < a->reps[h].size(); ++x)
                for (uint32_t y = 0; y < a->reps[k].size(); ++y) {
                    uint32_t sx = a->lat.conjugate_subgroup(h, a->reps[h][x]);
                    uint32_t sy = a->lat.conjugate_subgroup(k, a->reps[k][y]);
                    for (uint32_t mid = 0; mid < ns; ++mid) {
                        if (!a->lat.leq[mid][sx] || !a->lat.leq[mid][sy]) continue;
                        Span c = canonical_span(*a, mid, h, x, k, y);
                        index.emplace(SpanKey{{c.h, c.k, c.x, c.y, c.mid}}, 0);
                    }
                }
    for (auto& [key, idx] : index) {
        idx = uint32_t(a->spans.size());
        a->spans.push_back(Span{key.v[0], key.v[1], key.v[2], key.v[3], key.v[4]});
    }
    uint32_t n = uint32_t(a->spans.size());

    // composition by pullback over the shared foot, orbit by orbit
    std::vector<fdalg::ProdEntry> entries;
    for (uint32_t i = 0; i < n; ++i) {
        const Span& si = a->spans[i];
        for (uint32_t j = 0; j < n; ++j) {
            const Span& sj = a->spans[j];
            if (si.k != sj.h) continue;
            uint32_t la = si.mid, lb = sj.mid;
            uint32_t na = uint32_t(a->reps[la].size()), nb = uint32_t(a->reps[lb].size());
            // right leg of i and left leg of j into G/K
            std::vector<uint32_t> ri(na), lj(nb);
            for (uint32_t w = 0; w < na; ++w)
                ri[w] = a->coset_of[si.k][g->op(a->reps[la][w], a->reps[si.k][si.y])];
            for (uint32_t v = 0; v < nb; ++v)
                lj[v] = a->coset_of[sj.h][g->op(a->reps[lb][v], a->reps[sj.h][sj.x])];

            std::map<uint32_t, uint32_t> coeff;  // span id -> multiplicity
            std::vector<char> seen(size_t(na) * nb, 0);
            for (uint32_t w = 0; w < na; ++w)
                for (uint32_t v = 0; v < nb; ++v) {
                    if (ri[w] != lj[v] || seen[size_t(w) * nb + v]) continue;
                    // sweep the diagonal orbit of the pair
                    for (uint32_t t = 0; t < g->n; ++t) {
                        uint32_t w2 = a->coset_of[la][g->op(t, a->reps[la][w])];
                        uint32_t v2 = a->coset_of[lb][g->op(t, a->reps[lb][v])];
                        seen[size_t(w2) * nb + v2] = 1;
                    }
                    uint32_t rw = a->reps[la][w], rv = a->reps[lb][v];
                    uint32_t ca = a->lat.conjugate_subgroup(la, rw);
                    uint32_t cb = a->lat.conjugate_subgroup(lb, rv);
                    std::vector<uint32_t> mid_elems;
                    std::set_intersection(a->lat.subgroups[ca].elems.begin(),
                                          a->lat.subgroups[ca].elems.end(),
                                          a->lat.subgroups[cb].elems.begin(),
                                          a->lat.subgroups[cb].elems.end(),
                                          std::back_inserter(mid_elems));
                    uint32_t mid = a->lat.find(mid_elems);
                    uint32_t out = a->span_index(
                        mid, si.h, a->coset_of[si.h][g->op(rw, a->reps[si.h][si.x])],
                        sj.k, a->coset_of[sj.k][g->op(rv, a->reps[sj.k][sj.y])]);
                    coeff[out] = a->f.add(coeff[out], 1);
                }
            fdalg::ProdEntry e{i, j, {}};
            for (auto [idx, c] : coeff)
                if (c) e.terms.push_back({idx, c});
            if (!e.terms.empty()) entries.push_back(std::move(e));
        }
    }

    std::vector<uint32_t> src, dst, fam_idem(ns, 0);
    for (const Span& s : a->spans) {
        src.push_back(s.h);
        dst.push_back(s.k);
    }
    for (uint32_t t = 0; t < ns; ++t) fam_idem[t] = a->span_index(t, t, 0, t, 0);
    a->alg = fdalg::make_graded_algebra(a->f, n, entries, ns, std::move(src),
                                        std::move(dst), std::move(fam_idem), a->labels,
                                        "mackey(" + g->descriptor + ",p=" +
                                            std::to_string(p) + ")");
    return a;
}

// ---- the quotient onto the endomorphism picture ---- //

CohQuotient cohomological_quotient(const MackeyPtr& mu) {
    CohQuotient out;
    out.yoshida = comack::build_yoshida(mu->g, mu->f.p, comack::FamilyMode::all_subgroups);
    const auto& y = *out.yoshida;
    uint32_t n = uint32_t(mu->spans.size());
    out.to_yoshida = Mat(mu->f, n, y.alg->n);
    for (uint32_t i = 0; i < n; ++i) {
        const Span& s = mu->spans[i];
        // image of the anchor coset of G/H: a combination of cosets of G/K
        std::vector<uint32_t> v(mu->reps[s.k].size(), 0);
        uint32_t xi = mu->g->inv(mu->reps[s.h][s.x]);
        uint32_t ry = mu->reps[s.k][s.y];
        for (uint32_t w : stab_coset_reps(*mu, s)) {
            uint32_t c = mu->coset_of[s.k][mu->g->op(mu->g->op(xi, w), ry)];
            v[c] = mu->f.add(v[c], 1);
        }
        for (uint32_t b = 0; b < y.elems.size(); ++b) {
            const auto& be = y.elems[b];
            if (be.src != s.h || be.dst != s.k) continue;
            uint32_t c = v[be.orbit[0]];
            for (uint32_t o : be.orbit)
                if (v[o] != c) throw std::logic_error("quotient image is not orbit-constant");
            out.to_yoshida.at(i, b) = c;
        }
    }
    out.image_dim = ff::rank(out.to_yoshida);
    out.kernel_dim = n - out.image_dim;
    return out;
}

// ---- modules ---- //

MackeyModule fixed_point_mackey_module(const MackeyPtr& mu, const KGModule& u) {
    if (u.g != mu->g || u.f.p != mu->f.p)
        throw std::invalid_argument("fixed point module: group or field mismatch");
    AModule m;
    m.a = mu->alg;
    m.name = "fpmack(" + u.name + ")";
    std::vector<Mat> fixed;
    for (uint32_t t = 0; t < mu->lat.subgroups.size(); ++t) {
        fixed.push_back(kgmod::fixed_points(u, mu->lat.subgroups[t].elems));
        m.cdim.push_back(fixed.back().rows);
    }
    for (const Span& s : mu->spans) {
        Mat t = span_operator(*mu, s, u);
        Mat images = ff::mul(fixed[s.k], ff::transpose(t));
        m.rho.push_back(express(images, fixed[s.h]));
    }
    return m;
}

std::vector<MackeyModule> pim_modules(const MackeyPtr& mu, uint64_t seed) {
    auto dec = fdalg::regular_decomposition(mu->alg, seed);
    const auto& a = *mu->alg;
    std::vector<MackeyModule> out;
    for (uint32_t pc = 0; pc < dec.pims.size(); ++pc) {
        const auto& cls = dec.pims[pc];
        AModule m;
        m.a = mu->alg;
        m.name = "mackey pim " + std::to_string(pc);
        // split the left ideal along the grading idempotents
        std::vector<Mat> comp;
        uint32_t total = 0;
        for (uint32_t t = 0; t < a.nfam; ++t) {
            auto et = indicator(a.n, a.fam_idem[t]);
            ff::RowAccum acc(mu->f, a.n);
            for (uint32_t r = 0; r < cls.basis.rows; ++r) {
                std::vector<uint32_t> row(cls.basis.a.begin() + size_t(r) * a.n,
                                          cls.basis.a.begin() + size_t(r + 1) * a.n);
                auto cut = a.mul(et, row);
                acc.insert(cut.data());
            }
            comp.push_back(acc.basis());
            m.cdim.push_back(comp.back().rows);
            total += comp.back().rows;
        }
        if (total != cls.basis.rows)
            throw std::logic_error("pim basis does not split along the grading");
        for (uint32_t b = 0; b < a.n; ++b) {
            Mat lb = a.left_mult(indicator(a.n, b));
            Mat images = ff::mul(comp[a.dst[b]], ff::transpose(lb));
            m.rho.push_back(express(images, comp[a.src[b]]));
        }
        out.push_back(std::move(m));
    }
    return out;
}

kgmod::KGModule evaluation_at_one(const MackeyPtr& mu, const MackeyModule& m) {
    uint32_t one = mu->lat.trivial_id();
    std::vector<std::pair<uint32_t, Mat>> imgs;
    for (uint32_t s : mu->g->gens) {
        uint32_t cg = mu->span_index(one, one, 0, one, mu->coset_of[one][s]);
        imgs.emplace_back(s, m.rho[cg]);
    }
    return kgmod::make_module(mu->g, mu->f, imgs, m.name + "(1)");
}

// ---- probes ---- //

namespace {

AModule sum_of_pims(const std::vector<MackeyModule>& pims,
                    const std::vector<uint32_t>& mults) {
    AModule out;
    bool started = false;
    for (uint32_t i = 0; i < pims.size(); ++i)
        for (uint32_t c = 0; c < mults[i]; ++c) {
            out = started ? fdalg::direct_sum_mod(out, pims[i]) : pims[i];
            started = true;
        }
    return out;
}

std::string shape_of(const std::vector<uint32_t>& mults) {
    std::string s = "[";
    for (uint32_t i = 0; i < mults.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(mults[i]);
    }
    return s + "]";
}

}  // namespace

SplitMonoReport split_mono_probe(const GroupPtr& g, uint32_t p, uint32_t trials,
                                 uint64_t seed) {
    auto mu = build_mackey(g, p);
    auto pims = pim_modules(mu, seed);
    uint32_t nc = uint32_t(pims.size());
    std::mt19937_64 rng(seed);
    SplitMonoReport rep;
    rep.sampled = trials;
    for (uint32_t trial = 0; trial < trials; ++trial) {
        std::vector<uint32_t> mx(nc, 0), my(nc, 0);
        for (uint32_t i = 0; i < nc; ++i) mx[i] = rng() % 3;
        for (uint32_t i = 0; i < nc; ++i) my[i] = rng() % 3;
        if (std::all_of(mx.begin(), mx.end(), [](uint32_t c) { return c == 0; }))
            mx[rng() % nc] = 1;
        if (std::all_of(my.begin(), my.end(), [](uint32_t c) { return c == 0; }))
            my[rng() % nc] = 1;
        AModule x = sum_of_pims(pims, mx), y = sum_of_pims(pims, my);
        auto hom = fdalg::hom_modules(x, y);
        if (hom.empty()) continue;
        AMap f;
        for (uint32_t t = 0; t < x.cdim.size(); ++t)
            f.comp.push_back(Mat(mu->f, y.cdim[t], x.cdim[t]));
        for (const AMap& h : hom) {
            uint32_t c = rng() % p;
            if (!c) continue;
            for (uint32_t t = 0; t < f.comp.size(); ++t)
                f.comp[t] = ff::add(f.comp[t], ff::scale(h.comp[t], c));
        }
        bool inj = true;
        for (uint32_t t = 0; t < f.comp.size(); ++t)
            inj = inj && ff::rank(f.comp[t]) == x.cdim[t];
        if (!inj) continue;
        ++rep.injective_found;

        // retraction: solve sum_i c_i (h_i after f) = identity
        auto back = fdalg::hom_modules(y, x);
        uint32_t cells = 0;
        for (uint32_t t = 0; t < x.cdim.size(); ++t) cells += x.cdim[t] * x.cdim[t];
        Mat sys(mu->f, cells, uint32_t(back.size()));
        Mat rhs(mu->f, cells, 1);
        for (uint32_t i = 0; i < back.size(); ++i) {
            uint32_t row = 0;
            for (uint32_t t = 0; t < x.cdim.size(); ++t) {
                Mat comp = ff::mul(back[i].comp[t], f.comp[t]);
                for (uint32_t r = 0; r < x.cdim[t]; ++r)
                    for (uint32_t c = 0; c < x.cdim[t]; ++c, ++row)
                        sys.at(row, i) = comp.at(r, c);
            }
        }
        {
            uint32_t row = 0;
            for (uint32_t t = 0; t < x.cdim.size(); ++t)
                for (uint32_t r = 0; r < x.cdim[t]; ++r)
                    for (uint32_t c = 0; c < x.cdim[t]; ++c, ++row)
                        if (r == c) rhs.at(row, 0) = 1;
        }
        if (!ff::solve(sys, rhs)) {
            rep.all_split = false;
            if (rep.counterexample.empty())
                rep.counterexample = "trial " + std::to_string(trial) + ": " +
                                     shape_of(mx) + " -> " + shape_of(my);
        }
    }
    return rep;
}

BrauerReport brauer_identity_check(const GroupPtr& g, uint32_t p, uint64_t seed) {
    if (!is_p_power(g->n, p))
        throw std::invalid_argument("brauer check: needs a p-group");
    auto mu = build_mackey(g, p);
    auto pims = pim_modules(mu, seed);
    BrauerReport rep;
    for (uint32_t pc = 0; pc < pims.size(); ++pc) {
        const auto& x = pims[pc];
        KGModule x1 = evaluation_at_one(mu, x);
        for (uint32_t hs = 0; hs < mu->lat.subgroups.size(); ++hs) {
            ff::RowAccum acc(mu->f, x.cdim[hs]);
            for (uint32_t l = 0; l < mu->lat.subgroups.size(); ++l) {
                if (l == hs || !mu->lat.leq[l][hs]) continue;
                Mat tr = x.rho[mu->transfer(hs, l)];
                acc.insert_all(ff::transpose(tr));
            }
            BrauerRow row;
            row.pim = pc;
            row.sub = hs;
            row.residue_dim = x.cdim[hs] - acc.basis().rows;
            row.brauer_dim = kgmod::brauer_quotient(x1, mu->lat, hs).dim;
            rep.all_equal = rep.all_equal && row.residue_dim == row.brauer_dim;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

}  // namespace mackeylab::mackey
