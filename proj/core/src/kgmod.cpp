#include "mackeylab/kgmod.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace mackeylab::kgmod {

using ff::RowAccum;

namespace {

std::vector<uint32_t> mat_row(const Mat& m, uint32_t i) {
    return std::vector<uint32_t>(m.a.begin() + size_t(i) * m.cols,
                                 m.a.begin() + size_t(i + 1) * m.cols);
}

std::vector<uint32_t> matvec(const Mat& m, const std::vector<uint32_t>& v) {
    std::vector<uint32_t> out(m.rows, 0);
    for (uint32_t i = 0; i < m.rows; ++i) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < m.cols; ++j) acc += uint64_t(m.at(i, j)) * v[j];
        out[i] = uint32_t(acc % m.f.p);
    }
    return out;
}

void verify_table(const KGModule& m) {
    const groups::Group& g = *m.g;
    if (m.act.size() != g.n) throw std::invalid_argument("module: matrix count");
    for (const Mat& a : m.act)
        if (a.rows != m.d || a.cols != m.d) throw std::invalid_argument("module: matrix shape");
    if (m.act[0] != Mat::identity(m.f, m.d))
        throw std::invalid_argument("module: identity must act trivially");
    for (uint32_t s : g.gens)
        for (uint32_t x = 0; x < g.n; ++x)
            if (ff::mul(m.act[s], m.act[x]) != m.act[g.op(s, x)])
                throw std::invalid_argument("module: action is not a homomorphism");
}

bool is_p_group(const KGModule& m) {
    uint32_t n = m.g->n;
    while (n % m.f.p == 0) n /= m.f.p;
    return n == 1;
}

}  // namespace

std::vector<uint32_t> coset_reps(const groups::Group& g, const Subgroup& h) {
    std::vector<char> seen(g.n, 0);
    std::vector<uint32_t> reps;
    for (uint32_t x = 0; x < g.n; ++x) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (uint32_t e : h.elems) seen[g.op(x, e)] = 1;
    }
    return reps;
}

KGModule make_module(const GroupPtr& g, Fp f,
                     const std::vector<std::pair<uint32_t, Mat>>& gen_images,
                     std::string name) {
    if (gen_images.empty()) throw std::invalid_argument("module: no generator images");
    uint32_t d = gen_images[0].second.rows;
    KGModule m;
    m.g = g;
    m.f = f;
    m.d = d;
    m.name = std::move(name);
    m.act.assign(g->n, Mat(f, 0, 0));
    std::vector<char> known(g->n, 0);
    m.act[0] = Mat::identity(f, d);
    known[0] = 1;
    for (const auto& [s, mat] : gen_images) {
        if (s >= g->n || mat.rows != d || mat.cols != d)
            throw std::invalid_argument("module: bad generator image");
        m.act[s] = mat;
        known[s] = 1;
    }
    std::deque<uint32_t> queue;
    for (uint32_t x = 0; x < g->n; ++x)
        if (known[x]) queue.push_back(x);
    while (!queue.empty()) {
        uint32_t x = queue.front();
        queue.pop_front();
        for (const auto& [s, mat] : gen_images) {
            uint32_t y = g->op(s, x);
            if (!known[y]) {
                m.act[y] = ff::mul(mat, m.act[x]);
                known[y] = 1;
                queue.push_back(y);
            }
        }
    }
    for (uint32_t x = 0; x < g->n; ++x)
        if (!known[x]) throw std::invalid_argument("module: images do not generate the group");
    if (m.act[0] != Mat::identity(f, d))
        throw std::invalid_argument("module: identity must act trivially");
    // act(1) = id plus the generator relations below validate the whole table
    for (const auto& [s, mat] : gen_images)
        for (uint32_t x = 0; x < g->n; ++x)
            if (ff::mul(mat, m.act[x]) != m.act[g->op(s, x)])
                throw std::invalid_argument("module: action is not a homomorphism");
    return m;
}

KGModule trivial_module(const GroupPtr& g, Fp f) {
    KGModule m;
    m.g = g;
    m.f = f;
    m.d = 1;
    m.act.assign(g->n, Mat::identity(f, 1));
    m.name = "triv";
    return m;
}

KGModule permutation_module(const GroupPtr& g, Fp f, const Subgroup& h, std::string name) {
    auto reps = coset_reps(*g, h);
    uint32_t d = uint32_t(reps.size());
    std::vector<uint32_t> coset_of(g->n, 0);
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t e : h.elems) coset_of[g->op(reps[i], e)] = i;
    KGModule m;
    m.g = g;
    m.f = f;
    m.d = d;
    m.name = name.empty() ? "perm" : std::move(name);
    m.act.reserve(g->n);
    for (uint32_t s = 0; s < g->n; ++s) {
        Mat a(f, d, d);
        for (uint32_t i = 0; i < d; ++i) a.at(coset_of[g->op(s, reps[i])], i) = 1;
        m.act.push_back(std::move(a));
    }
    verify_table(m);
    return m;
}

KGModule regular_module(const GroupPtr& g, Fp f) {
    Subgroup triv;
    triv.elems = {0};
    KGModule m = permutation_module(g, f, triv, "reg");
    return m;
}

KGModule direct_sum(const KGModule& x, const KGModule& y) {
    if (x.g != y.g) throw std::invalid_argument("direct_sum: different groups");
    KGModule m;
    m.g = x.g;
    m.f = x.f;
    m.d = x.d + y.d;
    m.act.reserve(x.act.size());
    for (uint32_t s = 0; s < x.act.size(); ++s)
        m.act.push_back(ff::direct_sum(x.act[s], y.act[s]));
    m.name = x.name + "+" + y.name;
    return m;
}

KGModule dual(const KGModule& m) {
    KGModule out;
    out.g = m.g;
    out.f = m.f;
    out.d = m.d;
    out.act.reserve(m.act.size());
    for (uint32_t s = 0; s < m.act.size(); ++s)
        out.act.push_back(ff::transpose(m.act[m.g->inv(s)]));
    out.name = m.name + "*";
    return out;
}

KGModule restrict_to(const KGModule& m, const groups::InducedGroup& hg) {
    KGModule out;
    out.g = hg.grp;
    out.f = m.f;
    out.d = m.d;
    out.act.reserve(hg.grp->n);
    for (uint32_t i = 0; i < hg.grp->n; ++i) out.act.push_back(m.act[hg.to_parent[i]]);
    out.name = m.name + "|res";
    verify_table(out);
    return out;
}

KGModule induce(const GroupPtr& g, Fp f, const Subgroup& h, const groups::InducedGroup& hg,
                const KGModule& mh) {
    if (mh.g != hg.grp) throw std::invalid_argument("induce: module is not over the subgroup");
    auto reps = coset_reps(*g, h);
    uint32_t nr = uint32_t(reps.size());
    uint32_t dh = mh.d;
    // position of a parent element inside h.elems, for the factorization
    std::vector<uint32_t> h_index(g->n, UINT32_MAX);
    for (uint32_t i = 0; i < h.elems.size(); ++i) h_index[h.elems[i]] = i;
    std::vector<uint32_t> coset_of(g->n, 0);
    for (uint32_t i = 0; i < nr; ++i)
        for (uint32_t e : h.elems) coset_of[g->op(reps[i], e)] = i;
    KGModule out;
    out.g = g;
    out.f = f;
    out.d = nr * dh;
    out.name = "ind(" + mh.name + ")";
    out.act.reserve(g->n);
    for (uint32_t s = 0; s < g->n; ++s) {
        Mat a(f, out.d, out.d);
        for (uint32_t i = 0; i < nr; ++i) {
            uint32_t sx = g->op(s, reps[i]);
            uint32_t j = coset_of[sx];
            // s r_i = r_j t with t in H
            uint32_t t = g->op(g->inv(reps[j]), sx);
            uint32_t th = h_index[t];
            if (th == UINT32_MAX) throw std::logic_error("induce: coset factorization failed");
            const Mat& blk = mh.act[th];
            for (uint32_t r = 0; r < dh; ++r)
                for (uint32_t c = 0; c < dh; ++c) a.at(j * dh + r, i * dh + c) = blk.at(r, c);
        }
        out.act.push_back(std::move(a));
    }
    verify_table(out);
    return out;
}

Mat fixed_points(const KGModule& m, const std::vector<uint32_t>& elems) {
    const Fp& f = m.f;
    uint32_t nrows = 0;
    for (uint32_t e : elems)
        if (e != 0) nrows += m.d;
    Mat c(f, nrows, m.d);
    uint32_t at = 0;
    for (uint32_t e : elems) {
        if (e == 0) continue;
        const Mat& a = m.act[e];
        for (uint32_t r = 0; r < m.d; ++r, ++at)
            for (uint32_t j = 0; j < m.d; ++j)
                c.at(at, j) = f.sub(a.at(r, j), r == j ? 1u : 0u);
    }
    return nrows ? ff::kernel(c) : Mat::identity(f, m.d);
}

Mat trace_map(const KGModule& m, const groups::Group& g, const Subgroup& h, const Subgroup& k) {
    // representatives of K/H taken inside K
    std::vector<char> seen(g.n, 0);
    Mat t(m.f, m.d, m.d);
    for (uint32_t x : k.elems) {
        if (seen[x]) continue;
        for (uint32_t e : h.elems) seen[g.op(x, e)] = 1;
        t = ff::add(t, m.act[x]);
    }
    return t;
}

BrauerQuotient brauer_quotient(const KGModule& m, const groups::SubgroupLattice& lat,
                               uint32_t p_sub_id) {
    const groups::Subgroup& p = lat.subgroups[p_sub_id];
    {
        uint32_t o = p.order();
        while (o % m.f.p == 0) o /= m.f.p;
        if (o != 1) throw std::invalid_argument("brauer_quotient: not a p-subgroup");
    }
    BrauerQuotient out;
    out.fixed = fixed_points(m, p.elems);
    RowAccum acc(m.f, m.d);
    for (uint32_t q_id : lat.maximal_proper_in(p_sub_id)) {
        Mat t = trace_map(m, *lat.g, lat.subgroups[q_id], p);
        Mat fq = fixed_points(m, lat.subgroups[q_id].elems);
        for (uint32_t r = 0; r < fq.rows; ++r) {
            auto v = matvec(t, mat_row(fq, r));
            acc.insert(v.data());
        }
    }
    out.traced = acc.basis();
    out.dim = out.fixed.rows - out.traced.rows;
    return out;
}

std::vector<Mat> hom_basis(const KGModule& m, const KGModule& n) {
    if (m.g != n.g) throw std::invalid_argument("hom_basis: different groups");
    const Fp& f = m.f;
    uint32_t unknowns = n.d * m.d;
    if (unknowns == 0) return {};
    if (unknowns > 4000) throw std::runtime_error("hom_basis: solve too large");
    const auto& gens = m.g->gens;
    Mat c(f, uint32_t(gens.size()) * unknowns, unknowns);
    uint32_t at = 0;
    auto idx = [&](uint32_t r, uint32_t k) { return r * m.d + k; };
    for (uint32_t s : gens) {
        // X act_M(s) - act_N(s) X = 0
        for (uint32_t r = 0; r < n.d; ++r)
            for (uint32_t col = 0; col < m.d; ++col, ++at) {
                for (uint32_t k = 0; k < m.d; ++k)
                    c.at(at, idx(r, k)) = f.add(c.at(at, idx(r, k)), m.act[s].at(k, col));
                for (uint32_t k = 0; k < n.d; ++k)
                    c.at(at, idx(k, col)) = f.sub(c.at(at, idx(k, col)), n.act[s].at(r, k));
            }
    }
    Mat ker = ff::kernel(c);
    std::vector<Mat> out;
    out.reserve(ker.rows);
    for (uint32_t v = 0; v < ker.rows; ++v) {
        Mat x(f, n.d, m.d);
        for (uint32_t r = 0; r < n.d; ++r)
            for (uint32_t k = 0; k < m.d; ++k) x.at(r, k) = ker.at(v, idx(r, k));
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<Mat> iso_kgmod(const KGModule& m, const KGModule& n, uint64_t seed) {
    if (m.g != n.g || m.d != n.d) return std::nullopt;
    if (m.d == 0) return Mat(m.f, 0, 0);
    auto homs = hom_basis(m, n);
    if (homs.empty()) return std::nullopt;
    const Fp& f = m.f;
    uint32_t hd = uint32_t(homs.size());
    auto combine = [&](const std::vector<uint32_t>& w) {
        Mat acc(f, m.d, m.d);
        for (uint32_t i = 0; i < hd; ++i)
            if (w[i]) acc = ff::add(acc, ff::scale(homs[i], w[i]));
        return acc;
    };
    {
        Mat h = combine(std::vector<uint32_t>(hd, 1));
        if (ff::is_invertible(h)) return h;
    }
    for (uint32_t i = 0; i < hd; ++i)
        if (ff::is_invertible(homs[i])) return homs[i];
    std::mt19937_64 rng(seed);
    for (uint32_t it = 0; it < 64; ++it) {
        std::vector<uint32_t> w(hd);
        for (auto& x : w) x = uint32_t(rng() % f.p);
        Mat h = combine(w);
        if (ff::is_invertible(h)) return h;
    }
    uint64_t total = 1;
    for (uint32_t i = 0; i < hd && total <= 700000; ++i) total *= f.p;
    if (hd <= 12 && total <= 700000) {
        std::vector<uint32_t> w(hd, 0);
        for (;;) {
            uint32_t pos = 0;
            while (pos < hd && w[pos] + 1 == f.p) w[pos++] = 0;
            if (pos == hd) break;
            ++w[pos];
            Mat h = combine(w);
            if (ff::is_invertible(h)) return h;
        }
    }
    return std::nullopt;
}

Mat radical_vectors(const KGModule& m) {
    if (!is_p_group(m)) throw std::invalid_argument("radical_vectors: p-group only");
    const Fp& f = m.f;
    RowAccum acc(f, m.d);
    for (uint32_t s : m.g->gens) {
        Mat dlt = ff::sub(m.act[s], Mat::identity(f, m.d));
        Mat t = ff::transpose(dlt);
        for (uint32_t c = 0; c < t.rows; ++c) acc.insert_row(t, c);
    }
    return acc.basis();
}

std::vector<uint32_t> loewy_layers(const KGModule& m) {
    if (!is_p_group(m)) throw std::invalid_argument("loewy_layers: p-group only");
    const Fp& f = m.f;
    std::vector<uint32_t> layers;
    Mat w = Mat::identity(f, m.d);
    while (w.rows > 0) {
        RowAccum acc(f, m.d);
        for (uint32_t s : m.g->gens) {
            Mat dlt = ff::sub(m.act[s], Mat::identity(f, m.d));
            Mat img = ff::transpose(ff::mul(dlt, ff::transpose(w)));
            for (uint32_t c = 0; c < img.rows; ++c) acc.insert_row(img, c);
        }
        Mat next = acc.basis();
        layers.push_back(w.rows - next.rows);
        w = std::move(next);
    }
    return layers;
}

CoverData minimal_cover(const KGModule& m, uint64_t seed) {
    if (!is_p_group(m)) throw std::invalid_argument("minimal_cover: p-group only");
    const Fp& f = m.f;
    const groups::Group& g = *m.g;
    if (m.d == 0) throw std::invalid_argument("minimal_cover: zero module");
    Mat rad = radical_vectors(m);
    // seeded choice of a lift of the top basis
    std::vector<uint32_t> order(m.d);
    for (uint32_t i = 0; i < m.d; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (uint32_t i = m.d; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<std::vector<uint32_t>> gens_m;
    {
        RowAccum acc(f, m.d);
        acc.insert_all(rad);
        for (uint32_t i : order) {
            std::vector<uint32_t> e(m.d, 0);
            e[i] = 1;
            if (acc.insert(e.data())) gens_m.push_back(std::move(e));
        }
    }
    uint32_t t = uint32_t(gens_m.size());
    if (t == 0) throw std::logic_error("minimal_cover: no generators for a nonzero module");
    CoverData out;
    // cover (kG)^t -> M, basis (copy i, group element x) |-> act(x) gen_i
    uint32_t dfree = t * g.n;
    out.free.g = m.g;
    out.free.f = f;
    out.free.d = dfree;
    out.free.name = "free^" + std::to_string(t);
    out.free.act.reserve(g.n);
    for (uint32_t s = 0; s < g.n; ++s) {
        Mat a(f, dfree, dfree);
        for (uint32_t i = 0; i < t; ++i)
            for (uint32_t x = 0; x < g.n; ++x) a.at(i * g.n + g.op(s, x), i * g.n + x) = 1;
        out.free.act.push_back(std::move(a));
    }
    out.onto = Mat(f, m.d, dfree);
    for (uint32_t i = 0; i < t; ++i)
        for (uint32_t x = 0; x < g.n; ++x) {
            auto img = matvec(m.act[x], gens_m[i]);
            for (uint32_t r = 0; r < m.d; ++r) out.onto.at(r, i * g.n + x) = img[r];
        }
    if (ff::rank(out.onto) != m.d) throw std::logic_error("minimal_cover: not surjective");
    out.rows = ff::kernel(out.onto);
    out.kernel.g = m.g;
    out.kernel.f = f;
    out.kernel.d = out.rows.rows;
    out.kernel.name = "syz(" + m.name + ")";
    Mat kt = ff::transpose(out.rows);
    out.kernel.act.reserve(g.n);
    for (uint32_t s = 0; s < g.n; ++s) {
        if (out.kernel.d == 0) {
            out.kernel.act.push_back(Mat(f, 0, 0));
            continue;
        }
        Mat img = ff::mul(out.free.act[s], kt);
        auto sol = ff::solve(kt, img);
        if (!sol) throw std::logic_error("minimal_cover: kernel is not stable");
        out.kernel.act.push_back(std::move(*sol));
    }
    verify_table(out.kernel);
    return out;
}

KGModule syzygy(const KGModule& m, uint64_t seed) {
    if (m.d == 0) return m;
    return minimal_cover(m, seed).kernel;
}

KGModule syzygy_steps(const KGModule& m, uint32_t steps, uint64_t seed) {
    KGModule cur = m;
    for (uint32_t i = 0; i < steps; ++i) cur = syzygy(cur, seed + i);
    return cur;
}

EndAlgebra end_algebra(const KGModule& m) {
    EndAlgebra out;
    out.basis = hom_basis(m, m);
    uint32_t ne = uint32_t(out.basis.size());
    if (ne == 0) throw std::runtime_error("end_algebra: empty endomorphism ring");
    const Fp& f = m.f;
    // flattened basis for coordinate solves
    Mat flat(f, ne, m.d * m.d);
    for (uint32_t i = 0; i < ne; ++i)
        for (uint32_t r = 0; r < m.d; ++r)
            for (uint32_t c = 0; c < m.d; ++c)
                flat.at(i, r * m.d + c) = out.basis[i].at(r, c);
    auto coords = [&](const Mat& x) {
        Mat v(f, 1, m.d * m.d);
        for (uint32_t r = 0; r < m.d; ++r)
            for (uint32_t c = 0; c < m.d; ++c) v.at(0, r * m.d + c) = x.at(r, c);
        auto sol = ff::solve_left(flat, v);
        if (!sol) throw std::runtime_error("end_algebra: product leaves the span");
        return mat_row(*sol, 0);
    };
    std::vector<fdalg::ProdEntry> entries;
    for (uint32_t i = 0; i < ne; ++i)
        for (uint32_t j = 0; j < ne; ++j) {
            // product in composition order: (e_i * e_j)(v) = e_j(e_i(v))
            auto cc = coords(ff::mul(out.basis[j], out.basis[i]));
            fdalg::ProdEntry e{i, j, {}};
            for (uint32_t k = 0; k < ne; ++k)
                if (cc[k]) e.terms.push_back({k, cc[k]});
            if (!e.terms.empty()) entries.push_back(std::move(e));
        }
    out.alg = fdalg::make_algebra(f, ne, coords(Mat::identity(f, m.d)), entries,
                                  "End(" + m.name + ")");
    return out;
}

std::vector<KGModule> decompose(const KGModule& m, uint64_t seed) {
    if (m.d == 0) return {};
    EndAlgebra ea = end_algebra(m);
    auto dec = fdalg::regular_decomposition(ea.alg, seed);
    const Fp& f = m.f;
    std::vector<KGModule> out;
    uint32_t total = 0;
    uint32_t tag = 0;
    for (const auto& idem : dec.prim_idems) {
        Mat e(f, m.d, m.d);
        for (uint32_t k = 0; k < idem.size(); ++k)
            if (idem[k]) e = ff::add(e, ff::scale(ea.basis[k], idem[k]));
        // image of an idempotent endomorphism is a submodule
        RowAccum acc(f, m.d);
        Mat et = ff::transpose(e);
        for (uint32_t c = 0; c < et.rows; ++c) acc.insert_row(et, c);
        Mat rows = acc.basis();
        KGModule part;
        part.g = m.g;
        part.f = f;
        part.d = rows.rows;
        part.name = m.name + "#" + std::to_string(tag++);
        Mat rt = ff::transpose(rows);
        part.act.reserve(m.act.size());
        for (uint32_t s = 0; s < m.act.size(); ++s) {
            auto sol = ff::solve(rt, ff::mul(m.act[s], rt));
            if (!sol) throw std::logic_error("decompose: summand is not stable");
            part.act.push_back(std::move(*sol));
        }
        verify_table(part);
        total += part.d;
        out.push_back(std::move(part));
    }
    if (total != m.d) throw std::logic_error("decompose: dimensions do not add up");
    return out;
}

}  // namespace mackeylab::kgmod
