#include "mackeylab/fdalg.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace mackeylab::fdalg {

using ff::RowAccum;
using ff::Rref;

namespace {

std::vector<uint32_t> indicator(uint32_t n, uint32_t i) {
    std::vector<uint32_t> v(n, 0);
    v[i] = 1;
    return v;
}

std::vector<uint32_t> mat_row(const Mat& m, uint32_t i) {
    return std::vector<uint32_t>(m.a.begin() + size_t(i) * m.cols,
                                 m.a.begin() + size_t(i + 1) * m.cols);
}

Mat rows_to_mat(const Fp& f, uint32_t cols, const std::vector<std::vector<uint32_t>>& rows) {
    Mat m(f, uint32_t(rows.size()), cols);
    for (uint32_t i = 0; i < rows.size(); ++i)
        for (uint32_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

// b_i * y for dense y
std::vector<uint32_t> basis_mul_left(const FDAlgebra& a, uint32_t i, const std::vector<uint32_t>& y) {
    std::vector<uint32_t> z(a.n, 0);
    for (uint32_t j = 0; j < a.n; ++j) {
        if (y[j] == 0) continue;
        for (const Term& t : a.prod(i, j)) z[t.k] = a.f.add(z[t.k], a.f.mul(y[j], t.c));
    }
    return z;
}

// y * b_i for dense y
std::vector<uint32_t> basis_mul_right(const FDAlgebra& a, const std::vector<uint32_t>& y, uint32_t i) {
    std::vector<uint32_t> z(a.n, 0);
    for (uint32_t j = 0; j < a.n; ++j) {
        if (y[j] == 0) continue;
        for (const Term& t : a.prod(j, i)) z[t.k] = a.f.add(z[t.k], a.f.mul(y[j], t.c));
    }
    return z;
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

}  // namespace

// ---- element arithmetic ---- //

std::vector<uint32_t> FDAlgebra::mul(const std::vector<uint32_t>& x,
                                     const std::vector<uint32_t>& y) const {
    std::vector<uint32_t> z(n, 0);
    for (uint32_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (uint32_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            uint32_t c = f.mul(x[i], y[j]);
            for (const Term& t : prod(i, j)) z[t.k] = f.add(z[t.k], f.mul(c, t.c));
        }
    }
    return z;
}

std::vector<uint32_t> FDAlgebra::pow_elem(const std::vector<uint32_t>& x, uint64_t e) const {
    std::vector<uint32_t> acc = unit;
    std::vector<uint32_t> base = x;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return acc;
}

Mat FDAlgebra::left_mult(const std::vector<uint32_t>& x) const {
    Mat m(f, n, n);
    for (uint32_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (uint32_t j = 0; j < n; ++j)
            for (const Term& t : prod(i, j))
                m.at(t.k, j) = f.add(m.at(t.k, j), f.mul(x[i], t.c));
    }
    return m;
}

// ---- construction ---- //

namespace {

AlgPtr build_algebra(Fp f, uint32_t n, std::vector<uint32_t> unit,
                     const std::vector<ProdEntry>& entries, uint32_t nfam,
                     std::vector<uint32_t> src, std::vector<uint32_t> dst,
                     std::vector<uint32_t> fam_idem, std::vector<std::string> fam_label,
                     std::string descriptor) {
    if (n == 0 || n > 1200) throw std::invalid_argument("algebra: basis size out of range");
    auto ap = std::make_shared<FDAlgebra>();
    FDAlgebra& a = *ap;
    a.f = f;
    a.n = n;
    a.descriptor = std::move(descriptor);
    a.table.assign(size_t(n) * n, {});
    if (unit.size() != n) throw std::invalid_argument("algebra: unit size");
    for (auto& c : unit) c %= f.p;
    a.unit = std::move(unit);

    bool fam = !fam_idem.empty();
    if (fam) {
        if (fam_idem.size() != nfam || src.size() != n || dst.size() != n)
            throw std::invalid_argument("algebra: grading sizes");
        a.nfam = nfam;
        a.src = std::move(src);
        a.dst = std::move(dst);
        a.fam_idem = std::move(fam_idem);
        if (fam_label.size() != nfam) {
            fam_label.resize(nfam);
            for (uint32_t t = 0; t < nfam; ++t)
                if (fam_label[t].empty()) fam_label[t] = "t" + std::to_string(t);
        }
        a.fam_label = std::move(fam_label);
        for (uint32_t t = 0; t < nfam; ++t) {
            uint32_t e = a.fam_idem[t];
            if (e >= n || a.src[e] != t || a.dst[e] != t)
                throw std::invalid_argument("algebra: family idempotent grading");
        }
        for (uint32_t i = 0; i < n; ++i)
            if (a.src[i] >= nfam || a.dst[i] >= nfam)
                throw std::invalid_argument("algebra: grading out of range");
    } else {
        if (n > 200) throw std::invalid_argument("algebra: ungraded basis too large to verify");
        a.nfam = 1;
        a.src.assign(n, 0);
        a.dst.assign(n, 0);
    }

    // merge entries into the table
    {
        std::vector<uint32_t> scratch(n, 0);
        std::vector<uint32_t> touched;
        for (const ProdEntry& e : entries) {
            if (e.i >= n || e.j >= n) throw std::invalid_argument("algebra: product index");
            auto& cell = a.table[size_t(e.i) * n + e.j];
            if (!cell.empty()) {  // merge duplicates
                for (const Term& t : cell) {
                    if (scratch[t.k] == 0) touched.push_back(t.k);
                    scratch[t.k] = f.add(scratch[t.k], t.c);
                }
                cell.clear();
            }
            for (const Term& t : e.terms) {
                if (t.k >= n) throw std::invalid_argument("algebra: product term index");
                uint32_t c = t.c % f.p;
                if (scratch[t.k] == 0 && c != 0) touched.push_back(t.k);
                scratch[t.k] = f.add(scratch[t.k], c);
            }
            std::sort(touched.begin(), touched.end());
            for (uint32_t k : touched) {
                if (scratch[k]) cell.push_back({k, scratch[k]});
                scratch[k] = 0;
            }
            touched.clear();
        }
    }

    // grading consistency of the table
    if (fam) {
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) {
                const auto& cell = a.prod(i, j);
                if (a.dst[i] != a.src[j]) {
                    if (!cell.empty()) throw std::invalid_argument("algebra: non-composable product");
                    continue;
                }
                for (const Term& t : cell)
                    if (a.src[t.k] != a.src[i] || a.dst[t.k] != a.dst[j])
                        throw std::invalid_argument("algebra: product breaks grading");
            }
        // unit = sum of family idempotents
        std::vector<uint32_t> u(n, 0);
        for (uint32_t e : a.fam_idem) u[e] = f.add(u[e], 1);
        if (u != a.unit) throw std::invalid_argument("algebra: unit is not the idempotent sum");
        for (uint32_t i = 0; i < n; ++i) {
            const auto& le = a.prod(a.fam_idem[a.src[i]], i);
            const auto& re = a.prod(i, a.fam_idem[a.dst[i]]);
            bool ok = le.size() == 1 && le[0].k == i && le[0].c == 1 && re.size() == 1 &&
                      re[0].k == i && re[0].c == 1;
            if (!ok) throw std::invalid_argument("algebra: family idempotents are not units on blocks");
        }
    } else {
        for (uint32_t j = 0; j < n; ++j) {
            if (a.mul(a.unit, indicator(n, j)) != indicator(n, j) ||
                a.mul(indicator(n, j), a.unit) != indicator(n, j))
                throw std::invalid_argument("algebra: unit law fails");
        }
    }

    // associativity: (b_i b_j) b_k == b_i (b_j b_k); pairs with both products
    // empty contribute zero on both sides and are skipped
    {
        std::vector<uint32_t> acc1(n, 0), acc2(n, 0);
        std::vector<uint32_t> touched1, touched2;
        std::vector<char> in_left(n, 0);
        std::vector<uint32_t> left, right;
        auto check_triple = [&](uint32_t i, uint32_t j, uint32_t k) {
            for (const Term& t : a.prod(i, j))
                for (const Term& s : a.prod(t.k, k)) {
                    if (acc1[s.k] == 0) touched1.push_back(s.k);
                    acc1[s.k] = f.add(acc1[s.k], f.mul(t.c, s.c));
                }
            for (const Term& t : a.prod(j, k))
                for (const Term& s : a.prod(i, t.k)) {
                    if (acc2[s.k] == 0) touched2.push_back(s.k);
                    acc2[s.k] = f.add(acc2[s.k], f.mul(t.c, s.c));
                }
            bool ok = true;
            for (uint32_t q : touched1)
                if (acc1[q] != acc2[q]) ok = false;
            for (uint32_t q : touched2)
                if (acc1[q] != acc2[q]) ok = false;
            for (uint32_t q : touched1) acc1[q] = 0;
            for (uint32_t q : touched2) acc2[q] = 0;
            touched1.clear();
            touched2.clear();
            if (!ok) throw std::invalid_argument("algebra: associativity fails");
        };
        for (uint32_t j = 0; j < n; ++j) {
            left.clear();
            right.clear();
            for (uint32_t i = 0; i < n; ++i) {
                if (!a.prod(i, j).empty()) {
                    left.push_back(i);
                    in_left[i] = 1;
                }
                if (!a.prod(j, i).empty()) right.push_back(i);
            }
            for (uint32_t i : left)
                for (uint32_t k = 0; k < n; ++k) check_triple(i, j, k);
            for (uint32_t k : right)
                for (uint32_t i = 0; i < n; ++i)
                    if (!in_left[i]) check_triple(i, j, k);
            for (uint32_t i : left) in_left[i] = 0;
        }
    }
    return ap;
}

}  // namespace

AlgPtr make_algebra(Fp f, uint32_t n, std::vector<uint32_t> unit,
                    const std::vector<ProdEntry>& entries, std::string descriptor) {
    return build_algebra(f, n, std::move(unit), entries, 1, {}, {}, {}, {}, std::move(descriptor));
}

AlgPtr make_graded_algebra(Fp f, uint32_t n, const std::vector<ProdEntry>& entries, uint32_t nfam,
                           std::vector<uint32_t> src, std::vector<uint32_t> dst,
                           std::vector<uint32_t> fam_idem, std::vector<std::string> fam_label,
                           std::string descriptor) {
    std::vector<uint32_t> unit(n, 0);
    for (uint32_t e : fam_idem) {
        if (e >= n) throw std::invalid_argument("algebra: family idempotent index");
        unit[e] = f.add(unit[e], 1);
    }
    return build_algebra(f, n, std::move(unit), entries, nfam, std::move(src), std::move(dst),
                         std::move(fam_idem), std::move(fam_label), std::move(descriptor));
}

AlgPtr opposite(const AlgPtr& ap) {
    const FDAlgebra& a = *ap;
    std::vector<ProdEntry> entries;
    for (uint32_t i = 0; i < a.n; ++i)
        for (uint32_t j = 0; j < a.n; ++j) {
            const auto& cell = a.prod(j, i);
            if (!cell.empty()) entries.push_back({i, j, cell});
        }
    if (a.has_family())
        return build_algebra(a.f, a.n, a.unit, entries, a.nfam, a.dst, a.src, a.fam_idem,
                             a.fam_label, a.descriptor + "^op");
    return build_algebra(a.f, a.n, a.unit, entries, 1, {}, {}, {}, {}, a.descriptor + "^op");
}

AlgPtr group_algebra(const groups::GroupPtr& g, Fp f) {
    uint32_t n = g->n;
    std::vector<ProdEntry> entries;
    entries.reserve(size_t(n) * n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) entries.push_back({i, j, {{g->op(i, j), 1}}});
    return build_algebra(f, n, indicator(n, 0), entries, 1, std::vector<uint32_t>(n, 0),
                         std::vector<uint32_t>(n, 0), {0}, {"*"},
                         "k[" + g->descriptor + "]");
}

// ---- radical: family blocks ---- //

std::optional<Radical> try_radical_family(const AlgPtr& ap) {
    const FDAlgebra& a = *ap;
    if (!a.has_family()) return std::nullopt;
    const Fp& f = a.f;
    Radical r;
    r.method = "family-blocks";
    r.block_elems.resize(a.nfam);
    r.block_chi.resize(a.nfam);
    for (uint32_t i = 0; i < a.n; ++i) {
        if (a.src[i] == a.dst[i])
            r.block_elems[a.src[i]].push_back(i);
        else
            r.offdiag.push_back(i);
    }
    // residue character: u^(p^m) must be a scalar multiple of the block unit
    for (uint32_t t = 0; t < a.nfam; ++t) {
        const auto& blk = r.block_elems[t];
        auto& chi = r.block_chi[t];
        chi.assign(blk.size(), 0);
        uint64_t pm = 1;
        while (pm < blk.size() + 2) pm *= f.p;
        for (uint32_t idx = 0; idx < blk.size(); ++idx) {
            if (blk[idx] == a.fam_idem[t]) {
                chi[idx] = 1;
                continue;
            }
            auto z = a.pow_elem(indicator(a.n, blk[idx]), pm);
            uint32_t c = z[a.fam_idem[t]];
            z[a.fam_idem[t]] = 0;
            for (uint32_t v : z)
                if (v != 0) return std::nullopt;  // block is not local
            chi[idx] = c;
        }
    }
    // candidate J = off-diagonal span + per-block character kernels
    std::vector<std::vector<uint32_t>> jrows;
    for (uint32_t b : r.offdiag) jrows.push_back(indicator(a.n, b));
    std::vector<std::vector<std::vector<uint32_t>>> block_rows(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t) {
        const auto& blk = r.block_elems[t];
        for (uint32_t idx = 0; idx < blk.size(); ++idx) {
            if (blk[idx] == a.fam_idem[t]) continue;
            auto v = indicator(a.n, blk[idx]);
            v[a.fam_idem[t]] = f.neg(r.block_chi[t][idx]);
            block_rows[t].push_back(v);
            jrows.push_back(std::move(v));
        }
    }
    // per-block nilpotency of the candidate: span of k-fold products dies
    for (uint32_t t = 0; t < a.nfam; ++t) {
        const auto& base = block_rows[t];
        if (base.empty()) continue;
        std::vector<std::vector<uint32_t>> cur = base;
        bool dead = false;
        for (uint32_t iter = 0; iter <= r.block_elems[t].size() + 1; ++iter) {
            RowAccum acc(f, a.n);
            for (const auto& x : base)
                for (const auto& y : cur) acc.insert(a.mul(x, y).data());
            if (acc.dim() == 0) {
                dead = true;
                break;
            }
            Mat b = acc.basis();
            cur.clear();
            for (uint32_t i = 0; i < b.rows; ++i) cur.push_back(mat_row(b, i));
        }
        if (!dead) return std::nullopt;
    }
    // membership in J is a character condition per block
    auto in_j = [&](const std::vector<uint32_t>& v) {
        for (uint32_t t = 0; t < a.nfam; ++t) {
            uint32_t acc = 0;
            const auto& blk = r.block_elems[t];
            for (uint32_t idx = 0; idx < blk.size(); ++idx)
                acc = f.add(acc, f.mul(v[blk[idx]], r.block_chi[t][idx]));
            if (acc != 0) return false;
        }
        return true;
    };
    // two-sided ideal check; with local nilpotent blocks this pins J = rad(A)
    for (uint32_t i = 0; i < a.n; ++i)
        for (const auto& j : jrows) {
            if (!in_j(basis_mul_left(a, i, j))) return std::nullopt;
            if (!in_j(basis_mul_right(a, j, i))) return std::nullopt;
        }
    r.basis = ff::row_space(rows_to_mat(f, a.n, jrows));
    r.family_local = true;
    return r;
}

// ---- radical: charpoly coefficient chain ---- //

namespace {

Mat chain_kernel(const AlgPtr& ap) {
    const FDAlgebra& a = *ap;
    const Fp& f = a.f;
    uint32_t n = a.n;
    // tau[k] = trace of left multiplication by b_k
    std::vector<uint32_t> tau(n, 0);
    for (uint32_t k = 0; k < n; ++k)
        for (uint32_t j = 0; j < n; ++j)
            for (const Term& t : a.prod(k, j))
                if (t.k == j) tau[k] = f.add(tau[k], t.c);
    Mat b = Mat::identity(f, n);
    for (uint64_t q = 1; q <= n; q *= f.p) {
        uint32_t d = b.rows;
        if (d == 0) break;
        Mat c(f, d, d);
        for (uint32_t ib = 0; ib < d; ++ib) {
            auto y = mat_row(b, ib);
            for (uint32_t ia = 0; ia < d; ++ia) {
                auto z = a.mul(mat_row(b, ia), y);
                if (q == 1) {
                    uint32_t acc = 0;
                    for (uint32_t k = 0; k < n; ++k) acc = f.add(acc, f.mul(z[k], tau[k]));
                    c.at(ib, ia) = acc;
                } else {
                    poly::FpPoly chi = poly::char_poly(a.left_mult(z));
                    c.at(ib, ia) = chi.c[n - q];
                }
            }
        }
        b = ff::mul(ff::kernel(c), b);
    }
    return ff::row_space(b);
}

void verify_radical_rows(const AlgPtr& ap, const Mat& j);
AlgPtr quotient_algebra(const AlgPtr& ap, const Rref& jr);

void verify_radical_rows(const AlgPtr& ap, const Mat& j) {
    const FDAlgebra& a = *ap;
    const Fp& f = a.f;
    Rref jr = ff::rref(j);
    // two-sided ideal
    for (uint32_t i = 0; i < a.n; ++i)
        for (uint32_t rrow = 0; rrow < j.rows; ++rrow) {
            auto v = mat_row(j, rrow);
            Mat z1 = rows_to_mat(f, a.n, {basis_mul_left(a, i, v)});
            Mat z2 = rows_to_mat(f, a.n, {basis_mul_right(a, v, i)});
            if (!ff::in_row_space(jr, z1) || !ff::in_row_space(jr, z2))
                throw std::runtime_error("radical: candidate is not an ideal");
        }
    // nilpotency: for an ideal the power chain is monotone
    {
        std::vector<std::vector<uint32_t>> base, cur;
        for (uint32_t i = 0; i < j.rows; ++i) base.push_back(mat_row(j, i));
        cur = base;
        uint32_t prev = uint32_t(cur.size());
        while (prev != 0) {
            RowAccum acc(f, a.n);
            for (const auto& x : base)
                for (const auto& y : cur) acc.insert(a.mul(x, y).data());
            if (acc.dim() == 0) break;
            if (acc.dim() >= prev) throw std::runtime_error("radical: candidate not nilpotent");
            prev = acc.dim();
            Mat bm = acc.basis();
            cur.clear();
            for (uint32_t i = 0; i < bm.rows; ++i) cur.push_back(mat_row(bm, i));
        }
    }
    // semisimple quotient: the chain on A/J must come back empty
    AlgPtr q = quotient_algebra(ap, jr);
    if (q->n > 0 && chain_kernel(q).rows != 0)
        throw std::runtime_error("radical: quotient re-run is nonzero");
}

AlgPtr quotient_algebra(const AlgPtr& ap, const Rref& jr) {
    const FDAlgebra& a = *ap;
    const Fp& f = a.f;
    std::vector<uint32_t> comp;  // complement coordinate positions
    {
        std::vector<char> is_piv(a.n, 0);
        for (uint32_t p : jr.pivots) is_piv[p] = 1;
        for (uint32_t i = 0; i < a.n; ++i)
            if (!is_piv[i]) comp.push_back(i);
    }
    auto reduce = [&](std::vector<uint32_t> v) {
        for (uint32_t rrow = 0; rrow < jr.m.rows; ++rrow) {
            uint32_t c = v[jr.pivots[rrow]];
            if (c == 0) continue;
            for (uint32_t k = 0; k < a.n; ++k) v[k] = f.sub(v[k], f.mul(c, jr.m.at(rrow, k)));
        }
        std::vector<uint32_t> out(comp.size());
        for (uint32_t q = 0; q < comp.size(); ++q) out[q] = v[comp[q]];
        return out;
    };
    uint32_t qn = uint32_t(comp.size());
    std::vector<ProdEntry> entries;
    for (uint32_t qi = 0; qi < qn; ++qi)
        for (uint32_t qj = 0; qj < qn; ++qj) {
            std::vector<uint32_t> z(a.n, 0);
            for (const Term& t : a.prod(comp[qi], comp[qj])) z[t.k] = t.c;
            auto red = reduce(std::move(z));
            ProdEntry e{qi, qj, {}};
            for (uint32_t k = 0; k < qn; ++k)
                if (red[k]) e.terms.push_back({k, red[k]});
            if (!e.terms.empty()) entries.push_back(std::move(e));
        }
    if (qn == 0) {
        auto empty = std::make_shared<FDAlgebra>();
        empty->f = f;
        empty->n = 0;
        return empty;
    }
    return make_algebra(f, qn, reduce(a.unit), entries, a.descriptor + "/rad");
}

}  // namespace

Mat radical_charpoly_chain(const AlgPtr& ap) {
    if (ap->n > 150) throw std::runtime_error("radical: charpoly chain bound exceeded");
    Mat j = chain_kernel(ap);
    verify_radical_rows(ap, j);
    return j;
}

Radical radical(const AlgPtr& ap) {
    if (auto r = try_radical_family(ap)) return *r;
    Radical r;
    r.basis = radical_charpoly_chain(ap);
    r.method = "charpoly-chain";
    return r;
}

// ---- radical: chop cross-check ---- //

Mat radical_by_chop(const AlgPtr& ap, uint64_t seed) {
    const FDAlgebra& a = *ap;
    const Fp& f = a.f;
    uint32_t n = a.n;
    if (n > 100) throw std::runtime_error("radical: chop bound exceeded");
    std::mt19937_64 rng(seed);

    struct Node {
        std::vector<Mat> rho;  // per basis element, d x d
    };
    std::deque<Node> work;
    {
        Node root;
        for (uint32_t i = 0; i < n; ++i) root.rho.push_back(a.left_mult(indicator(n, i)));
        work.push_back(std::move(root));
    }
    std::vector<Node> factors;
    while (!work.empty()) {
        Node nd = std::move(work.front());
        work.pop_front();
        uint32_t d = nd.rho.empty() ? 0 : nd.rho[0].rows;
        if (d == 0) continue;
        auto spin = [&](const std::vector<uint32_t>& v) {
            RowAccum acc(f, d);
            std::deque<std::vector<uint32_t>> queue;
            if (acc.insert(v.data())) queue.push_back(v);
            while (!queue.empty() && acc.dim() < d) {
                auto w = std::move(queue.front());
                queue.pop_front();
                for (uint32_t i = 0; i < n && acc.dim() < d; ++i) {
                    auto u = matvec(nd.rho[i], w);
                    if (acc.insert(u.data())) queue.push_back(std::move(u));
                }
            }
            return acc.basis();
        };
        Mat sub(f, 0, 0);
        bool found = false;
        for (uint32_t c = 0; c < d + 24 && !found; ++c) {
            std::vector<uint32_t> v(d, 0);
            if (c < d)
                v[c] = 1;
            else
                for (auto& x : v) x = uint32_t(rng() % f.p);
            Mat s = spin(v);
            if (s.rows > 0 && s.rows < d) {
                sub = s;
                found = true;
            }
        }
        if (!found) {
            factors.push_back(std::move(nd));
            continue;
        }
        // restrict to the submodule
        Mat st = ff::transpose(sub);
        Node lower;
        for (uint32_t i = 0; i < n; ++i) {
            auto sol = ff::solve(st, ff::mul(nd.rho[i], st));
            if (!sol) throw std::runtime_error("chop: restriction failed");
            lower.rho.push_back(std::move(*sol));
        }
        // quotient module on complement coordinates
        Rref sr = ff::rref(sub);
        std::vector<uint32_t> comp;
        {
            std::vector<char> is_piv(d, 0);
            for (uint32_t p : sr.pivots) is_piv[p] = 1;
            for (uint32_t i = 0; i < d; ++i)
                if (!is_piv[i]) comp.push_back(i);
        }
        auto reduce = [&](std::vector<uint32_t> v) {
            for (uint32_t rrow = 0; rrow < sr.m.rows; ++rrow) {
                uint32_t c = v[sr.pivots[rrow]];
                if (c == 0) continue;
                for (uint32_t k = 0; k < d; ++k) v[k] = f.sub(v[k], f.mul(c, sr.m.at(rrow, k)));
            }
            std::vector<uint32_t> out(comp.size());
            for (uint32_t q = 0; q < comp.size(); ++q) out[q] = v[comp[q]];
            return out;
        };
        Node upper;
        uint32_t qd = uint32_t(comp.size());
        for (uint32_t i = 0; i < n; ++i) {
            Mat q(f, qd, qd);
            for (uint32_t c = 0; c < qd; ++c) {
                std::vector<uint32_t> e(d, 0);
                e[comp[c]] = 1;
                auto img = reduce(matvec(nd.rho[i], e));
                for (uint32_t r = 0; r < qd; ++r) q.at(r, c) = img[r];
            }
            upper.rho.push_back(std::move(q));
        }
        work.push_back(std::move(lower));
        work.push_back(std::move(upper));
    }
    // rad = { x : x annihilates every factor }
    uint32_t nrows = 0;
    for (const auto& fac : factors) {
        uint32_t s = fac.rho[0].rows;
        nrows += s * s;
    }
    Mat cond(f, nrows, n);
    uint32_t at = 0;
    for (const auto& fac : factors) {
        uint32_t s = fac.rho[0].rows;
        for (uint32_t r = 0; r < s; ++r)
            for (uint32_t c = 0; c < s; ++c, ++at)
                for (uint32_t i = 0; i < n; ++i) cond.at(at, i) = fac.rho[i].at(r, c);
    }
    return ff::row_space(ff::kernel(cond));
}

// ---- regular decomposition ---- //

namespace {

// minimal polynomial of z in the unital algebra (span of powers, unit e)
poly::FpPoly elem_min_poly(const FDAlgebra& a, const std::vector<uint32_t>& e,
                           const std::vector<uint32_t>& z) {
    const Fp& f = a.f;
    std::vector<std::vector<uint32_t>> pows = {e};
    RowAccum acc(f, a.n);
    acc.insert(e.data());
    std::vector<uint32_t> cur = e;
    for (;;) {
        cur = a.mul(cur, z);
        if (!acc.insert(cur.data())) break;
        pows.push_back(cur);
    }
    Mat p = rows_to_mat(f, a.n, pows);
    auto sol = ff::solve_left(p, rows_to_mat(f, a.n, {cur}));
    if (!sol) throw std::runtime_error("decomposition: min poly solve failed");
    std::vector<uint32_t> c(pows.size() + 1, 0);
    for (uint32_t i = 0; i < pows.size(); ++i) c[i] = f.neg(sol->at(0, i));
    c[pows.size()] = 1;
    return poly::make_poly(f, std::move(c));
}

std::vector<uint32_t> eval_in_algebra(const FDAlgebra& a, const poly::FpPoly& p,
                                      const std::vector<uint32_t>& e,
                                      const std::vector<uint32_t>& z) {
    std::vector<uint32_t> acc(a.n, 0);
    for (uint32_t d = uint32_t(p.c.size()); d-- > 0;) {
        acc = a.mul(acc, z);
        if (p.c[d] != 0)
            for (uint32_t k = 0; k < a.n; ++k)
                acc[k] = a.f.add(acc[k], a.f.mul(p.c[d], e[k]));
    }
    return acc;
}

// is eAe local? the residue eAe/rad can be a proper field extension, so
// test: commutative quotient whose Frobenius fixed space is one-dimensional
bool corner_is_local(const FDAlgebra& a, const Mat& eae, const Mat& rade) {
    const Fp& f = a.f;
    uint32_t m = eae.rows;
    uint32_t qdim = m - rade.rows;
    if (qdim == 0) return false;
    if (qdim == 1) return true;
    auto coords_of = [&](const std::vector<uint32_t>& w) {
        auto sol = ff::solve_left(eae, rows_to_mat(f, a.n, {w}));
        if (!sol) throw std::runtime_error("decomposition: corner coordinates failed");
        return mat_row(*sol, 0);
    };
    Mat rcoords(f, rade.rows, m);
    for (uint32_t r = 0; r < rade.rows; ++r) {
        auto c = coords_of(mat_row(rade, r));
        for (uint32_t k = 0; k < m; ++k) rcoords.at(r, k) = c[k];
    }
    Rref rr = ff::rref(rcoords);
    std::vector<uint32_t> comp;
    {
        std::vector<char> is_piv(m, 0);
        for (uint32_t p : rr.pivots) is_piv[p] = 1;
        for (uint32_t i = 0; i < m; ++i)
            if (!is_piv[i]) comp.push_back(i);
    }
    auto reduce = [&](std::vector<uint32_t> v) {
        for (uint32_t rrow = 0; rrow < rr.m.rows; ++rrow) {
            uint32_t c = v[rr.pivots[rrow]];
            if (c == 0) continue;
            for (uint32_t k = 0; k < m; ++k) v[k] = f.sub(v[k], f.mul(c, rr.m.at(rrow, k)));
        }
        std::vector<uint32_t> out(comp.size());
        for (uint32_t q = 0; q < comp.size(); ++q) out[q] = v[comp[q]];
        return out;
    };
    std::vector<std::vector<uint32_t>> reps;
    for (uint32_t i = 0; i < qdim; ++i) reps.push_back(mat_row(eae, comp[i]));
    // commutativity of the quotient
    for (uint32_t i = 0; i < qdim; ++i)
        for (uint32_t j = i + 1; j < qdim; ++j) {
            auto x = a.mul(reps[i], reps[j]);
            auto y = a.mul(reps[j], reps[i]);
            for (uint32_t k = 0; k < a.n; ++k) x[k] = f.sub(x[k], y[k]);
            auto red = reduce(coords_of(x));
            for (uint32_t v : red)
                if (v != 0) return false;
        }
    // fixed points of x -> x^p; on a product of fields this counts the factors
    Mat fr(f, qdim, qdim);
    for (uint32_t i = 0; i < qdim; ++i) {
        auto red = reduce(coords_of(a.pow_elem(reps[i], f.p)));
        for (uint32_t r = 0; r < qdim; ++r) fr.at(r, i) = red[r];
        fr.at(i, i) = f.sub(fr.at(i, i), 1);
    }
    return ff::kernel(fr).rows == 1;
}

}  // namespace

RegularDecomp regular_decomposition(const AlgPtr& ap, uint64_t seed) {
    const FDAlgebra& a = *ap;
    const Fp& f = a.f;
    RegularDecomp out;
    out.a = ap;
    out.rad = radical(ap);

    if (out.rad.family_local) {
        for (uint32_t t = 0; t < a.nfam; ++t) {
            out.prim_idems.push_back(indicator(a.n, a.fam_idem[t]));
            PIMClass pc;
            pc.idem = indicator(a.n, a.fam_idem[t]);
            std::vector<std::vector<uint32_t>> rows;
            for (uint32_t i = 0; i < a.n; ++i)
                if (a.dst[i] == t) rows.push_back(indicator(a.n, i));
            pc.basis = rows_to_mat(f, a.n, rows);
            pc.mult = 1;
            pc.simple_dim = 1;
            pc.label = a.fam_label[t];
            out.pims.push_back(std::move(pc));
        }
        return out;
    }

    Rref radr = ff::rref(out.rad.basis);
    std::mt19937_64 rng(seed);
    std::deque<std::vector<uint32_t>> work = {a.unit};
    std::vector<std::vector<uint32_t>> prim;
    while (!work.empty()) {
        auto e = std::move(work.front());
        work.pop_front();
        // basis of eAe and its radical
        RowAccum acc(f, a.n);
        for (uint32_t i = 0; i < a.n; ++i)
            acc.insert(a.mul(a.mul(e, indicator(a.n, i)), e).data());
        Mat eae = acc.basis();
        Mat rade = ff::subspace_intersect(eae, out.rad.basis);
        if (corner_is_local(a, eae, rade)) {
            prim.push_back(std::move(e));
            continue;
        }
        // probe for a splitting idempotent: basis elements first, then random
        bool split = false;
        uint32_t budget = 32;
        for (uint32_t c = 0; c < eae.rows + budget && !split; ++c) {
            std::vector<uint32_t> z;
            if (c < eae.rows) {
                z = mat_row(eae, c);
            } else {
                z.assign(a.n, 0);
                for (uint32_t r = 0; r < eae.rows; ++r) {
                    uint32_t w = uint32_t(rng() % f.p);
                    if (w == 0) continue;
                    for (uint32_t k = 0; k < a.n; ++k)
                        z[k] = f.add(z[k], f.mul(w, eae.at(r, k)));
                }
            }
            poly::FpPoly mp = elem_min_poly(a, e, z);
            auto facs = poly::factor(mp, seed);
            if (facs.size() < 2) continue;
            poly::FpPoly gpart = poly::one_poly(f);
            for (uint32_t m = 0; m < facs[0].mult; ++m) gpart = poly::mul(gpart, facs[0].p);
            poly::FpPoly h = poly::divmod(mp, gpart).q;
            poly::ExtGcd eg = poly::ext_gcd(gpart, h);
            poly::FpPoly fpoly = poly::divmod(poly::mul(eg.v, h), mp).r;
            auto idem = eval_in_algebra(a, fpoly, e, z);
            if (idem == std::vector<uint32_t>(a.n, 0) || idem == e) continue;
            if (a.mul(idem, idem) != idem) continue;
            std::vector<uint32_t> rest(a.n);
            for (uint32_t k = 0; k < a.n; ++k) rest[k] = f.sub(e[k], idem[k]);
            work.push_back(std::move(idem));
            work.push_back(std::move(rest));
            split = true;
        }
        if (!split) throw std::runtime_error("decomposition: split budget exhausted");
    }

    // verify orthogonality and completeness
    {
        std::vector<uint32_t> total(a.n, 0);
        for (const auto& e : prim)
            for (uint32_t k = 0; k < a.n; ++k) total[k] = f.add(total[k], e[k]);
        if (total != a.unit) throw std::runtime_error("decomposition: idempotents do not sum to 1");
        for (uint32_t i = 0; i < prim.size(); ++i)
            for (uint32_t j = 0; j < prim.size(); ++j) {
                auto z = a.mul(prim[i], prim[j]);
                if (i == j ? z != prim[i] : z != std::vector<uint32_t>(a.n, 0))
                    throw std::runtime_error("decomposition: idempotents not orthogonal");
            }
    }

    // group by isomorphism of tops: e ~ e' iff eAe' is not inside rad
    auto linked = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
        for (uint32_t i = 0; i < a.n; ++i) {
            auto z = a.mul(a.mul(x, indicator(a.n, i)), y);
            if (!ff::in_row_space(radr, rows_to_mat(f, a.n, {z}))) return true;
        }
        return false;
    };
    std::vector<int> cls(prim.size(), -1);
    uint32_t ncls = 0;
    for (uint32_t i = 0; i < prim.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = int(ncls);
        for (uint32_t j = i + 1; j < prim.size(); ++j)
            if (cls[j] < 0 && linked(prim[i], prim[j])) cls[j] = int(ncls);
        ++ncls;
    }
    for (uint32_t c = 0; c < ncls; ++c) {
        uint32_t rep = 0;
        uint32_t mult = 0;
        for (uint32_t i = 0; i < prim.size(); ++i)
            if (cls[i] == int(c)) {
                if (mult == 0) rep = i;
                ++mult;
            }
        PIMClass pc;
        pc.idem = prim[rep];
        RowAccum acc(f, a.n);
        for (uint32_t i = 0; i < a.n; ++i)
            acc.insert(a.mul(indicator(a.n, i), prim[rep]).data());
        pc.basis = acc.basis();
        RowAccum jacc(f, a.n);
        for (uint32_t r = 0; r < out.rad.basis.rows; ++r)
            jacc.insert(a.mul(mat_row(out.rad.basis, r), prim[rep]).data());
        pc.simple_dim = pc.basis.rows - jacc.dim();
        pc.mult = mult;
        pc.label = "S" + std::to_string(c);
        out.pims.push_back(std::move(pc));
    }
    out.prim_idems = std::move(prim);
    // dimension bookkeeping must close up
    {
        uint32_t total = 0;
        for (const auto& pc : out.pims) total += pc.mult * pc.basis.rows;
        if (total != a.n) throw std::runtime_error("decomposition: dimension mismatch");
    }
    return out;
}

std::vector<std::vector<uint32_t>> cartan(const RegularDecomp& d) {
    const FDAlgebra& a = *d.a;
    const Fp& f = a.f;
    uint32_t m = uint32_t(d.pims.size());
    std::vector<std::vector<uint32_t>> c(m, std::vector<uint32_t>(m, 0));
    if (d.rad.family_local) {
        // class order is the family order; count basis elements per (src, dst)
        for (uint32_t b = 0; b < a.n; ++b) ++c[a.dst[b]][a.src[b]];
        return c;
    }
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j) {
            // multiplicity of S_j in PIM_i = dim e_j A e_i / dim End(S_j)
            RowAccum acc(f, a.n);
            for (uint32_t k = 0; k < a.n; ++k)
                acc.insert(a.mul(a.mul(d.pims[j].idem, indicator(a.n, k)), d.pims[i].idem).data());
            uint32_t dj;
            {
                RowAccum ejj(f, a.n);
                for (uint32_t k = 0; k < a.n; ++k)
                    ejj.insert(
                        a.mul(a.mul(d.pims[j].idem, indicator(a.n, k)), d.pims[j].idem).data());
                Mat inter = ff::subspace_intersect(ejj.basis(), d.rad.basis);
                dj = ejj.dim() - inter.rows;
            }
            if (acc.dim() % dj != 0) throw std::runtime_error("cartan: divisibility fails");
            c[i][j] = acc.dim() / dj;
        }
    return c;
}

// ---- modules ---- //

uint32_t AModule::dim() const {
    uint32_t d = 0;
    for (uint32_t c : cdim) d += c;
    return d;
}

AModule direct_sum_mod(const AModule& x, const AModule& y) {
    if (x.a != y.a) throw std::invalid_argument("direct_sum_mod: different algebras");
    AModule out;
    out.a = x.a;
    out.cdim.resize(x.cdim.size());
    for (uint32_t t = 0; t < x.cdim.size(); ++t) out.cdim[t] = x.cdim[t] + y.cdim[t];
    out.rho.reserve(x.rho.size());
    for (uint32_t b = 0; b < x.rho.size(); ++b)
        out.rho.push_back(ff::direct_sum(x.rho[b], y.rho[b]));
    out.name = x.name + "+" + y.name;
    return out;
}

bool verify_amodule(const AModule& m) {
    const FDAlgebra& a = *m.a;
    const Fp& f = a.f;
    if (m.cdim.size() != a.nfam || m.rho.size() != a.n) return false;
    for (uint32_t b = 0; b < a.n; ++b)
        if (m.rho[b].rows != m.cdim[a.src[b]] || m.rho[b].cols != m.cdim[a.dst[b]]) return false;
    // unit acts as the identity on every component
    for (uint32_t t = 0; t < a.nfam; ++t) {
        Mat acc(f, m.cdim[t], m.cdim[t]);
        for (uint32_t b = 0; b < a.n; ++b)
            if (a.unit[b] != 0 && a.src[b] == t && a.dst[b] == t)
                acc = ff::add(acc, ff::scale(m.rho[b], a.unit[b]));
        if (acc != Mat::identity(f, m.cdim[t])) return false;
    }
    // structure constants
    for (uint32_t i = 0; i < a.n; ++i)
        for (uint32_t j = 0; j < a.n; ++j) {
            if (a.dst[i] != a.src[j]) continue;
            Mat lhs = ff::mul(m.rho[i], m.rho[j]);
            Mat rhs(f, m.cdim[a.src[i]], m.cdim[a.dst[j]]);
            for (const Term& t : a.prod(i, j)) rhs = ff::add(rhs, ff::scale(m.rho[t.k], t.c));
            if (lhs != rhs) return false;
        }
    return true;
}

std::vector<AMap> hom_modules(const AModule& m, const AModule& n) {
    const FDAlgebra& a = *m.a;
    if (n.a != m.a) throw std::invalid_argument("hom_modules: different algebras");
    const Fp& f = a.f;
    uint32_t nf = a.nfam;
    std::vector<uint32_t> off(nf + 1, 0);
    for (uint32_t t = 0; t < nf; ++t) off[t + 1] = off[t] + n.cdim[t] * m.cdim[t];
    uint32_t unknowns = off[nf];
    if (unknowns == 0) return {};
    if (unknowns > 2500) throw std::runtime_error("hom_modules: solve too large");
    uint32_t nrows = 0;
    for (uint32_t b = 0; b < a.n; ++b) nrows += n.cdim[a.src[b]] * m.cdim[a.dst[b]];
    Mat c(f, nrows, unknowns);
    uint32_t at = 0;
    auto idx = [&](uint32_t t, uint32_t r, uint32_t k) { return off[t] + r * m.cdim[t] + k; };
    for (uint32_t b = 0; b < a.n; ++b) {
        uint32_t s = a.src[b], d = a.dst[b];
        // X_s rho^M_b - rho^N_b X_d = 0
        for (uint32_t r = 0; r < n.cdim[s]; ++r)
            for (uint32_t col = 0; col < m.cdim[d]; ++col, ++at) {
                for (uint32_t k = 0; k < m.cdim[s]; ++k)
                    c.at(at, idx(s, r, k)) = f.add(c.at(at, idx(s, r, k)), m.rho[b].at(k, col));
                for (uint32_t k = 0; k < n.cdim[d]; ++k)
                    c.at(at, idx(d, k, col)) = f.sub(c.at(at, idx(d, k, col)), n.rho[b].at(r, k));
            }
    }
    Mat ker = ff::kernel(c);
    std::vector<AMap> out;
    for (uint32_t v = 0; v < ker.rows; ++v) {
        AMap h;
        h.comp.reserve(nf);
        for (uint32_t t = 0; t < nf; ++t) {
            Mat x(f, n.cdim[t], m.cdim[t]);
            for (uint32_t r = 0; r < n.cdim[t]; ++r)
                for (uint32_t k = 0; k < m.cdim[t]; ++k) x.at(r, k) = ker.at(v, idx(t, r, k));
            h.comp.push_back(std::move(x));
        }
        out.push_back(std::move(h));
    }
    return out;
}

namespace {

bool amap_invertible(const AMap& h) {
    for (const Mat& c : h.comp) {
        if (c.rows != c.cols) return false;
        if (c.rows > 0 && !ff::is_invertible(c)) return false;
    }
    return true;
}

AMap combine_maps(const Fp& f, const std::vector<AMap>& basis, const std::vector<uint32_t>& w) {
    AMap out;
    for (uint32_t t = 0; t < basis[0].comp.size(); ++t) {
        Mat acc = basis[0].comp[t].rows || basis[0].comp[t].cols
                      ? Mat(f, basis[0].comp[t].rows, basis[0].comp[t].cols)
                      : Mat(f, 0, 0);
        for (uint32_t i = 0; i < basis.size(); ++i)
            if (w[i]) acc = ff::add(acc, ff::scale(basis[i].comp[t], w[i]));
        out.comp.push_back(std::move(acc));
    }
    return out;
}

}  // namespace

std::optional<AMap> iso_modules(const AModule& m, const AModule& n, uint64_t seed) {
    if (m.a != n.a || m.cdim != n.cdim) return std::nullopt;
    if (m.dim() == 0) return AMap{std::vector<Mat>(m.cdim.size(), Mat(m.a->f, 0, 0))};
    auto homs = hom_modules(m, n);
    if (homs.empty()) return std::nullopt;
    const Fp& f = m.a->f;
    uint32_t hd = uint32_t(homs.size());
    // sum of the basis first, then single elements, then seeded combos
    {
        std::vector<uint32_t> w(hd, 1);
        AMap h = combine_maps(f, homs, w);
        if (amap_invertible(h)) return h;
    }
    for (uint32_t i = 0; i < hd; ++i) {
        if (amap_invertible(homs[i])) return homs[i];
    }
    std::mt19937_64 rng(seed);
    for (uint32_t it = 0; it < 64; ++it) {
        std::vector<uint32_t> w(hd);
        for (auto& x : w) x = uint32_t(rng() % f.p);
        AMap h = combine_maps(f, homs, w);
        if (amap_invertible(h)) return h;
    }
    // exhaustive lines for small hom spaces
    uint64_t total = 1;
    for (uint32_t i = 0; i < hd && total <= 700000; ++i) total *= f.p;
    if (hd <= 12 && total <= 700000) {
        std::vector<uint32_t> w(hd, 0);
        for (;;) {
            uint32_t pos = 0;
            while (pos < hd && w[pos] + 1 == f.p) w[pos++] = 0;
            if (pos == hd) break;
            ++w[pos];
            AMap h = combine_maps(f, homs, w);
            if (amap_invertible(h)) return h;
        }
    }
    return std::nullopt;
}

// ---- homology context ---- //

namespace {

std::shared_ptr<Homology> homology_once(const AlgPtr& ap) {
    auto rad = try_radical_family(ap);
    if (!rad || !rad->family_local)
        throw std::runtime_error("homological engine requires a family grading with local blocks");
    auto h = std::make_shared<Homology>();
    h->a = ap;
    h->rad = std::move(*rad);
    h->pim_elems.assign(ap->nfam, std::vector<std::vector<uint32_t>>(ap->nfam));
    for (uint32_t i = 0; i < ap->n; ++i) h->pim_elems[ap->dst[i]][ap->src[i]].push_back(i);
    return h;
}

}  // namespace

HomologyPtr make_homology(const AlgPtr& ap) {
    auto h = homology_once(ap);
    h->op = homology_once(opposite(ap));
    return h;
}

AModule pim_module(const HomologyPtr& h, uint32_t t) {
    const FDAlgebra& a = *h->a;
    const Fp& f = a.f;
    AModule m;
    m.a = h->a;
    m.cdim.resize(a.nfam);
    std::vector<uint32_t> where(a.n, 0);  // id -> position inside its component
    for (uint32_t u = 0; u < a.nfam; ++u) {
        m.cdim[u] = uint32_t(h->pim_elems[t][u].size());
        for (uint32_t q = 0; q < h->pim_elems[t][u].size(); ++q)
            where[h->pim_elems[t][u][q]] = q;
    }
    m.rho.reserve(a.n);
    for (uint32_t c = 0; c < a.n; ++c) {
        Mat r(f, m.cdim[a.src[c]], m.cdim[a.dst[c]]);
        const auto& colids = h->pim_elems[t][a.dst[c]];
        for (uint32_t q = 0; q < colids.size(); ++q) {
            uint32_t b = colids[q];
            for (const Term& tm : a.prod(c, b)) r.at(where[tm.k], q) = tm.c;
        }
        m.rho.push_back(std::move(r));
    }
    m.name = "P[" + a.fam_label[t] + "]";
    return m;
}

AModule simple_module(const HomologyPtr& h, uint32_t t) {
    const FDAlgebra& a = *h->a;
    const Fp& f = a.f;
    AModule m;
    m.a = h->a;
    m.cdim.assign(a.nfam, 0);
    m.cdim[t] = 1;
    // character lookup for the diagonal block of t
    std::vector<uint32_t> chi(a.n, 0);
    const auto& blk = h->rad.block_elems[t];
    for (uint32_t idx = 0; idx < blk.size(); ++idx) chi[blk[idx]] = h->rad.block_chi[t][idx];
    m.rho.reserve(a.n);
    for (uint32_t c = 0; c < a.n; ++c) {
        Mat r(f, m.cdim[a.src[c]], m.cdim[a.dst[c]]);
        if (a.src[c] == t && a.dst[c] == t) r.at(0, 0) = chi[c];
        m.rho.push_back(std::move(r));
    }
    m.name = "S[" + a.fam_label[t] + "]";
    return m;
}

AModule regular_module(const HomologyPtr& h) {
    AModule acc = pim_module(h, 0);
    for (uint32_t t = 1; t < h->a->nfam; ++t) acc = direct_sum_mod(acc, pim_module(h, t));
    acc.name = "A";
    return acc;
}

AModule dual_over_op(const HomologyPtr& h, const AModule& m) {
    AModule out;
    out.a = h->op->a;
    out.cdim = m.cdim;
    out.rho.reserve(m.rho.size());
    for (const Mat& r : m.rho) out.rho.push_back(ff::transpose(r));
    out.name = m.name + "*";
    return out;
}

// ---- homological engine ---- //

std::vector<Mat> radical_rows(const HomologyPtr& h, const AModule& m) {
    const FDAlgebra& a = *h->a;
    const Fp& f = a.f;
    std::vector<RowAccum> acc;
    acc.reserve(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t) acc.emplace_back(f, m.cdim[t]);
    // offdiagonal generators: whole image of rho_b
    for (uint32_t b : h->rad.offdiag) {
        const Mat& r = m.rho[b];  // M_dst -> M_src
        Mat rt = ff::transpose(r);
        for (uint32_t c = 0; c < rt.rows; ++c) acc[a.src[b]].insert_row(rt, c);
    }
    // diagonal block parts of the radical
    for (uint32_t t = 0; t < a.nfam; ++t) {
        const auto& blk = h->rad.block_elems[t];
        const auto& chi = h->rad.block_chi[t];
        for (uint32_t idx = 0; idx < blk.size(); ++idx) {
            if (blk[idx] == a.fam_idem[t]) continue;
            // operator rho[u] - chi(u) * id on component t
            Mat op = ff::sub(m.rho[blk[idx]],
                             ff::scale(Mat::identity(f, m.cdim[t]), chi[idx]));
            Mat ot = ff::transpose(op);
            for (uint32_t c = 0; c < ot.rows; ++c) acc[t].insert_row(ot, c);
        }
    }
    std::vector<Mat> out;
    out.reserve(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t) out.push_back(acc[t].basis());
    return out;
}

std::vector<uint32_t> top_mults(const HomologyPtr& h, const AModule& m) {
    auto jm = radical_rows(h, m);
    std::vector<uint32_t> out(m.cdim.size());
    for (uint32_t t = 0; t < m.cdim.size(); ++t) out[t] = m.cdim[t] - jm[t].rows;
    return out;
}

Cover projective_cover(const HomologyPtr& h, const AModule& m) {
    const FDAlgebra& a = *h->a;
    const Fp& f = a.f;
    auto jm = radical_rows(h, m);
    Cover cov;
    cov.mults.resize(a.nfam);
    // generators: standard basis vectors independent modulo rad(A)M
    std::vector<std::vector<std::vector<uint32_t>>> gens(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t) {
        RowAccum acc(f, m.cdim[t]);
        acc.insert_all(jm[t]);
        for (uint32_t i = 0; i < m.cdim[t]; ++i) {
            std::vector<uint32_t> e(m.cdim[t], 0);
            e[i] = 1;
            if (acc.insert(e.data())) gens[t].push_back(std::move(e));
        }
        cov.mults[t] = uint32_t(gens[t].size());
    }
    // cover module assembled blockwise: PIM_t repeated once per generator
    std::vector<AModule> pims(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t)
        if (cov.mults[t]) pims[t] = pim_module(h, t);
    std::vector<uint32_t> parts;  // the t of each summand, in cover order
    for (uint32_t t = 0; t < a.nfam; ++t)
        for (uint32_t j = 0; j < cov.mults[t]; ++j) parts.push_back(t);
    AModule p;
    p.a = h->a;
    p.cdim.assign(a.nfam, 0);
    std::vector<std::vector<uint32_t>> off(parts.size(), std::vector<uint32_t>(a.nfam, 0));
    for (uint32_t q = 0; q < parts.size(); ++q)
        for (uint32_t u = 0; u < a.nfam; ++u) {
            off[q][u] = p.cdim[u];
            p.cdim[u] += pims[parts[q]].cdim[u];
        }
    p.rho.reserve(a.n);
    for (uint32_t c = 0; c < a.n; ++c) {
        Mat r(f, p.cdim[a.src[c]], p.cdim[a.dst[c]]);
        for (uint32_t q = 0; q < parts.size(); ++q) {
            const Mat& blk = pims[parts[q]].rho[c];
            uint32_t ro = off[q][a.src[c]], co = off[q][a.dst[c]];
            for (uint32_t i = 0; i < blk.rows; ++i)
                for (uint32_t j2 = 0; j2 < blk.cols; ++j2) r.at(ro + i, co + j2) = blk.at(i, j2);
        }
        p.rho.push_back(std::move(r));
    }
    p.name = "cover(" + m.name + ")";

    // the map: basis element b in copy (t, j) goes to rho_b(gen)
    cov.onto.comp.resize(a.nfam);
    for (uint32_t u = 0; u < a.nfam; ++u) {
        Mat mt(f, m.cdim[u], p.cdim[u]);
        uint32_t col = 0;
        for (uint32_t t = 0; t < a.nfam; ++t)
            for (uint32_t j = 0; j < cov.mults[t]; ++j)
                for (uint32_t b : h->pim_elems[t][u]) {
                    auto img = matvec(m.rho[b], gens[t][j]);
                    for (uint32_t r = 0; r < m.cdim[u]; ++r) mt.at(r, col) = img[r];
                    ++col;
                }
        if (ff::rank(mt) != m.cdim[u]) throw std::runtime_error("cover: not surjective");
        cov.onto.comp[u] = std::move(mt);
    }
    cov.p = std::move(p);
    return cov;
}

KernelMod kernel_module(const AModule& src, const AModule& dst, const AMap& f0) {
    const FDAlgebra& a = *src.a;
    const Fp& f = a.f;
    KernelMod out;
    out.rows.resize(a.nfam);
    out.k.a = src.a;
    out.k.cdim.resize(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t) {
        out.rows[t] = ff::kernel(f0.comp[t]);
        out.k.cdim[t] = out.rows[t].rows;
    }
    out.k.rho.reserve(a.n);
    for (uint32_t c = 0; c < a.n; ++c) {
        uint32_t s = a.src[c], d = a.dst[c];
        Mat x = ff::mul(src.rho[c], ff::transpose(out.rows[d]));
        auto sol = ff::solve(ff::transpose(out.rows[s]), x);
        if (!sol) throw std::runtime_error("kernel: action does not restrict");
        out.k.rho.push_back(std::move(*sol));
    }
    out.k.name = "ker(" + dst.name + ")";
    return out;
}

Resolution minimal_resolution(const HomologyPtr& h, const AModule& m, uint32_t cap,
                              uint64_t seed) {
    Resolution res;
    if (cap == 0) throw std::invalid_argument("resolution: cap must be positive");
    struct Kern {
        AModule mod;
        std::vector<uint32_t> tops;
        uint32_t stage;
    };
    std::vector<Kern> window;
    uint32_t win = std::min<uint32_t>(cap, 6);
    AModule cur = m;
    for (uint32_t stage = 0; stage < cap; ++stage) {
        Cover cov = projective_cover(h, cur);
        res.terms.push_back(cov.mults);
        res.stages = stage + 1;
        KernelMod ker = kernel_module(cov.p, cur, cov.onto);
        // minimality: kernel sits inside rad(A) * cover
        {
            auto jp = radical_rows(h, cov.p);
            for (uint32_t t = 0; t < ker.rows.size(); ++t) {
                if (ker.rows[t].rows == 0) continue;
                if (!ff::subspace_contains(jp[t], ker.rows[t]))
                    throw std::runtime_error("resolution: cover is not minimal");
            }
        }
        res.kernel_dims.push_back(ker.k.dim());
        if (ker.k.dim() == 0) {
            res.status = ResStatus::finite;
            res.pd = stage;
            return res;
        }
        auto tops = top_mults(h, ker.k);
        for (const Kern& old : window) {
            if (old.mod.cdim != ker.k.cdim || old.tops != tops) continue;
            uint64_t budget = 0;
            for (uint32_t t = 0; t < ker.k.cdim.size(); ++t)
                budget += uint64_t(ker.k.cdim[t]) * old.mod.cdim[t];
            if (budget > 2500) continue;
            if (iso_modules(old.mod, ker.k, seed)) {
                res.status = ResStatus::periodic;
                res.onset = old.stage + 1;
                res.period = stage - old.stage;
                return res;
            }
        }
        window.push_back({ker.k, tops, stage});
        if (window.size() > win) window.erase(window.begin());
        cur = std::move(ker.k);
    }
    res.status = ResStatus::truncated;
    return res;
}

bool is_projective(const HomologyPtr& h, const AModule& m) {
    Cover cov = projective_cover(h, m);
    return cov.p.dim() == m.dim();
}

bool is_injective(const HomologyPtr& h, const AModule& m) {
    if (!h->op) throw std::runtime_error("is_injective: opposite context missing");
    return is_projective(h->op, dual_over_op(h, m));
}

bool self_injective(const AlgPtr& a) {
    HomologyPtr h = make_homology(a);
    return is_projective(h->op, dual_over_op(h, regular_module(h)));
}

std::vector<std::vector<uint32_t>> radical_layers(const HomologyPtr& h, const AModule& m) {
    const FDAlgebra& a = *h->a;
    const Fp& f = a.f;
    std::vector<std::vector<uint32_t>> layers;
    // row bases of the current term of the filtration, inside M's coordinates
    std::vector<Mat> w(a.nfam);
    for (uint32_t t = 0; t < a.nfam; ++t) w[t] = Mat::identity(f, m.cdim[t]);
    for (;;) {
        uint32_t total = 0;
        for (uint32_t t = 0; t < a.nfam; ++t) total += w[t].rows;
        if (total == 0) break;
        // J * W
        std::vector<RowAccum> next;
        next.reserve(a.nfam);
        for (uint32_t t = 0; t < a.nfam; ++t) next.emplace_back(f, m.cdim[t]);
        for (uint32_t b : h->rad.offdiag) {
            Mat img = ff::mul(m.rho[b], ff::transpose(w[a.dst[b]]));  // M_src x wd
            Mat it = ff::transpose(img);
            for (uint32_t c = 0; c < it.rows; ++c) next[a.src[b]].insert_row(it, c);
        }
        for (uint32_t t = 0; t < a.nfam; ++t) {
            const auto& blk = h->rad.block_elems[t];
            const auto& chi = h->rad.block_chi[t];
            for (uint32_t idx = 0; idx < blk.size(); ++idx) {
                if (blk[idx] == a.fam_idem[t]) continue;
                Mat op = ff::sub(m.rho[blk[idx]],
                                 ff::scale(Mat::identity(f, m.cdim[t]), chi[idx]));
                Mat img = ff::mul(op, ff::transpose(w[t]));
                Mat it = ff::transpose(img);
                for (uint32_t c = 0; c < it.rows; ++c) next[t].insert_row(it, c);
            }
        }
        std::vector<uint32_t> layer(a.nfam);
        for (uint32_t t = 0; t < a.nfam; ++t) {
            Mat nb = next[t].basis();
            layer[t] = w[t].rows - nb.rows;
            w[t] = std::move(nb);
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

std::vector<std::vector<uint32_t>> socle_layers(const HomologyPtr& h, const AModule& m) {
    const FDAlgebra& a = *h->a;
    const Fp& f = a.f;
    // per component: operators consuming that component under the radical
    struct Op {
        uint32_t target;  // component the operator lands in
        Mat mat;
    };
    std::vector<std::vector<Op>> ops(a.nfam);
    for (uint32_t b : h->rad.offdiag) ops[a.dst[b]].push_back({a.src[b], m.rho[b]});
    for (uint32_t t = 0; t < a.nfam; ++t) {
        const auto& blk = h->rad.block_elems[t];
        const auto& chi = h->rad.block_chi[t];
        for (uint32_t idx = 0; idx < blk.size(); ++idx) {
            if (blk[idx] == a.fam_idem[t]) continue;
            ops[t].push_back({t, ff::sub(m.rho[blk[idx]],
                                         ff::scale(Mat::identity(f, m.cdim[t]), chi[idx]))});
        }
    }
    std::vector<std::vector<uint32_t>> layers;
    std::vector<Rref> q(a.nfam);  // what has been absorbed so far
    for (uint32_t t = 0; t < a.nfam; ++t) q[t] = ff::rref(Mat(f, 0, m.cdim[t]));
    std::vector<uint32_t> qdim(a.nfam, 0);
    for (uint32_t guard = 0; guard <= m.dim(); ++guard) {
        bool all = true;
        for (uint32_t t = 0; t < a.nfam; ++t)
            if (qdim[t] != m.cdim[t]) all = false;
        if (all) break;
        // reducer matrix: v -> v reduced against q[target]
        auto reducer = [&](uint32_t t) {
            Mat r = Mat::identity(f, m.cdim[t]);
            for (uint32_t rr = 0; rr < q[t].m.rows; ++rr) {
                uint32_t pv = q[t].pivots[rr];
                for (uint32_t x = 0; x < m.cdim[t]; ++x)
                    r.at(x, pv) = f.sub(r.at(x, pv), q[t].m.at(rr, x));
            }
            return r;
        };
        std::vector<Mat> red(a.nfam);
        for (uint32_t t = 0; t < a.nfam; ++t) red[t] = reducer(t);
        std::vector<uint32_t> layer(a.nfam, 0);
        std::vector<Mat> newrows(a.nfam);
        for (uint32_t t = 0; t < a.nfam; ++t) {
            uint32_t nrows = 0;
            for (const Op& o : ops[t]) nrows += o.mat.rows;
            Mat stacked(f, nrows, m.cdim[t]);
            uint32_t at = 0;
            for (const Op& o : ops[t]) {
                Mat ro = ff::mul(red[o.target], o.mat);
                // note: reducer acts on column vectors; red * (o.mat v)
                for (uint32_t r = 0; r < ro.rows; ++r, ++at)
                    for (uint32_t cc = 0; cc < m.cdim[t]; ++cc) stacked.at(at, cc) = ro.at(r, cc);
            }
            Mat soc = nrows ? ff::kernel(stacked) : Mat::identity(f, m.cdim[t]);
            layer[t] = soc.rows - qdim[t];
            newrows[t] = std::move(soc);
        }
        layers.push_back(layer);
        for (uint32_t t = 0; t < a.nfam; ++t) {
            q[t] = ff::rref(newrows[t]);
            qdim[t] = q[t].rank;
        }
    }
    for (uint32_t t = 0; t < a.nfam; ++t)
        if (qdim[t] != m.cdim[t]) throw std::runtime_error("socle: filtration did not exhaust");
    return layers;
}

}  // namespace mackeylab::fdalg
