#include "mackeylab/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace mackeylab::poly {

void FpPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

FpPoly make_poly(Fp f, std::vector<uint32_t> coeffs) {
    FpPoly p{f, std::move(coeffs)};
    for (auto& v : p.c) v %= f.p;
    p.normalize();
    return p;
}

FpPoly zero_poly(Fp f) { return FpPoly{f, {}}; }
FpPoly one_poly(Fp f) { return FpPoly{f, {1}}; }
FpPoly x_poly(Fp f) { return FpPoly{f, {0, 1}}; }

FpPoly add(const FpPoly& a, const FpPoly& b) {
    FpPoly r{a.f, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint32_t x = i < a.c.size() ? a.c[i] : 0;
        uint32_t y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = a.f.add(x, y);
    }
    r.normalize();
    return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b) {
    FpPoly r{a.f, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint32_t x = i < a.c.size() ? a.c[i] : 0;
        uint32_t y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = a.f.sub(x, y);
    }
    r.normalize();
    return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero_poly(a.f);
    FpPoly r{a.f, std::vector<uint32_t>(a.c.size() + b.c.size() - 1, 0)};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.f.add(r.c[i + j], a.f.mul(a.c[i], b.c[j]));
    }
    r.normalize();
    return r;
}

FpPoly monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    uint32_t s = a.f.inv(a.c.back());
    if (s == 1) return a;
    FpPoly r = a;
    for (auto& v : r.c) v = a.f.mul(v, s);
    return r;
}

DivMod divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("poly division by zero");
    FpPoly r = a, q = zero_poly(a.f);
    if (a.c.size() < b.c.size()) return {q, r};
    q.c.assign(a.c.size() - b.c.size() + 1, 0);
    uint32_t lead_inv = a.f.inv(b.c.back());
    for (size_t qi = q.c.size(); qi-- > 0;) {
        size_t i = qi + b.c.size() - 1;  // degree being eliminated
        if (r.c[i] == 0) continue;
        uint32_t coef = a.f.mul(r.c[i], lead_inv);
        q.c[qi] = coef;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[qi + j] = a.f.sub(r.c[qi + j], a.f.mul(coef, b.c[j]));
    }
    q.normalize();
    r.normalize();
    return {q, r};
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = divmod(x, y).r;
        x = y;
        y = r;
    }
    return monic(x);
}

ExtGcd ext_gcd(const FpPoly& a, const FpPoly& b) {
    const Fp& f = a.f;
    FpPoly r0 = a, r1 = b;
    FpPoly u0 = one_poly(f), u1 = zero_poly(f);
    FpPoly v0 = zero_poly(f), v1 = one_poly(f);
    while (!r1.is_zero()) {
        DivMod d = divmod(r0, r1);
        FpPoly r2 = d.r;
        FpPoly u2 = sub(u0, mul(d.q, u1));
        FpPoly v2 = sub(v0, mul(d.q, v1));
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (r0.is_zero()) return {r0, u0, v0};
    uint32_t lead = f.inv(r0.c[r0.deg()]);
    FpPoly l = make_poly(f, {lead});
    return {mul(l, r0), mul(l, u0), mul(l, v0)};
}

FpPoly derivative(const FpPoly& a) {
    FpPoly r{a.f, {}};
    if (a.c.size() < 2) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = a.f.mul(a.c[i], uint32_t(i % a.f.p));
    r.normalize();
    return r;
}

FpPoly powmod(const FpPoly& base, uint64_t e, const FpPoly& mod) {
    FpPoly acc = one_poly(base.f);
    FpPoly b = divmod(base, mod).r;
    while (e) {
        if (e & 1) acc = divmod(mul(acc, b), mod).r;
        b = divmod(mul(b, b), mod).r;
        e >>= 1;
    }
    return acc;
}

uint32_t eval(const FpPoly& a, uint32_t x) {
    uint32_t acc = 0;
    for (size_t i = a.c.size(); i-- > 0;) acc = a.f.add(a.f.mul(acc, x), a.c[i]);
    return acc;
}

bool operator==(const FpPoly& a, const FpPoly& b) { return a.f.p == b.f.p && a.c == b.c; }

namespace {

bool poly_less(const FpPoly& a, const FpPoly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// squarefree part decomposition: returns list of (g, multiplicity) with g
// squarefree, pairwise coprime
void squarefree_decompose(const FpPoly& a, uint32_t outer_mult,
                          std::vector<std::pair<FpPoly, uint32_t>>& out) {
    FpPoly f = monic(a);
    if (f.deg() == 0) return;
    FpPoly d = derivative(f);
    if (d.is_zero()) {
        // f = g(x^p); p-th roots of coefficients are the coefficients
        // themselves over the prime field
        FpPoly g{f.f, {}};
        g.c.resize((f.c.size() - 1) / f.f.p + 1);
        for (size_t i = 0; i < g.c.size(); ++i) g.c[i] = f.c[i * f.f.p];
        squarefree_decompose(g, outer_mult * f.f.p, out);
        return;
    }
    FpPoly c = gcd(f, d);
    FpPoly w = divmod(f, c).q;  // product of factors with mult not divisible by p... standard loop
    uint32_t m = 1;
    while (w.deg() > 0) {
        FpPoly y = gcd(w, c);
        FpPoly part = divmod(w, y).q;  // factors of exact multiplicity m
        if (part.deg() > 0) out.push_back({monic(part), outer_mult * m});
        w = y;
        c = divmod(c, y).q;
        ++m;
    }
    // leftover: factors with multiplicity divisible by p; its derivative
    // vanishes, so the recursion takes the p-th root branch
    if (c.deg() > 0) squarefree_decompose(c, outer_mult, out);
}

// distinct-degree: f squarefree monic; returns (product-of-deg-d-factors, d)
std::vector<std::pair<FpPoly, uint32_t>> distinct_degree(const FpPoly& f) {
    std::vector<std::pair<FpPoly, uint32_t>> out;
    FpPoly rem = f;
    FpPoly h = x_poly(f.f);  // x^(p^d) mod rem
    uint32_t d = 0;
    while (rem.deg() > 0) {
        ++d;
        if (2 * d > rem.deg()) {  // remainder is a single irreducible
            out.push_back({rem, rem.deg()});
            break;
        }
        h = powmod(h, f.f.p, rem);
        FpPoly g = gcd(sub(h, x_poly(f.f)), rem);
        if (g.deg() > 0) {
            out.push_back({g, d});
            rem = divmod(rem, g).q;
            h = divmod(h, rem).r;
        }
    }
    return out;
}

// equal-degree splitting (Cantor-Zassenhaus), f = product of irreducibles of
// degree d, f squarefree monic, deg f > d
void equal_degree(const FpPoly& f, uint32_t d, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
    if (f.deg() == d) { out.push_back(f); return; }
    const Fp fp = f.f;
    for (;;) {
        // random polynomial of degree < deg f
        FpPoly r{fp, std::vector<uint32_t>(f.deg(), 0)};
        for (auto& c : r.c) c = uint32_t(rng() % fp.p);
        r.normalize();
        if (r.deg() == 0) continue;
        FpPoly g = gcd(r, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            equal_degree(g, d, rng, out);
            equal_degree(divmod(f, g).q, d, rng, out);
            return;
        }
        FpPoly h;
        if (fp.p == 2) {
            // trace map r + r^2 + r^4 + ... over F_2
            h = zero_poly(fp);
            FpPoly t = divmod(r, f).r;
            for (uint32_t i = 0; i < d; ++i) {
                h = add(h, t);
                t = divmod(mul(t, t), f).r;
            }
        } else {
            uint64_t e = 1;
            for (uint32_t i = 0; i < d; ++i) e *= fp.p;  // p^d fits: d*log p bounded by deg
            h = sub(powmod(r, (e - 1) / 2, f), one_poly(fp));
        }
        g = gcd(h, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            equal_degree(g, d, rng, out);
            equal_degree(divmod(f, g).q, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Factor> factor(const FpPoly& a, uint64_t seed) {
    std::vector<Factor> out;
    if (a.deg() == 0) return out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::pair<FpPoly, uint32_t>> sqfree;
    squarefree_decompose(a, 1, sqfree);
    for (auto& [g, m] : sqfree) {
        for (auto& [prod, d] : distinct_degree(g)) {
            std::vector<FpPoly> irr;
            equal_degree(prod, d, rng, irr);
            for (auto& p : irr) out.push_back({p, m});
        }
    }
    // merge duplicates (can arise from the p-th power path), then sort
    std::sort(out.begin(), out.end(),
              [](const Factor& x, const Factor& y) { return poly_less(x.p, y.p); });
    std::vector<Factor> merged;
    for (auto& f : out) {
        if (!merged.empty() && merged.back().p == f.p) merged.back().mult += f.mult;
        else merged.push_back(f);
    }
    return merged;
}

FpPoly order_poly(const Mat& m, const Mat& v) {
    if (m.rows != m.cols || v.rows != 1 || v.cols != m.rows)
        throw std::invalid_argument("order_poly: shape");
    // spin v, v m^T? keep column convention: iterate w |-> w * m^T == (m w^T)^T
    Mat mt = ff::transpose(m);
    ff::RowAccum acc(m.f, m.cols);
    std::vector<Mat> chain;
    Mat w = v;
    while (true) {
        if (!acc.insert(&w.a[0])) break;
        chain.push_back(w);
        w = ff::mul(w, mt);
    }
    // w is a combination of the chain; solve chain^T coeffs = w
    Mat basis(m.f, uint32_t(chain.size()), m.cols);
    for (uint32_t i = 0; i < chain.size(); ++i)
        std::copy(chain[i].a.begin(), chain[i].a.end(), &basis.a[size_t(i) * m.cols]);
    auto sol = ff::solve_left(basis, w);  // coeffs * basis = w
    if (!sol) throw std::logic_error("order_poly: inconsistent Krylov chain");
    std::vector<uint32_t> c(chain.size() + 1, 0);
    for (uint32_t i = 0; i < chain.size(); ++i) c[i] = m.f.neg(sol->at(0, i));
    c[chain.size()] = 1;
    return make_poly(m.f, std::move(c));
}

FpPoly char_poly(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("char_poly: not square");
    const auto& f = m.f;
    uint32_t n = m.rows;
    if (n == 0) return one_poly(f);
    Mat h = m;
    // similarity reduction to upper Hessenberg form
    for (uint32_t j = 0; j + 2 < n; ++j) {
        uint32_t piv = 0;
        bool found = false;
        for (uint32_t r = j + 1; r < n; ++r)
            if (h.at(r, j) != 0) { piv = r; found = true; break; }
        if (!found) continue;
        if (piv != j + 1) {
            for (uint32_t c = 0; c < n; ++c) std::swap(h.at(j + 1, c), h.at(piv, c));
            for (uint32_t r = 0; r < n; ++r) std::swap(h.at(r, j + 1), h.at(r, piv));
        }
        uint32_t inv = f.inv(h.at(j + 1, j));
        for (uint32_t i = j + 2; i < n; ++i) {
            uint32_t t = f.mul(h.at(i, j), inv);
            if (t == 0) continue;
            // row_i -= t * row_{j+1}, then col_{j+1} += t * col_i to stay similar
            for (uint32_t c = 0; c < n; ++c) h.at(i, c) = f.sub(h.at(i, c), f.mul(t, h.at(j + 1, c)));
            for (uint32_t r = 0; r < n; ++r) h.at(r, j + 1) = f.add(h.at(r, j + 1), f.mul(t, h.at(r, i)));
        }
    }
    // p_k = det(xI - H_k) expanded along the last column of the leading block:
    // p_k = (x - h[k-1][k-1]) p_{k-1} - sum_i h[i-1][k-1] (prod of subdiagonals) p_{i-1}
    std::vector<FpPoly> chi;
    chi.reserve(n + 1);
    chi.push_back(one_poly(f));
    for (uint32_t k = 1; k <= n; ++k) {
        FpPoly acc = mul(make_poly(f, {f.neg(h.at(k - 1, k - 1)), 1}), chi[k - 1]);
        uint32_t run = 1;  // prod_{j=i..k-1} h[j][j-1], built up as i descends
        for (uint32_t i = k - 1; i >= 1; --i) {
            run = f.mul(run, h.at(i, i - 1));
            if (run == 0) break;
            uint32_t coef = f.mul(run, h.at(i - 1, k - 1));
            if (coef != 0) acc = sub(acc, mul(make_poly(f, {coef}), chi[i - 1]));
        }
        chi.push_back(std::move(acc));
    }
    return chi[n];
}

FpPoly min_poly(const Mat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("min_poly: not square");
    FpPoly acc = one_poly(m.f);
    for (uint32_t i = 0; i < m.rows; ++i) {
        if (acc.deg() == m.rows) break;
        Mat e(m.f, 1, m.rows);
        e.at(0, i) = 1;
        FpPoly op = order_poly(m, e);
        // acc = lcm(acc, op)
        FpPoly g = gcd(acc, op);
        acc = mul(acc, divmod(op, g).q);
    }
    return monic(acc);
}

Mat eval_mat(const FpPoly& p, const Mat& m) {
    Mat acc = Mat::zero(m.f, m.rows, m.cols);
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = ff::mul(acc, m);
        if (p.c[i]) acc = ff::add(acc, ff::scale(Mat::identity(m.f, m.rows), p.c[i]));
    }
    return acc;
}

}  // namespace mackeylab::poly
