#include "mackeylab/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mackeylab::groups {

namespace {

constexpr uint32_t kOrderCap = 64;

void verify_table(uint32_t n, const std::vector<uint32_t>& t) {
    if (n == 0 || n > kOrderCap) throw std::invalid_argument("group order out of range");
    if (t.size() != size_t(n) * n) throw std::invalid_argument("bad table size");
    for (uint32_t v : t)
        if (v >= n) throw std::invalid_argument("table entry out of range");
    for (uint32_t a = 0; a < n; ++a) {
        if (t[size_t(0) * n + a] != a || t[size_t(a) * n + 0] != a)
            throw std::invalid_argument("element 0 is not the identity");
        bool has_inv = false;
        for (uint32_t b = 0; b < n; ++b)
            if (t[size_t(a) * n + b] == 0) { has_inv = true; break; }
        if (!has_inv) throw std::invalid_argument("missing inverse");
    }
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            for (uint32_t c = 0; c < n; ++c)
                if (t[size_t(t[size_t(a) * n + b]) * n + c] !=
                    t[size_t(a) * n + t[size_t(b) * n + c]])
                    throw std::invalid_argument("associativity fails");
}

GroupPtr finish(uint32_t n, std::vector<uint32_t> table, std::vector<uint32_t> gens,
                std::string descriptor) {
    verify_table(n, table);
    auto g = std::make_shared<Group>();
    g->n = n;
    g->table = std::move(table);
    g->inverse.resize(n);
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            if (g->table[size_t(a) * n + b] == 0) g->inverse[a] = b;
    g->gens = std::move(gens);
    g->descriptor = std::move(descriptor);
    return g;
}

}  // namespace

uint32_t Group::order_of(uint32_t g) const {
    uint32_t x = g, k = 1;
    while (x != 0) { x = op(x, g); ++k; }
    return k;
}

uint32_t Group::exponent() const {
    uint32_t e = 1;
    for (uint32_t g = 0; g < n; ++g) e = std::lcm(e, order_of(g));
    return e;
}

bool Group::is_abelian() const {
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = a + 1; b < n; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

std::vector<std::pair<uint32_t, uint32_t>> Group::order_profile() const {
    std::map<uint32_t, uint32_t> cnt;
    for (uint32_t g = 0; g < n; ++g) ++cnt[order_of(g)];
    return {cnt.begin(), cnt.end()};
}

GroupPtr cyclic_group(uint32_t n) {
    if (n == 0 || n > kOrderCap) throw std::invalid_argument("cyclic: order out of range");
    std::vector<uint32_t> t(size_t(n) * n);
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b) t[size_t(a) * n + b] = (a + b) % n;
    std::vector<uint32_t> gens = n > 1 ? std::vector<uint32_t>{1} : std::vector<uint32_t>{};
    return finish(n, std::move(t), std::move(gens), "cyclic:" + std::to_string(n));
}

GroupPtr dihedral_group(uint32_t order) {
    if (order < 4 || order % 2 != 0 || order > kOrderCap)
        throw std::invalid_argument("dihedral: order must be even and >= 4");
    uint32_t m = order / 2;
    // elements: i < m are rotations r^i, m+i are reflections r^i s
    auto enc = [m](uint32_t rot, bool ref) { return ref ? m + rot : rot; };
    std::vector<uint32_t> t(size_t(order) * order);
    for (uint32_t a = 0; a < order; ++a)
        for (uint32_t b = 0; b < order; ++b) {
            uint32_t ar = a % m, br = b % m;
            bool af = a >= m, bf = b >= m;
            // (r^ar s^af)(r^br s^bf): s r^k = r^{-k} s
            uint32_t rot = af ? (ar + m - br % m) % m : (ar + br) % m;
            t[size_t(a) * order + b] = enc(rot, af != bf);
        }
    return finish(order, std::move(t), {1, m}, "dihedral:" + std::to_string(order));
}

GroupPtr quaternion_group() {
    // 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    auto qmul = [](uint32_t a, uint32_t b) -> uint32_t {
        auto axis = [](uint32_t x) { return x / 2; };      // 0:1, 1:i, 2:j, 3:k
        auto sign = [](uint32_t x) { return x % 2; };
        uint32_t ax = axis(a), bx = axis(b);
        uint32_t s = sign(a) ^ sign(b);
        if (ax == 0) return 2 * bx + s;
        if (bx == 0) return 2 * ax + s;
        if (ax == bx) return s ^ 1;  // i*i = -1
        // i*j=k, j*k=i, k*i=j and the reversed products pick up a sign
        static const uint32_t res[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
        bool cyc = (bx == ax % 3 + 1);
        return 2 * res[ax][bx] + (s ^ (cyc ? 0 : 1));
    };
    std::vector<uint32_t> t(64);
    for (uint32_t a = 0; a < 8; ++a)
        for (uint32_t b = 0; b < 8; ++b) t[size_t(a) * 8 + b] = qmul(a, b);
    return finish(8, std::move(t), {2, 4}, "q8");
}

GroupPtr product_group(const GroupPtr& a, const GroupPtr& b) {
    uint32_t n = a->n * b->n;
    if (n > kOrderCap) throw std::invalid_argument("product: order out of range");
    auto enc = [&](uint32_t x, uint32_t y) { return x * b->n + y; };
    std::vector<uint32_t> t(size_t(n) * n);
    for (uint32_t x1 = 0; x1 < a->n; ++x1)
        for (uint32_t y1 = 0; y1 < b->n; ++y1)
            for (uint32_t x2 = 0; x2 < a->n; ++x2)
                for (uint32_t y2 = 0; y2 < b->n; ++y2)
                    t[size_t(enc(x1, y1)) * n + enc(x2, y2)] =
                        enc(a->op(x1, x2), b->op(y1, y2));
    std::vector<uint32_t> gens;
    for (uint32_t g : a->gens) gens.push_back(enc(g, 0));
    for (uint32_t g : b->gens) gens.push_back(enc(0, g));
    return finish(n, std::move(t), std::move(gens),
                  "prod(" + a->descriptor + "," + b->descriptor + ")");
}

GroupPtr group_from_table(uint32_t n, std::vector<uint32_t> table, std::string descriptor) {
    std::vector<uint32_t> gens;  // fill greedily after verification
    auto g = finish(n, std::move(table), {}, std::move(descriptor));
    // greedy generating set, largest order first
    std::vector<uint32_t> elems(n);
    std::iota(elems.begin(), elems.end(), 0);
    std::sort(elems.begin(), elems.end(), [&](uint32_t x, uint32_t y) {
        return g->order_of(x) > g->order_of(y);
    });
    std::vector<uint32_t> have{0};
    for (uint32_t e : elems) {
        if (std::find(have.begin(), have.end(), e) != have.end()) continue;
        gens.push_back(e);
        have = closure(*g, gens);
        if (have.size() == n) break;
    }
    auto out = std::make_shared<Group>(*g);
    out->gens = std::move(gens);
    return out;
}

GroupPtr parse_group(const std::string& d) {
    auto bad = [&] { return std::invalid_argument("bad group descriptor: " + d); };
    if (d == "q8") return quaternion_group();
    if (d.rfind("cyclic:", 0) == 0) {
        int n = std::stoi(d.substr(7));
        if (n <= 0) throw bad();
        return cyclic_group(uint32_t(n));
    }
    if (d.rfind("dihedral:", 0) == 0) {
        int n = std::stoi(d.substr(9));
        if (n <= 0) throw bad();
        return dihedral_group(uint32_t(n));
    }
    if (d.rfind("prod(", 0) == 0 && d.back() == ')') {
        std::string inner = d.substr(5, d.size() - 6);
        int depth = 0;
        for (size_t i = 0; i < inner.size(); ++i) {
            char c = inner[i];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (c == ',' && depth == 0)
                return product_group(parse_group(inner.substr(0, i)),
                                     parse_group(inner.substr(i + 1)));
        }
        throw bad();
    }
    throw bad();
}

std::vector<uint32_t> closure(const Group& g, std::vector<uint32_t> gens) {
    std::vector<bool> in(g.n, false);
    std::vector<uint32_t> frontier{0}, out{0};
    in[0] = true;
    for (uint32_t x : gens)
        if (!in[x]) { in[x] = true; out.push_back(x); frontier.push_back(x); }
    while (!frontier.empty()) {
        std::vector<uint32_t> next;
        for (uint32_t x : frontier)
            for (uint32_t s : gens) {
                uint32_t y = g.op(x, s);
                if (!in[y]) { in[y] = true; out.push_back(y); next.push_back(y); }
            }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Subgroup::contains(uint32_t x) const {
    return std::binary_search(elems.begin(), elems.end(), x);
}

uint32_t SubgroupLattice::find(const std::vector<uint32_t>& elems) const {
    for (const auto& s : subgroups)
        if (s.elems == elems) return s.id;
    throw std::logic_error("subgroup not in lattice");
}

std::vector<uint32_t> SubgroupLattice::maximal_proper_in(uint32_t id) const {
    std::vector<uint32_t> out;
    for (uint32_t a = 0; a < subgroups.size(); ++a) {
        if (a == id || !leq[a][id]) continue;
        bool maximal = true;
        for (uint32_t b = 0; b < subgroups.size(); ++b)
            if (b != a && b != id && leq[a][b] && leq[b][id]) { maximal = false; break; }
        if (maximal) out.push_back(a);
    }
    return out;
}

uint32_t SubgroupLattice::conjugate_subgroup(uint32_t id, uint32_t by) const {
    std::vector<uint32_t> e;
    e.reserve(subgroups[id].elems.size());
    for (uint32_t x : subgroups[id].elems) e.push_back(g->conj(by, x));
    std::sort(e.begin(), e.end());
    return find(e);
}

bool SubgroupLattice::is_normal(uint32_t id) const {
    for (uint32_t x = 0; x < g->n; ++x)
        if (conjugate_subgroup(id, x) != id) return false;
    return true;
}

uint32_t SubgroupLattice::normalizer(uint32_t id) const {
    std::vector<uint32_t> elems;
    for (uint32_t x = 0; x < g->n; ++x)
        if (conjugate_subgroup(id, x) == id) elems.push_back(x);
    return find(elems);
}

SubgroupLattice subgroup_lattice(const GroupPtr& g) {
    if (g->n > kOrderCap) throw std::invalid_argument("lattice: order out of range");
    std::set<std::vector<uint32_t>> found;
    found.insert(std::vector<uint32_t>{0});
    for (uint32_t x = 1; x < g->n; ++x) found.insert(closure(*g, {x}));
    // join closure
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<uint32_t>> snapshot(found.begin(), found.end());
        for (size_t i = 0; i < snapshot.size(); ++i)
            for (size_t j = i + 1; j < snapshot.size(); ++j) {
                std::vector<uint32_t> gens = snapshot[i];
                gens.insert(gens.end(), snapshot[j].begin(), snapshot[j].end());
                auto join = closure(*g, gens);
                if (found.insert(join).second) grew = true;
            }
    }
    SubgroupLattice lat;
    lat.g = g;
    std::vector<std::vector<uint32_t>> all(found.begin(), found.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (uint32_t i = 0; i < all.size(); ++i)
        lat.subgroups.push_back(Subgroup{std::move(all[i]), i});
    uint32_t m = uint32_t(lat.subgroups.size());
    lat.leq.assign(m, std::vector<bool>(m, false));
    for (uint32_t a = 0; a < m; ++a)
        for (uint32_t b = 0; b < m; ++b)
            lat.leq[a][b] = std::includes(lat.subgroups[b].elems.begin(),
                                          lat.subgroups[b].elems.end(),
                                          lat.subgroups[a].elems.begin(),
                                          lat.subgroups[a].elems.end());
    // conjugacy classes
    lat.class_of.assign(m, UINT32_MAX);
    for (uint32_t a = 0; a < m; ++a) {
        if (lat.class_of[a] != UINT32_MAX) continue;
        uint32_t cls = uint32_t(lat.class_rep.size());
        lat.class_rep.push_back(a);
        for (uint32_t x = 0; x < g->n; ++x) {
            uint32_t b = lat.conjugate_subgroup(a, x);
            lat.class_of[b] = cls;
        }
    }
    return lat;
}

std::vector<uint32_t> subgroup_generators(const Group& g, const Subgroup& h) {
    std::vector<uint32_t> elems = h.elems;
    std::sort(elems.begin(), elems.end(), [&](uint32_t x, uint32_t y) {
        uint32_t ox = g.order_of(x), oy = g.order_of(y);
        if (ox != oy) return ox > oy;
        return x < y;
    });
    std::vector<uint32_t> gens, have{0};
    for (uint32_t e : elems) {
        if (e == 0 || std::binary_search(have.begin(), have.end(), e)) continue;
        gens.push_back(e);
        have = closure(g, gens);
        if (have.size() == h.elems.size()) break;
    }
    return gens;
}

InducedGroup subgroup_as_group(const GroupPtr& g, const Subgroup& h) {
    uint32_t m = h.order();
    std::vector<uint32_t> idx(g->n, UINT32_MAX);
    for (uint32_t i = 0; i < m; ++i) idx[h.elems[i]] = i;
    std::vector<uint32_t> t(size_t(m) * m);
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j) {
            uint32_t prod = g->op(h.elems[i], h.elems[j]);
            if (idx[prod] == UINT32_MAX) throw std::logic_error("subgroup not closed");
            t[size_t(i) * m + j] = idx[prod];
        }
    InducedGroup out;
    out.grp = group_from_table(m, std::move(t), g->descriptor + "|sub" + std::to_string(h.id));
    out.to_parent = h.elems;
    return out;
}

DoubleCosets double_cosets(const Group& g, const Subgroup& h, const Subgroup& k) {
    DoubleCosets dc;
    dc.coset_of.assign(g.n, UINT32_MAX);
    for (uint32_t x = 0; x < g.n; ++x) {
        if (dc.coset_of[x] != UINT32_MAX) continue;
        uint32_t id = uint32_t(dc.rep.size());
        // BFS over the H x K action
        std::vector<uint32_t> stack{x};
        dc.coset_of[x] = id;
        uint32_t count = 0;
        while (!stack.empty()) {
            uint32_t y = stack.back();
            stack.pop_back();
            ++count;
            for (uint32_t a : h.elems)
                for (uint32_t b : k.elems) {
                    uint32_t z = g.op(g.op(a, y), b);
                    if (dc.coset_of[z] == UINT32_MAX) {
                        dc.coset_of[z] = id;
                        stack.push_back(z);
                    }
                }
        }
        dc.rep.push_back(x);
        dc.size.push_back(count);
    }
    return dc;
}

namespace {

bool extend_iso(const Group& a, const Group& b, std::vector<uint32_t>& img,
                std::vector<bool>& used, uint32_t next) {
    // img maps a subset of A (those already determined) into B; determined
    // elements are exactly the closure of the mapped generators, so extend
    // by picking the image of the next unmapped element.
    while (next < a.n && img[next] != UINT32_MAX) ++next;
    if (next == a.n) return true;
    uint32_t oa = a.order_of(next);
    for (uint32_t cand = 0; cand < b.n; ++cand) {
        if (used[cand] || b.order_of(cand) != oa) continue;
        // tentatively map and propagate products with all determined elements
        std::vector<std::pair<uint32_t, uint32_t>> added;
        auto assign = [&](uint32_t x, uint32_t y) -> bool {
            if (img[x] != UINT32_MAX) return img[x] == y;
            if (used[y]) return false;
            img[x] = y;
            used[y] = true;
            added.push_back({x, y});
            return true;
        };
        bool ok = assign(next, cand);
        // propagate: for all pairs of determined elements the product must map
        for (size_t i = 0; ok && i < added.size(); ++i) {
            uint32_t x = added[i].first;
            for (uint32_t z = 0; ok && z < a.n; ++z) {
                if (img[z] == UINT32_MAX) continue;
                ok = assign(a.op(x, z), b.op(img[x], img[z])) &&
                     assign(a.op(z, x), b.op(img[z], img[x]));
            }
        }
        if (ok && extend_iso(a, b, img, used, next + 1)) return true;
        for (auto& [x, y] : added) { img[x] = UINT32_MAX; used[y] = false; }
    }
    return false;
}

}  // namespace

bool isomorphic(const Group& a, const Group& b) {
    if (a.n != b.n) return false;
    if (a.order_profile() != b.order_profile()) return false;
    if (a.is_abelian() != b.is_abelian()) return false;
    std::vector<uint32_t> img(a.n, UINT32_MAX);
    std::vector<bool> used(b.n, false);
    img[0] = 0;
    used[0] = true;
    return extend_iso(a, b, img, used, 1);
}

std::string iso_label(const GroupPtr& g) {
    uint32_t n = g->n;
    if (n == 1) return "1";
    for (uint32_t x = 1; x < n; ++x)
        if (g->order_of(x) == n) return "C" + std::to_string(n);
    if (n <= 16) {
        std::vector<std::pair<std::string, GroupPtr>> catalog;
        auto add = [&](GroupPtr c, std::string name) {
            if (c->n == n) catalog.push_back({std::move(name), std::move(c)});
        };
        if (n >= 4 && n % 2 == 0) {
            if (n == 4) add(dihedral_group(4), "C2xC2");
            else add(dihedral_group(n), "D" + std::to_string(n));
        }
        if (n == 8) add(quaternion_group(), "Q8");
        // abelian products (invariant factors)
        for (uint32_t a = 2; a * a <= n; ++a) {
            if (n % a) continue;
            uint32_t b = n / a;
            if (b % a) continue;  // need a | b for invariant factor form
            if (a == 2 && b == 2) continue;  // already D4 = Klein
            add(product_group(cyclic_group(a), cyclic_group(b)),
                "C" + std::to_string(a) + "xC" + std::to_string(b));
        }
        if (n == 8) add(product_group(product_group(cyclic_group(2), cyclic_group(2)),
                                      cyclic_group(2)), "C2^3");
        if (n == 16) {
            add(product_group(product_group(cyclic_group(2), cyclic_group(2)),
                              product_group(cyclic_group(2), cyclic_group(2))), "C2^4");
            add(product_group(product_group(cyclic_group(2), cyclic_group(2)),
                              cyclic_group(4)), "C2^2xC4");
            add(product_group(cyclic_group(2), quaternion_group()), "C2xQ8");
            add(product_group(cyclic_group(2), dihedral_group(8)), "C2xD8");
        }
        for (auto& [name, c] : catalog)
            if (isomorphic(*g, *c)) return name;
    }
    // fallback: order plus order profile
    std::ostringstream os;
    os << "G" << n << "[";
    bool first = true;
    for (auto [o, c] : g->order_profile()) {
        if (!first) os << ",";
        os << o << ":" << c;
        first = false;
    }
    os << "]";
    return os.str();
}

namespace {

bool subgroup_is_cyclic(const Group& g, const Subgroup& s) {
    for (uint32_t x : s.elems)
        if (g.order_of(x) == s.order()) return true;
    return false;
}

// dihedral 2-groups in the wide sense: Klein group, D_8, D_16, ...
bool subgroup_is_dihedral2(const SubgroupLattice& lat, const Subgroup& s) {
    const Group& g = *lat.g;
    uint32_t n = s.order();
    if (n < 4 || (n & (n - 1)) != 0) return false;
    if (n == 4) {  // Klein iff exponent 2
        for (uint32_t x : s.elems)
            if (g.order_of(x) > 2) return false;
        return true;
    }
    // look for a cyclic C of index 2 inverted by an outside involution
    for (const auto& c : lat.subgroups) {
        if (c.order() != n / 2 || !lat.leq[c.id][s.id]) continue;
        if (!subgroup_is_cyclic(g, c)) continue;
        for (uint32_t t : s.elems) {
            if (c.contains(t) || g.order_of(t) != 2) continue;
            bool inverts = true;
            for (uint32_t x : c.elems)
                if (g.conj(t, x) != g.inv(x)) { inverts = false; break; }
            if (inverts) return true;
        }
    }
    return false;
}

}  // namespace

SylowReport sylow_shape(const SubgroupLattice& lat, uint32_t p) {
    const Group& g = *lat.g;
    uint32_t pk = 1;
    while (g.n % (pk * p) == 0) pk *= p;
    SylowReport rep;
    if (pk == 1) {
        rep.shape = SylowShape::order_invertible;
        rep.sylow_id = lat.trivial_id();
        return rep;
    }
    uint32_t syl = UINT32_MAX;
    for (const auto& s : lat.subgroups)
        if (s.order() == pk) { syl = s.id; break; }
    if (syl == UINT32_MAX) throw std::logic_error("Sylow subgroup missing from lattice");
    rep.sylow_id = syl;
    const Subgroup& s = lat.subgroups[syl];
    if (subgroup_is_cyclic(g, s)) {
        rep.shape = SylowShape::cyclic;
        return rep;
    }
    if (p == 2 && subgroup_is_dihedral2(lat, s)) {
        rep.shape = SylowShape::dihedral;
        return rep;
    }
    rep.shape = SylowShape::other;
    // witness: a subgroup of the Sylow isomorphic to one of the minimal
    // obstructions; order-profile plus commutativity identifies each
    auto matches = [&](const Subgroup& w, const char* which) -> bool {
        auto ind = subgroup_as_group(lat.g, w);
        if (std::string(which) == "CpxCp") {
            if (w.order() != p * p) return false;
            return ind.grp->is_abelian() && ind.grp->exponent() == p;
        }
        if (std::string(which) == "C2xC4")
            return w.order() == 8 && ind.grp->is_abelian() && ind.grp->exponent() == 4;
        if (std::string(which) == "Q8")
            return w.order() == 8 && isomorphic(*ind.grp, *quaternion_group());
        if (std::string(which) == "C2^3")
            return w.order() == 8 && ind.grp->exponent() == 2;
        return false;
    };
    std::vector<std::pair<const char*, std::string>> targets;
    if (p == 2)
        targets = {{"C2xC4", "C_2xC_4"}, {"Q8", "Q_8"}, {"C2^3", "C_2^3"}};
    else
        targets = {{"CpxCp", "C_" + std::to_string(p) + "xC_" + std::to_string(p)}};
    for (const auto& w : lat.subgroups) {
        if (!lat.leq[w.id][syl]) continue;
        for (auto& [key, label] : targets)
            if (matches(w, key)) {
                rep.witness_id = w.id;
                rep.witness_label = label;
                return rep;
            }
    }
    throw std::logic_error("sylow_shape: no obstruction witness found");
}

TambaraRank tambara_rank(const SubgroupLattice& lat, uint32_t p) {
    const Group& g = *lat.g;
    TambaraRank best;
    for (const auto& h : lat.subgroups) {
        for (const auto& nn : lat.subgroups) {
            if (!lat.leq[nn.id][h.id]) continue;
            uint32_t index = h.order() / nn.order();
            // quick reject: index must be a power of p
            uint32_t q = index, rank = 0;
            while (q % p == 0) { q /= p; ++rank; }
            if (q != 1 || rank <= best.rank) continue;
            // N normal in H?
            bool normal = true;
            for (uint32_t x : h.elems) {
                for (uint32_t m : nn.elems)
                    if (!nn.contains(g.conj(x, m))) { normal = false; break; }
                if (!normal) break;
            }
            if (!normal) continue;
            // H/N elementary abelian: commutators and p-th powers land in N
            bool elem = true;
            for (uint32_t x : h.elems) {
                uint32_t xp = 0;
                for (uint32_t i = 0; i < p; ++i) xp = g.op(xp, x);
                if (!nn.contains(xp)) { elem = false; break; }
                for (uint32_t y : h.elems) {
                    uint32_t comm = g.op(g.op(x, y), g.op(g.inv(x), g.inv(y)));
                    if (!nn.contains(comm)) { elem = false; break; }
                }
                if (!elem) break;
            }
            if (!elem) continue;
            best.rank = rank;
            best.h_id = h.id;
            best.n_id = nn.id;
        }
    }
    return best;
}

Prediction predict(const SubgroupLattice& lat, uint32_t p) {
    Prediction out{};
    SylowReport sp = sylow_shape(lat, p);
    out.gorenstein_over_fp = sp.shape != SylowShape::other;
    uint32_t sylow_order = lat.subgroups[sp.sylow_id].order();
    out.finite_gldim_over_fp =
        sp.shape == SylowShape::order_invertible ||
        (p == 2 && sp.shape == SylowShape::cyclic && sylow_order == 2);
    out.finite_gldim_over_z = true;
    for (uint32_t q = 2; q <= lat.g->n; ++q) {
        bool prime = q >= 2;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { prime = false; break; }
        if (!prime || lat.g->n % q != 0) continue;
        SylowReport sq = sylow_shape(lat, q);
        bool ok = sq.shape == SylowShape::cyclic ||
                  (q == 2 && sq.shape == SylowShape::dihedral);
        if (!ok) out.finite_gldim_over_z = false;
    }
    return out;
}

}  // namespace mackeylab::groups
