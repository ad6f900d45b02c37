#include "mackeylab/ff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mackeylab::ff {

uint32_t Fp::pow(uint32_t a, uint64_t e) const {
    uint64_t base = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return uint32_t(acc);
}

uint32_t Fp::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("Fp::inv of zero");
    // extended euclid
    int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("Fp::inv: p not prime or a not a unit");
    return uint32_t(t < 0 ? t + p : t);
}

Fp make_field(uint32_t p) {
    if (p < 2 || p >= (1u << 16)) throw std::invalid_argument("field characteristic out of range");
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
    return Fp{p};
}

Mat Mat::identity(Fp f, uint32_t n) {
    Mat m(f, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](uint32_t v) { return v == 0; });
}

std::string Mat::str() const {
    std::ostringstream os;
    for (uint32_t i = 0; i < rows; ++i) {
        os << (i ? "\n[" : "[");
        for (uint32_t j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
        os << "]";
    }
    return os.str();
}

static void check_same_field(const Mat& x, const Mat& y) {
    if (x.f.p != y.f.p) throw std::invalid_argument("field mismatch");
}

Mat add(const Mat& x, const Mat& y) {
    check_same_field(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("add: shape mismatch");
    Mat r(x.f, x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.f.add(x.a[i], y.a[i]);
    return r;
}

Mat sub(const Mat& x, const Mat& y) {
    check_same_field(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("sub: shape mismatch");
    Mat r(x.f, x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.f.sub(x.a[i], y.a[i]);
    return r;
}

Mat neg(const Mat& x) {
    Mat r(x.f, x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.f.neg(x.a[i]);
    return r;
}

Mat scale(const Mat& x, uint32_t c) {
    Mat r(x.f, x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.f.mul(x.a[i], c);
    return r;
}

// ---- packed F_2 kernels ---- //
// Packing is internal only: inputs and outputs are plain Mat either way.

namespace {

using word = uint64_t;
constexpr uint32_t WB = 64;

std::vector<word> pack_rows(const Mat& m) {
    uint32_t w = (m.cols + WB - 1) / WB;
    std::vector<word> out(size_t(m.rows) * w, 0);
    for (uint32_t i = 0; i < m.rows; ++i)
        for (uint32_t j = 0; j < m.cols; ++j)
            if (m.at(i, j)) out[size_t(i) * w + j / WB] |= word(1) << (j % WB);
    return out;
}

Mat unpack_rows(Fp f, const std::vector<word>& buf, uint32_t rows, uint32_t cols) {
    uint32_t w = (cols + WB - 1) / WB;
    Mat m(f, rows, cols);
    for (uint32_t i = 0; i < rows; ++i)
        for (uint32_t j = 0; j < cols; ++j)
            m.at(i, j) = (buf[size_t(i) * w + j / WB] >> (j % WB)) & 1;
    return m;
}

Mat mul_f2(const Mat& x, const Mat& y) {
    uint32_t w = (y.cols + WB - 1) / WB;
    std::vector<word> yp = pack_rows(y);
    std::vector<word> out(size_t(x.rows) * w, 0);
    for (uint32_t i = 0; i < x.rows; ++i) {
        word* dst = &out[size_t(i) * w];
        for (uint32_t k = 0; k < x.cols; ++k)
            if (x.at(i, k)) {
                const word* src = &yp[size_t(k) * w];
                for (uint32_t t = 0; t < w; ++t) dst[t] ^= src[t];
            }
    }
    return unpack_rows(x.f, out, x.rows, y.cols);
}

// In-place rref on packed rows; returns pivot column per kept row.
// Rows of the input buffer are permuted/combined; zero rows are dropped by
// compacting to the front.
std::vector<uint32_t> rref_f2_inplace(std::vector<word>& buf, uint32_t rows, uint32_t cols) {
    uint32_t w = (cols + WB - 1) / WB;
    std::vector<uint32_t> pivots;
    uint32_t done = 0;  // rows 0..done-1 hold the echelon basis so far
    for (uint32_t col = 0; col < cols && done < rows; ++col) {
        uint32_t wi = col / WB;
        word mask = word(1) << (col % WB);
        uint32_t sel = rows;
        for (uint32_t i = done; i < rows; ++i)
            if (buf[size_t(i) * w + wi] & mask) { sel = i; break; }
        if (sel == rows) continue;
        if (sel != done)
            for (uint32_t t = 0; t < w; ++t)
                std::swap(buf[size_t(sel) * w + t], buf[size_t(done) * w + t]);
        const word* piv = &buf[size_t(done) * w];
        for (uint32_t i = 0; i < rows; ++i) {
            if (i == done) continue;
            word* r = &buf[size_t(i) * w];
            if (r[wi] & mask)
                for (uint32_t t = wi; t < w; ++t) r[t] ^= piv[t];
        }
        pivots.push_back(col);
        ++done;
    }
    return pivots;
}

}  // namespace

Mat mul(const Mat& x, const Mat& y) {
    check_same_field(x, y);
    if (x.cols != y.rows) throw std::invalid_argument("mul: shape mismatch");
    if (x.f.p == 2) return mul_f2(x, y);
    Mat r(x.f, x.rows, y.cols);
    uint64_t p = x.f.p;
    for (uint32_t i = 0; i < x.rows; ++i)
        for (uint32_t k = 0; k < x.cols; ++k) {
            uint64_t v = x.at(i, k);
            if (!v) continue;
            const uint32_t* yr = &y.a[size_t(k) * y.cols];
            uint32_t* rr = &r.a[size_t(i) * r.cols];
            for (uint32_t j = 0; j < y.cols; ++j)
                rr[j] = uint32_t((rr[j] + v * yr[j]) % p);
        }
    return r;
}

Mat transpose(const Mat& x) {
    Mat r(x.f, x.cols, x.rows);
    for (uint32_t i = 0; i < x.rows; ++i)
        for (uint32_t j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

Mat vstack(const Mat& top, const Mat& bot) {
    check_same_field(top, bot);
    if (top.cols != bot.cols) throw std::invalid_argument("vstack: col mismatch");
    Mat r(top.f, top.rows + bot.rows, top.cols);
    std::copy(top.a.begin(), top.a.end(), r.a.begin());
    std::copy(bot.a.begin(), bot.a.end(), r.a.begin() + top.a.size());
    return r;
}

Mat hstack(const Mat& left, const Mat& right) {
    check_same_field(left, right);
    if (left.rows != right.rows) throw std::invalid_argument("hstack: row mismatch");
    Mat r(left.f, left.rows, left.cols + right.cols);
    for (uint32_t i = 0; i < r.rows; ++i) {
        std::copy_n(&left.a[size_t(i) * left.cols], left.cols, &r.a[size_t(i) * r.cols]);
        std::copy_n(&right.a[size_t(i) * right.cols], right.cols,
                    &r.a[size_t(i) * r.cols + left.cols]);
    }
    return r;
}

Mat take_rows(const Mat& x, const std::vector<uint32_t>& idx) {
    Mat r(x.f, uint32_t(idx.size()), x.cols);
    for (uint32_t i = 0; i < idx.size(); ++i)
        std::copy_n(&x.a[size_t(idx[i]) * x.cols], x.cols, &r.a[size_t(i) * x.cols]);
    return r;
}

Mat take_cols(const Mat& x, const std::vector<uint32_t>& idx) {
    Mat r(x.f, x.rows, uint32_t(idx.size()));
    for (uint32_t i = 0; i < x.rows; ++i)
        for (uint32_t j = 0; j < idx.size(); ++j) r.at(i, j) = x.at(i, idx[j]);
    return r;
}

Mat row(const Mat& x, uint32_t i) { return take_rows(x, {i}); }

Mat embed(const Mat& x, uint32_t r, uint32_t c, uint32_t i0, uint32_t j0) {
    if (i0 + x.rows > r || j0 + x.cols > c) throw std::invalid_argument("embed: out of range");
    Mat m(x.f, r, c);
    for (uint32_t i = 0; i < x.rows; ++i)
        std::copy_n(&x.a[size_t(i) * x.cols], x.cols, &m.a[size_t(i0 + i) * c + j0]);
    return m;
}

Mat direct_sum(const Mat& x, const Mat& y) {
    Mat m(x.f, x.rows + y.rows, x.cols + y.cols);
    for (uint32_t i = 0; i < x.rows; ++i)
        std::copy_n(&x.a[size_t(i) * x.cols], x.cols, &m.a[size_t(i) * m.cols]);
    for (uint32_t i = 0; i < y.rows; ++i)
        std::copy_n(&y.a[size_t(i) * y.cols], y.cols, &m.a[size_t(x.rows + i) * m.cols + x.cols]);
    return m;
}

Rref rref(const Mat& x) {
    if (x.f.p == 2) {
        std::vector<word> buf = pack_rows(x);
        std::vector<uint32_t> piv = rref_f2_inplace(buf, x.rows, x.cols);
        Rref out;
        out.rank = uint32_t(piv.size());
        out.pivots = std::move(piv);
        out.m = unpack_rows(x.f, buf, out.rank, x.cols);
        return out;
    }
    Mat m = x;
    const Fp f = x.f;
    std::vector<uint32_t> pivots;
    uint32_t done = 0;
    for (uint32_t col = 0; col < m.cols && done < m.rows; ++col) {
        uint32_t sel = m.rows;
        for (uint32_t i = done; i < m.rows; ++i)
            if (m.at(i, col)) { sel = i; break; }
        if (sel == m.rows) continue;
        if (sel != done)
            for (uint32_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(done, j));
        uint32_t s = f.inv(m.at(done, col));
        if (s != 1)
            for (uint32_t j = col; j < m.cols; ++j) m.at(done, j) = f.mul(m.at(done, j), s);
        for (uint32_t i = 0; i < m.rows; ++i) {
            if (i == done) continue;
            uint32_t c = m.at(i, col);
            if (!c) continue;
            for (uint32_t j = col; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(done, j)));
        }
        pivots.push_back(col);
        ++done;
    }
    Rref out;
    out.rank = uint32_t(pivots.size());
    out.pivots = std::move(pivots);
    std::vector<uint32_t> keep(out.rank);
    for (uint32_t i = 0; i < out.rank; ++i) keep[i] = i;
    out.m = take_rows(m, keep);
    return out;
}

uint32_t rank(const Mat& x) { return rref(x).rank; }

Mat kernel(const Mat& x) {
    Rref r = rref(x);
    std::vector<uint32_t> free_cols;
    {
        uint32_t pi = 0;
        for (uint32_t j = 0; j < x.cols; ++j) {
            if (pi < r.rank && r.pivots[pi] == j) { ++pi; continue; }
            free_cols.push_back(j);
        }
    }
    Mat out(x.f, uint32_t(free_cols.size()), x.cols);
    for (uint32_t t = 0; t < free_cols.size(); ++t) {
        uint32_t j = free_cols[t];
        out.at(t, j) = 1;
        for (uint32_t i = 0; i < r.rank; ++i)
            out.at(t, r.pivots[i]) = x.f.neg(r.m.at(i, j));
    }
    return out;
}

Mat left_kernel(const Mat& x) { return kernel(transpose(x)); }

std::optional<Mat> solve(const Mat& x, const Mat& rhs) {
    check_same_field(x, rhs);
    if (x.rows != rhs.rows) throw std::invalid_argument("solve: shape mismatch");
    Rref r = rref(hstack(x, rhs));
    Mat sol(x.f, x.cols, rhs.cols);
    for (uint32_t i = 0; i < r.rank; ++i) {
        uint32_t pc = r.pivots[i];
        if (pc >= x.cols) return std::nullopt;  // pivot in the rhs block: inconsistent
        for (uint32_t j = 0; j < rhs.cols; ++j) sol.at(pc, j) = r.m.at(i, x.cols + j);
    }
    return sol;
}

std::optional<Mat> solve_left(const Mat& x, const Mat& rhs) {
    auto s = solve(transpose(x), transpose(rhs));
    if (!s) return std::nullopt;
    return transpose(*s);
}

std::optional<Mat> inverse(const Mat& x) {
    if (x.rows != x.cols) return std::nullopt;
    Rref r = rref(hstack(x, Mat::identity(x.f, x.rows)));
    for (uint32_t i = 0; i < r.rank; ++i)
        if (r.pivots[i] != i) return std::nullopt;
    if (r.rank != x.rows) return std::nullopt;
    std::vector<uint32_t> idx(x.rows);
    for (uint32_t j = 0; j < x.rows; ++j) idx[j] = x.cols + j;
    return take_cols(r.m, idx);
}

bool is_invertible(const Mat& x) { return x.rows == x.cols && rank(x) == x.rows; }

Mat row_space(const Mat& x) { return rref(x).m; }

bool in_row_space(const Rref& basis, const Mat& v) {
    if (v.rows != 1 || v.cols != basis.m.cols) throw std::invalid_argument("in_row_space: shape");
    std::vector<uint32_t> w(v.a);
    const Fp f = basis.m.f;
    for (uint32_t i = 0; i < basis.rank; ++i) {
        uint32_t c = w[basis.pivots[i]];
        if (!c) continue;
        for (uint32_t j = 0; j < v.cols; ++j)
            w[j] = f.sub(w[j], f.mul(c, basis.m.at(i, j)));
    }
    return std::all_of(w.begin(), w.end(), [](uint32_t t) { return t == 0; });
}

Mat subspace_sum(const Mat& x, const Mat& y) { return row_space(vstack(x, y)); }

Mat subspace_intersect(const Mat& x, const Mat& y) {
    // rows u x + v y = 0  <=>  u x = -(v y) lies in both row spaces
    if (x.rows == 0 || y.rows == 0) return Mat(x.f, 0, x.cols);
    Mat stacked = vstack(x, y);               // (rx+ry) x cols
    Mat k = left_kernel(stacked);             // rows (u | v)
    std::vector<uint32_t> xi(x.rows);
    for (uint32_t i = 0; i < x.rows; ++i) xi[i] = i;
    Mat u = take_cols(k, xi);
    return row_space(mul(u, x));
}

bool subspace_contains(const Mat& big, const Mat& small) {
    Rref b = rref(big);
    for (uint32_t i = 0; i < small.rows; ++i)
        if (!in_row_space(b, row(small, i))) return false;
    return true;
}

bool subspace_equal(const Mat& x, const Mat& y) {
    Rref a = rref(x), b = rref(y);
    return a.m == b.m;
}

// ---- RowAccum ---- //

RowAccum::RowAccum(Fp f, uint32_t cols) : f_(f), cols_(cols) {}

bool RowAccum::reduces_to_zero(std::vector<uint32_t>& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint32_t c = v[pivots_[i]];
        if (!c) continue;
        const auto& r = rows_[i];
        for (uint32_t j = pivots_[i]; j < cols_; ++j)
            if (r[j]) v[j] = f_.sub(v[j], f_.mul(c, r[j]));
    }
    return std::all_of(v.begin(), v.end(), [](uint32_t t) { return t == 0; });
}

bool RowAccum::insert(const uint32_t* vin) {
    std::vector<uint32_t> v(vin, vin + cols_);
    if (reduces_to_zero(v)) return false;
    uint32_t piv = 0;
    while (v[piv] == 0) ++piv;
    uint32_t s = f_.inv(v[piv]);
    if (s != 1)
        for (uint32_t j = piv; j < cols_; ++j) v[j] = f_.mul(v[j], s);
    // back-substitute into existing rows to keep the basis reduced
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint32_t c = rows_[i][piv];
        if (!c) continue;
        for (uint32_t j = piv; j < cols_; ++j)
            rows_[i][j] = f_.sub(rows_[i][j], f_.mul(c, v[j]));
    }
    // insert keeping pivot order
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

void RowAccum::insert_all(const Mat& m) {
    for (uint32_t i = 0; i < m.rows; ++i) insert_row(m, i);
}

Mat RowAccum::basis() const {
    Mat m(f_, uint32_t(rows_.size()), cols_);
    for (uint32_t i = 0; i < rows_.size(); ++i)
        std::copy(rows_[i].begin(), rows_[i].end(), &m.a[size_t(i) * cols_]);
    return m;
}

}  // namespace mackeylab::ff
