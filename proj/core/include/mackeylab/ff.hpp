#pragma once
// Dense exact linear algebra over prime fields F_p, p < 2^16.
// Vectors are column vectors; subspace bases are stored as the rows of a
// matrix.  Elimination is deterministic: leftmost pivot column, first
// nonzero row, so identical inputs give identical echelon forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mackeylab::ff {

struct Fp {
    uint32_t p = 2;

    bool operator==(const Fp&) const = default;

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t(a) * b) % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;  // a != 0
    uint32_t reduce_int(int64_t v) const {
        int64_t r = v % int64_t(p);
        return uint32_t(r < 0 ? r + p : r);
    }
};

// must_be_prime throws std::invalid_argument otherwise
Fp make_field(uint32_t p);

struct Mat {
    Fp f;
    uint32_t rows = 0, cols = 0;
    std::vector<uint32_t> a;  // row-major, values in [0, p)

    Mat() = default;
    Mat(Fp f_, uint32_t r, uint32_t c) : f(f_), rows(r), cols(c), a(size_t(r) * c, 0) {}

    uint32_t& at(uint32_t i, uint32_t j) { return a[size_t(i) * cols + j]; }
    uint32_t at(uint32_t i, uint32_t j) const { return a[size_t(i) * cols + j]; }

    static Mat identity(Fp f, uint32_t n);
    static Mat zero(Fp f, uint32_t r, uint32_t c) { return Mat(f, r, c); }

    bool operator==(const Mat&) const = default;
    bool is_zero() const;
    std::string str() const;
};

Mat add(const Mat& x, const Mat& y);
Mat sub(const Mat& x, const Mat& y);
Mat neg(const Mat& x);
Mat scale(const Mat& x, uint32_t c);
Mat mul(const Mat& x, const Mat& y);
Mat transpose(const Mat& x);
Mat vstack(const Mat& top, const Mat& bot);
Mat hstack(const Mat& left, const Mat& right);
Mat take_rows(const Mat& x, const std::vector<uint32_t>& idx);
Mat take_cols(const Mat& x, const std::vector<uint32_t>& idx);
Mat row(const Mat& x, uint32_t i);

// x placed at block position (i0, j0) of a zero (r x c) matrix
Mat embed(const Mat& x, uint32_t r, uint32_t c, uint32_t i0, uint32_t j0);
Mat direct_sum(const Mat& x, const Mat& y);

struct Rref {
    Mat m;                        // reduced row echelon form, zero rows dropped
    std::vector<uint32_t> pivots; // pivot column per kept row, strictly increasing
    uint32_t rank = 0;
};

Rref rref(const Mat& x);
uint32_t rank(const Mat& x);

// Basis of {v : x v = 0}, returned as rows (nullity x cols), in the
// deterministic order induced by the free columns of the rref.
Mat kernel(const Mat& x);
// Basis of {w : w^T x = 0} as rows.
Mat left_kernel(const Mat& x);

// Solve x * sol = rhs; rhs may have several columns.  nullopt if inconsistent.
std::optional<Mat> solve(const Mat& x, const Mat& rhs);
// Solve sol * x = rhs.
std::optional<Mat> solve_left(const Mat& x, const Mat& rhs);
std::optional<Mat> inverse(const Mat& x);
bool is_invertible(const Mat& x);

// ---- subspaces (rows of a matrix span the subspace) ---- //

Mat row_space(const Mat& x);  // reduced basis
bool in_row_space(const Rref& basis, const Mat& v);  // v: 1 x cols
Mat subspace_sum(const Mat& x, const Mat& y);
Mat subspace_intersect(const Mat& x, const Mat& y);
bool subspace_contains(const Mat& big, const Mat& small);
bool subspace_equal(const Mat& x, const Mat& y);

// Incremental row-space accumulator.  Rows are kept reduced; insert
// returns true when the row enlarged the space.
class RowAccum {
  public:
    explicit RowAccum(Fp f, uint32_t cols);
    bool insert(const uint32_t* v);
    bool insert_row(const Mat& m, uint32_t i) { return insert(&m.a[size_t(i) * m.cols]); }
    void insert_all(const Mat& m);
    uint32_t dim() const { return uint32_t(pivots_.size()); }
    uint32_t cols() const { return cols_; }
    Mat basis() const;  // rows sorted by pivot column
    // reduce v in place against the current basis; returns true if v becomes 0
    bool reduces_to_zero(std::vector<uint32_t>& v) const;

  private:
    Fp f_;
    uint32_t cols_;
    std::vector<std::vector<uint32_t>> rows_;  // normalized: leading 1
    std::vector<uint32_t> pivots_;             // parallel to rows_
};

}  // namespace mackeylab::ff
