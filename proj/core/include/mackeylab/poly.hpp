#pragma once
// Univariate polynomial arithmetic and factorization over F_p.
// Used for minimal polynomials of endomorphisms and Fitting splittings.

#include <cstdint>
#include <vector>

#include "mackeylab/ff.hpp"

namespace mackeylab::poly {

using ff::Fp;
using ff::Mat;

// coefficient vector, c[i] is the coefficient of x^i; normalized so the
// last entry is nonzero (empty vector = zero polynomial)
struct FpPoly {
    Fp f;
    std::vector<uint32_t> c;

    uint32_t deg() const { return c.empty() ? 0 : uint32_t(c.size() - 1); }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    void normalize();
};

FpPoly make_poly(Fp f, std::vector<uint32_t> coeffs);
FpPoly zero_poly(Fp f);
FpPoly one_poly(Fp f);
FpPoly x_poly(Fp f);  // the monomial x

FpPoly add(const FpPoly& a, const FpPoly& b);
FpPoly sub(const FpPoly& a, const FpPoly& b);
FpPoly mul(const FpPoly& a, const FpPoly& b);
FpPoly monic(const FpPoly& a);
// division with remainder; b != 0
struct DivMod { FpPoly q, r; };
DivMod divmod(const FpPoly& a, const FpPoly& b);
FpPoly gcd(const FpPoly& a, const FpPoly& b);
struct ExtGcd {
    FpPoly g, u, v;  // g = gcd (monic), g = u*a + v*b
};
ExtGcd ext_gcd(const FpPoly& a, const FpPoly& b);  // monic
FpPoly derivative(const FpPoly& a);
FpPoly powmod(const FpPoly& base, uint64_t e, const FpPoly& mod);
uint32_t eval(const FpPoly& a, uint32_t x);

bool operator==(const FpPoly& a, const FpPoly& b);

// distinct monic irreducible factors with multiplicities, sorted by
// (degree, coefficient vector) so output order is deterministic.
// Equal-degree splitting is randomized internally from `seed`; the result
// itself is canonical.
struct Factor { FpPoly p; uint32_t mult; };
std::vector<Factor> factor(const FpPoly& a, uint64_t seed = 0xB0C);

// characteristic polynomial (monic, degree n) via Hessenberg reduction
FpPoly char_poly(const Mat& m);
// minimal polynomial of a square matrix (monic), via Krylov chains
FpPoly min_poly(const Mat& m);
// characteristic-style annihilator of the action of m on the row vector v
FpPoly order_poly(const Mat& m, const Mat& v);

// evaluate p at matrix argument
Mat eval_mat(const FpPoly& p, const Mat& m);

}  // namespace mackeylab::poly
