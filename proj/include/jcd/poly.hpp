// poly.hpp — polynomials in u = 1-z and Laurent series in x = a/u
//
// PolyU is the canonical representation of eigenmodes (they are polynomials
// in u). LaurentX exists for the pairing residues and the initial-data
// generating functions; it distinguishes exact Laurent polynomials from
// truncated series whose higher powers were never generated.
#pragma once

#include <span>
#include <vector>

#include "jcd/params.hpp"

namespace jcd {

// Exact binomial coefficient from a cached Pascal triangle (degrees <= 64).
double binomial(int n, int k);
constexpr int kBinomialDegreeCap = 64;

// Tree summation; limits cancellation error in alternating sums.
cplx pairwise_sum(std::span<const cplx> xs);

// ---------------------------------- PolyU -----------------------------------

// Dense polynomial in u; c[m] multiplies u^m. Canonical form keeps the
// highest stored coefficient nonzero; the zero polynomial is empty.
struct PolyU {
    std::vector<cplx> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    cplx coeff(int m) const {
        return (m >= 0 && m < static_cast<int>(c.size())) ? c[m] : cplx{0.0};
    }

    PolyU& trim();  // drop trailing exact zeros

    static PolyU monomial(cplx value, int power);
    static PolyU constant(cplx value) { return monomial(value, 0); }
};

PolyU operator+(const PolyU& p, const PolyU& q);
PolyU operator-(const PolyU& p, const PolyU& q);
PolyU operator*(const PolyU& p, const PolyU& q);
PolyU operator*(cplx s, const PolyU& p);

PolyU derivative(const PolyU& p);
PolyU shift_up(const PolyU& p, int powers = 1);  // multiply by u^powers
cplx eval(const PolyU& p, cplx u);
double max_abs_coeff(const PolyU& p);

// Sum_n vals_n (1-u)^n expanded in powers of u.
PolyU u_poly_from_sequence(std::span<const cplx> vals);
PolyU u_poly_from_sequence(std::span<const double> vals);

// Coefficients in z of p(1-z), n = 0..n_max.
std::vector<cplx> u_poly_to_z_coeffs(const PolyU& p, int n_max);

// -------------------------------- LaurentX ----------------------------------

// Laurent polynomial or truncated series in x; c[i] multiplies x^(lo+i).
// If truncated, powers above hi() exist but were not generated; powers below
// lo are known to vanish in either case.
struct LaurentX {
    int lo = 0;
    std::vector<cplx> c;
    bool truncated = false;

    int hi() const { return lo + static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    cplx coeff(int p) const {
        return (p >= lo && p <= hi()) ? c[p - lo] : cplx{0.0};
    }

    LaurentX& trim();  // canonicalize an exact value (no-op when truncated)

    static LaurentX monomial(cplx value, int power);
};

LaurentX operator+(const LaurentX& p, const LaurentX& q);
LaurentX operator-(const LaurentX& p, const LaurentX& q);
LaurentX operator*(const LaurentX& p, const LaurentX& q);
LaurentX operator*(cplx s, const LaurentX& p);

LaurentX x_deriv(const LaurentX& p);          // d/dx
LaurentX x_dx(const LaurentX& p);             // x d/dx (power-preserving)
LaurentX shift_power(const LaurentX& p, int dp);  // multiply by x^dp
double max_abs_coeff(const LaurentX& p);

// Coefficient of x^{-1}. Exactly zero when x^{-1} lies below the stored
// range; throws InsufficientTruncation when it lies above the horizon of a
// truncated series.
cplx residue(const LaurentX& p);

// u^m -> a^m x^{-m}; exact, lowest power -deg(p).
LaurentX u_poly_to_laurent_x(const PolyU& p, double a);

// Inverse map for exact values with powers <= 0 (round-trip checks).
PolyU laurent_x_to_u_poly(const LaurentX& p, double a);

}  // namespace jcd
