#include "jcd/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "jcd/errors.hpp"

namespace jcd {

namespace {

// Neumaier-compensated accumulator; keeps convolution sums deterministic and
// tight even when terms span many orders of magnitude.
struct CompensatedReal {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct CompensatedCplx {
    CompensatedReal re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

const std::vector<std::vector<std::uint64_t>>& pascal_table() {
    static const std::vector<std::vector<std::uint64_t>> table = [] {
        std::vector<std::vector<std::uint64_t>> t(kBinomialDegreeCap + 1);
        for (int n = 0; n <= kBinomialDegreeCap; ++n) {
            t[n].resize(n + 1);
            t[n][0] = t[n][n] = 1;
            for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
        return t;
    }();
    return table;
}

}  // namespace

double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (n > kBinomialDegreeCap) {
        throw std::out_of_range("binomial: degree exceeds cached cap 64");
    }
    return static_cast<double>(pascal_table()[n][k]);
}

cplx pairwise_sum(std::span<const cplx> xs) {
    if (xs.size() <= 8) {
        cplx s{0.0};
        for (auto x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// ---------------------------------- PolyU -----------------------------------

PolyU& PolyU::trim() {
    while (!c.empty() && c.back() == cplx{0.0}) c.pop_back();
    return *this;
}

PolyU PolyU::monomial(cplx value, int power) {
    if (power < 0) throw std::invalid_argument("PolyU::monomial: negative power");
    PolyU p;
    if (value != cplx{0.0}) {
        p.c.assign(power + 1, cplx{0.0});
        p.c[power] = value;
    }
    return p;
}

PolyU operator+(const PolyU& p, const PolyU& q) {
    PolyU r;
    r.c.resize(std::max(p.c.size(), q.c.size()), cplx{0.0});
    for (std::size_t i = 0; i < p.c.size(); ++i) r.c[i] += p.c[i];
    for (std::size_t i = 0; i < q.c.size(); ++i) r.c[i] += q.c[i];
    return r.trim();
}

PolyU operator-(const PolyU& p, const PolyU& q) { return p + (cplx{-1.0} * q); }

PolyU operator*(const PolyU& p, const PolyU& q) {
    if (p.is_zero() || q.is_zero()) return {};
    PolyU r;
    r.c.assign(p.c.size() + q.c.size() - 1, cplx{0.0});
    for (std::size_t m = 0; m < r.c.size(); ++m) {
        CompensatedCplx acc;
        const std::size_t i0 = m >= q.c.size() ? m - q.c.size() + 1 : 0;
        const std::size_t i1 = std::min(m, p.c.size() - 1);
        for (std::size_t i = i0; i <= i1; ++i) acc.add(p.c[i] * q.c[m - i]);
        r.c[m] = acc.value();
    }
    return r.trim();
}

PolyU operator*(cplx s, const PolyU& p) {
    PolyU r = p;
    for (auto& v : r.c) v *= s;
    return r.trim();
}

PolyU derivative(const PolyU& p) {
    PolyU r;
    if (p.c.size() <= 1) return r;
    r.c.resize(p.c.size() - 1);
    for (std::size_t m = 1; m < p.c.size(); ++m) r.c[m - 1] = static_cast<double>(m) * p.c[m];
    return r.trim();
}

PolyU shift_up(const PolyU& p, int powers) {
    if (p.is_zero()) return {};
    PolyU r;
    r.c.assign(p.c.size() + powers, cplx{0.0});
    std::copy(p.c.begin(), p.c.end(), r.c.begin() + powers);
    return r;
}

cplx eval(const PolyU& p, cplx u) {
    cplx v{0.0};
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) v = v * u + *it;
    return v;
}

double max_abs_coeff(const PolyU& p) {
    double m = 0.0;
    for (auto v : p.c) m = std::max(m, std::abs(v));
    return m;
}

PolyU u_poly_from_sequence(std::span<const cplx> vals) {
    // sum_n vals_n (1-u)^n: coefficient of u^m is (-1)^m sum_{n>=m} vals_n C(n,m)
    PolyU p;
    if (vals.empty()) return p;
    const int nmax = static_cast<int>(vals.size()) - 1;
    p.c.assign(nmax + 1, cplx{0.0});
    std::vector<cplx> terms;
    for (int m = 0; m <= nmax; ++m) {
        terms.clear();
        for (int n = m; n <= nmax; ++n) terms.push_back(vals[n] * binomial(n, m));
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        p.c[m] = sign * pairwise_sum(terms);
    }
    return p.trim();
}

PolyU u_poly_from_sequence(std::span<const double> vals) {
    std::vector<cplx> v(vals.begin(), vals.end());
    return u_poly_from_sequence(std::span<const cplx>(v));
}

std::vector<cplx> u_poly_to_z_coeffs(const PolyU& p, int n_max) {
    if (n_max < 0) throw std::invalid_argument("u_poly_to_z_coeffs: n_max must be >= 0");
    std::vector<cplx> out(n_max + 1, cplx{0.0});
    std::vector<cplx> terms;
    const int deg = p.degree();
    for (int n = 0; n <= std::min(n_max, deg); ++n) {
        terms.clear();
        for (int m = n; m <= deg; ++m) terms.push_back(p.c[m] * binomial(m, n));
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        out[n] = sign * pairwise_sum(terms);
    }
    return out;
}

// -------------------------------- LaurentX ----------------------------------

LaurentX& LaurentX::trim() {
    if (truncated) return *this;
    while (!c.empty() && c.back() == cplx{0.0}) c.pop_back();
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == cplx{0.0}) ++lead;
    if (lead > 0) {
        c.erase(c.begin(), c.begin() + lead);
        lo += static_cast<int>(lead);
    }
    if (c.empty()) lo = 0;
    return *this;
}

LaurentX LaurentX::monomial(cplx value, int power) {
    LaurentX p;
    if (value != cplx{0.0}) {
        p.lo = power;
        p.c = {value};
    }
    return p;
}

LaurentX operator+(const LaurentX& p, const LaurentX& q) {
    if (p.is_zero() && !p.truncated) {
        LaurentX r = q;
        return r.trim();
    }
    if (q.is_zero() && !q.truncated) {
        LaurentX r = p;
        return r.trim();
    }
    if (p.is_zero() || q.is_zero()) return LaurentX{0, {}, true};
    LaurentX r;
    r.truncated = p.truncated || q.truncated;
    r.lo = std::min(p.lo, q.lo);
    int hi = std::max(p.hi(), q.hi());
    // A truncated operand caps the reliable range of the sum.
    if (p.truncated) hi = std::min(hi, p.hi());
    if (q.truncated) hi = std::min(hi, q.hi());
    if (hi < r.lo) return LaurentX{0, {}, r.truncated};
    r.c.assign(hi - r.lo + 1, cplx{0.0});
    for (int pw = r.lo; pw <= hi; ++pw) r.c[pw - r.lo] = p.coeff(pw) + q.coeff(pw);
    return r.trim();
}

LaurentX operator-(const LaurentX& p, const LaurentX& q) { return p + (cplx{-1.0} * q); }

LaurentX operator*(const LaurentX& p, const LaurentX& q) {
    if ((p.is_zero() && !p.truncated) || (q.is_zero() && !q.truncated)) return {};
    if (p.is_zero() || q.is_zero()) return LaurentX{0, {}, true};
    LaurentX r;
    r.truncated = p.truncated || q.truncated;
    r.lo = p.lo + q.lo;
    int hi = p.hi() + q.hi();
    // Coefficients above these caps would need coefficients beyond a
    // truncation horizon.
    if (p.truncated) hi = std::min(hi, p.hi() + q.lo);
    if (q.truncated) hi = std::min(hi, q.hi() + p.lo);
    if (hi < r.lo) return LaurentX{0, {}, true};
    r.c.assign(hi - r.lo + 1, cplx{0.0});
    for (int pw = r.lo; pw <= hi; ++pw) {
        CompensatedCplx acc;
        const int i0 = std::max(p.lo, pw - q.hi());
        const int i1 = std::min(p.hi(), pw - q.lo);
        for (int i = i0; i <= i1; ++i) acc.add(p.c[i - p.lo] * q.c[pw - i - q.lo]);
        r.c[pw - r.lo] = acc.value();
    }
    return r.trim();
}

LaurentX operator*(cplx s, const LaurentX& p) {
    LaurentX r = p;
    for (auto& v : r.c) v *= s;
    return r.trim();
}

LaurentX x_deriv(const LaurentX& p) {
    LaurentX r;
    r.truncated = p.truncated;
    if (p.is_zero()) return r;
    r.lo = p.lo - 1;
    r.c.resize(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        r.c[i] = static_cast<double>(p.lo + static_cast<int>(i)) * p.c[i];
    }
    return r.trim();
}

LaurentX x_dx(const LaurentX& p) { return shift_power(x_deriv(p), 1); }

LaurentX shift_power(const LaurentX& p, int dp) {
    LaurentX r = p;
    if (!r.is_zero()) r.lo += dp;
    return r;
}

double max_abs_coeff(const LaurentX& p) {
    double m = 0.0;
    for (auto v : p.c) m = std::max(m, std::abs(v));
    return m;
}

cplx residue(const LaurentX& p) {
    if (p.is_zero()) {
        if (p.truncated) throw InsufficientTruncation("residue: empty truncated series");
        return {0.0};
    }
    if (-1 < p.lo) return {0.0};
    if (-1 <= p.hi()) return p.c[-1 - p.lo];
    if (p.truncated) {
        throw InsufficientTruncation(
            "residue: x^-1 lies above the truncation horizon; increase the series order");
    }
    return {0.0};
}

LaurentX u_poly_to_laurent_x(const PolyU& p, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("u_poly_to_laurent_x: a must be positive");
    LaurentX r;
    if (p.is_zero()) return r;
    const int deg = p.degree();
    r.lo = -deg;
    r.c.assign(deg + 1, cplx{0.0});
    double apow = 1.0;
    for (int m = 0; m <= deg; ++m) {
        r.c[deg - m] = p.c[m] * apow;  // u^m -> a^m x^{-m}
        apow *= a;
    }
    return r.trim();
}

PolyU laurent_x_to_u_poly(const LaurentX& p, double a) {
    if (p.truncated) throw std::invalid_argument("laurent_x_to_u_poly: truncated input");
    if (p.is_zero()) return {};
    if (p.hi() > 0) throw std::invalid_argument("laurent_x_to_u_poly: positive powers present");
    PolyU r;
    r.c.assign(-p.lo + 1, cplx{0.0});
    for (int pw = p.lo; pw <= p.hi(); ++pw) {
        r.c[-pw] = p.coeff(pw) * std::pow(a, pw);
    }
    return r.trim();
}

}  // namespace jcd
