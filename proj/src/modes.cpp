#include "jcd/modes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jcd/errors.hpp"
#include "jcd/hyper.hpp"

namespace jcd {

namespace {

void check_index(int k) {
    if (k < 0) throw std::invalid_argument("mode index k must be >= 0");
}

cplx principal_sqrt(double radicand) { return std::sqrt(cplx(radicand, 0.0)); }

// pre * (u/a)^p * sum_n t_n (-a/u)^n as a polynomial in u. The series must
// terminate within p+1 coefficients so no negative powers survive.
PolyU expand_series_in_u(cplx pre, int p, const std::vector<cplx>& t, double a) {
    if (static_cast<int>(t.size()) > p + 1) {
        throw std::logic_error("expand_series_in_u: series longer than prefactor power");
    }
    PolyU out;
    out.c.assign(p + 1, cplx{0.0});
    cplx factor = pre * std::pow(a, -p);  // term n carries (-1)^n a^{n-p} u^{p-n}
    for (std::size_t n = 0; n < t.size(); ++n) {
        out.c[static_cast<std::size_t>(p) - n] = t[n] * factor;
        factor *= -a;
    }
    return out.trim();
}

double max_term_coeff(std::initializer_list<const PolyU*> terms) {
    double m = 0.0;
    for (const auto* p : terms) m = std::max(m, max_abs_coeff(*p));
    return m;
}

}  // namespace

BranchRoots branch_roots(const ModelParams& params, int k) {
    check_index(k);
    const double a = params.a;
    const double wbar_sq = 1.0 - 4.0 * a * (k + 1);
    if (std::abs(wbar_sq) <= params.eps_degenerate) {
        std::ostringstream os;
        os << "branch_roots: exceptional point at a=" << a << ", k=" << k
           << " (|1-4a(k+1)|=" << std::abs(wbar_sq) << "); the +/- modes coalesce";
        throw ExceptionalPoint(os.str());
    }
    return {principal_sqrt(a * a - 4.0 * a * (k + 1) + 1.0), principal_sqrt(wbar_sq)};
}

cplx eigenvalue(const ModelParams& params, ModeLabel label) {
    check_index(label.k);
    const cplx base{-2.0 * label.k - 1.0};
    switch (label.branch) {
        case Branch::fsector:
        case Branch::zero:
            return base;
        case Branch::plus:
            return base + branch_roots(params, label.k).wbar;
        case Branch::minus:
            return base - branch_roots(params, label.k).wbar;
    }
    throw std::logic_error("eigenvalue: bad branch");
}

ModeTriple build_mode(const ModelParams& params, ModeLabel label) {
    check_index(label.k);
    if (label.branch == Branch::fsector) {
        throw std::invalid_argument("build_mode: fsector modes are plain monomials, use build_f_mode");
    }
    const double a = params.a;
    const double sqrt_a = params.alpha();
    const int k = label.k;
    const cplx mk{-static_cast<double>(k)};

    std::vector<cplx> lower;
    cplx upperE, upperD, upperH, preD, preH, lambda;
    if (label.branch == Branch::zero) {
        // w_k only; constructible even at an exceptional point of wbar_k.
        const cplx w = principal_sqrt(a * a - 4.0 * a * (k + 1) + 1.0);
        lower = {-0.5 * a + 1.0 + 0.5 * w, -0.5 * a + 1.0 - 0.5 * w};
        upperE = 0.5;
        upperD = -0.5;
        upperH = 1.5;
        preD = -2.0 * a;
        preH = 1.0 / sqrt_a;
        lambda = cplx{-2.0 * k - 1.0};
    } else {
        const double s = (label.branch == Branch::plus) ? 1.0 : -1.0;
        const cplx wbar = branch_roots(params, k).wbar;
        lower = {1.0 - s * 0.5 * wbar, 1.0 - a - s * wbar};
        upperE = 0.5 - s * 0.5 * wbar;
        upperD = -0.5 - s * 0.5 * wbar;
        upperH = 1.5 - s * 0.5 * wbar;
        preD = -2.0 * a / (1.0 + s * wbar);
        preH = (1.0 - s * wbar) / sqrt_a;
        lambda = cplx{-2.0 * k - 1.0} + s * wbar;
    }

    ModeTriple mode;
    mode.label = label;
    mode.lambda = lambda;
    mode.E = expand_series_in_u(
        1.0, k, series_coeffs({{mk, upperE}, lower, k + 1}, params.eps_param), a);
    mode.D = expand_series_in_u(
        preD, k + 1, series_coeffs({{mk, upperD}, lower, k + 1}, params.eps_param), a);
    mode.H = expand_series_in_u(
        preH, k, series_coeffs({{mk, upperH}, lower, k + 1}, params.eps_param), a);
    return mode;
}

PolyU build_f_mode(int k) {
    check_index(k);
    return PolyU::monomial(1.0, k);
}

double verify_mode_system(const ModeTriple& mode, const ModelParams& params) {
    const cplx lam = mode.lambda;
    const cplx alpha{params.alpha()};
    const PolyU dE = derivative(mode.E);
    const PolyU dD = derivative(mode.D);
    const PolyU dH = derivative(mode.H);
    const PolyU one_minus_u = PolyU{{1.0, -1.0}};

    const PolyU t1a = cplx{-2.0} * shift_up(dD);
    const PolyU t1b = cplx{-2.0} * shift_up(mode.E);
    const PolyU t1c = (-lam) * mode.D;
    const PolyU r1 = t1a + t1b + t1c;

    const PolyU t2a = cplx{-2.0} * shift_up(dE);
    const PolyU t2b = (-alpha) * mode.H;
    const PolyU t2c = (-lam) * mode.E;
    const PolyU r2 = t2a + t2b + t2c;

    const PolyU t3a = cplx{-2.0} * shift_up(dH);
    const PolyU t3b = cplx{-1.0} * mode.H;
    const PolyU t3c = (2.0 * alpha) * dD;
    const PolyU t3d = (-4.0 * alpha) * (one_minus_u * dE);
    const PolyU t3e = (4.0 * alpha) * mode.E;
    const PolyU t3f = (-lam) * mode.H;
    const PolyU r3 = t3a + t3b + t3c + t3d + t3e + t3f;

    const double scale = max_term_coeff({&mode.E, &mode.D, &mode.H});
    const double res = max_term_coeff({&r1, &r2, &r3});
    return scale > 0.0 ? res / scale : res;
}

double third_order_residual(const PolyU& E, cplx lambda, const ModelParams& params) {
    const double a = params.a;
    const cplx lam = lambda;
    const PolyU d1 = derivative(E);
    const PolyU d2 = derivative(d1);
    const PolyU d3 = derivative(d2);

    const PolyU t0 = cplx{8.0} * shift_up(d3, 3);
    // 4u[u(3lam+2a+9) - 2a]
    const PolyU t1 = (PolyU{{0.0, -8.0 * a, 4.0 * (3.0 * lam + 2.0 * a + 9.0)}}) * d2;
    // 2[u(3lam^2+2a lam+12lam+10a+12) - 2a lam - 4a]
    const cplx c1 = 3.0 * lam * lam + 2.0 * a * lam + 12.0 * lam + 10.0 * a + 12.0;
    const PolyU t2 = (PolyU{{-4.0 * a * lam - 8.0 * a, 2.0 * c1}}) * d1;
    const cplx c0 = lam * lam * lam + 3.0 * lam * lam + 4.0 * a * lam + 2.0 * lam + 4.0 * a;
    const PolyU t3 = c0 * E;
    const PolyU r = t0 + t1 + t2 + t3;

    const double scale = max_abs_coeff(E);
    return scale > 0.0 ? max_abs_coeff(r) / scale : max_abs_coeff(r);
}

double representation_identity_deviation(const ModelParams& params, ModeLabel label,
                                         std::span<const double> us) {
    const double a = params.a;
    const int k = label.k;
    const cplx mk{-static_cast<double>(k)};
    HyperSpec low_order;  // series in u/a whose inverted term order is the polynomial
    if (label.branch == Branch::zero) {
        const cplx w = principal_sqrt(a * a - 4.0 * a * (k + 1) + 1.0);
        low_order.upper = {mk, mk + 0.5 * a + 0.5 * w, mk + 0.5 * a - 0.5 * w};
        low_order.lower = {mk + 0.5};
    } else if (label.branch == Branch::plus || label.branch == Branch::minus) {
        const double s = (label.branch == Branch::plus) ? 1.0 : -1.0;
        const cplx wbar = branch_roots(params, label.k).wbar;
        low_order.upper = {mk, mk + s * 0.5 * wbar, mk + cplx{a} + s * wbar};
        low_order.lower = {mk + 0.5 + s * 0.5 * wbar};
    } else {
        throw std::invalid_argument("representation_identity_deviation: fsector has one form only");
    }
    low_order.n_terms = k + 1;
    const std::vector<cplx> t = series_coeffs(low_order, params.eps_param);
    const cplx top = t.back();  // leading-coefficient ratio between the two forms
    if (top == cplx{0.0}) {
        throw Error("representation_identity_deviation: degenerate leading coefficient");
    }
    const PolyU E = build_mode(params, label).E;

    double dev = 0.0, scale = 0.0;
    for (double u : us) {
        cplx series{0.0};
        cplx pw{1.0};
        std::vector<cplx> terms(t.size());
        for (std::size_t n = 0; n < t.size(); ++n) {
            terms[n] = t[n] * pw;
            pw *= u / a;
        }
        series = pairwise_sum(terms);
        dev = std::max(dev, std::abs(eval(E, u) * top - series));
        scale = std::max(scale, std::abs(series));
    }
    return scale > 0.0 ? dev / scale : dev;
}

double verify_f_mode(const PolyU& F, int k) {
    const cplx lam{-2.0 * k - 1.0};
    const PolyU t1 = cplx{-2.0} * shift_up(derivative(F));
    const PolyU r = t1 + ((-1.0 - lam) * F);
    const double scale = std::max(max_abs_coeff(t1), max_abs_coeff(F));
    return scale > 0.0 ? max_abs_coeff(r) / scale : max_abs_coeff(r);
}

}  // namespace jcd
