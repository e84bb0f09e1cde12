#include "jcd/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "jcd/errors.hpp"
#include "jcd/hyper.hpp"

namespace jcd {

namespace {

LaurentX truncated_series(cplx scale, int lowest_power, const std::vector<cplx>& t) {
    LaurentX s;
    s.lo = lowest_power;
    s.truncated = true;
    s.c.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) s.c[i] = scale * t[i];
    return s;
}

double check_ep_guard(const ModelParams& params, int m, const char* where) {
    const double denom = 1.0 - 4.0 * params.a * (m + 1);
    if (std::abs(denom) <= params.eps_degenerate) {
        std::ostringstream os;
        os << where << ": exceptional point at a=" << params.a << ", m=" << m
           << "; adjoint normalization 1-4a(m+1) vanishes";
        throw ExceptionalPoint(os.str());
    }
    return denom;
}

double max_term_coeff(std::initializer_list<const LaurentX*> terms) {
    double m = 0.0;
    for (const auto* p : terms) m = std::max(m, max_abs_coeff(*p));
    return m;
}

}  // namespace

AdjointTriple build_adjoint(const ModelParams& params, ModeLabel label, int order) {
    if (label.k < 0) throw std::invalid_argument("build_adjoint: index must be >= 0");
    if (order < 1) throw std::invalid_argument("build_adjoint: order must be >= 1");
    if (label.branch == Branch::fsector) {
        throw std::invalid_argument("build_adjoint: fsector adjoints are monomials, use build_f_adjoint");
    }
    const double a = params.a;
    const double sqrt_a = params.alpha();
    const int m = label.k;
    const double denom = check_ep_guard(params, m, "build_adjoint");

    AdjointTriple adj;
    adj.label = label;
    adj.order = order;

    if (label.branch == Branch::zero) {
        const cplx w = std::sqrt(cplx(a * a - 4.0 * a * (m + 1) + 1.0, 0.0));
        adj.c_prime = 2.0 * (m + 1) / denom;
        adj.c = -6.0 * adj.c_prime / (4.0 * a * m + 8.0 * a + 3.0);
        adj.c_dprime = 0.5 * sqrt_a / (m + 1) * adj.c_prime;
        const std::vector<cplx> lowE = {0.5 * a + 2.0 + 0.5 * w, 0.5 * a + 2.0 - 0.5 * w};
        const std::vector<cplx> lowDH = {0.5 * a + 1.0 + 0.5 * w, 0.5 * a + 1.0 - 0.5 * w};
        adj.Ehat = truncated_series(
            adj.c, m, series_coeffs({{cplx(m + 2.0), 2.5}, lowE, order}, params.eps_param));
        adj.Dhat = truncated_series(
            adj.c_prime, m, series_coeffs({{cplx(m + 2.0), 0.5}, lowDH, order}, params.eps_param));
        adj.Hhat = truncated_series(
            adj.c_dprime, m - 1,
            series_coeffs({{cplx(m + 1.0), 1.5}, lowDH, order}, params.eps_param));
    } else {
        const double s = (label.branch == Branch::plus) ? 1.0 : -1.0;
        const cplx wbar = branch_roots(params, m).wbar;
        adj.c_prime = -(m + 1.0) / denom;
        adj.c = -s * 2.0 * a * wbar * adj.c_prime / (1.0 - s * wbar);
        adj.c_dprime = 2.0 * a * sqrt_a * adj.c_prime / (1.0 - s * wbar);
        const std::vector<cplx> lowE = {s * 0.5 * wbar, 1.0 + a + s * wbar};
        const std::vector<cplx> lowDH = {1.0 + s * 0.5 * wbar, 1.0 + a + s * wbar};
        const cplx up2 = 1.5 + s * 0.5 * wbar;
        adj.Ehat = truncated_series(
            adj.c, m - 1, series_coeffs({{cplx(m + 1.0), up2}, lowE, order}, params.eps_param));
        adj.Dhat = truncated_series(
            adj.c_prime, m,
            series_coeffs({{cplx(m + 2.0), up2 - 1.0}, lowDH, order}, params.eps_param));
        adj.Hhat = truncated_series(
            adj.c_dprime, m - 1,
            series_coeffs({{cplx(m + 1.0), up2}, lowDH, order}, params.eps_param));
    }
    return adj;
}

LaurentX build_f_adjoint(const ModelParams& params, int m) {
    if (m < 0) throw std::invalid_argument("build_f_adjoint: index must be >= 0");
    return LaurentX::monomial(std::pow(params.a, -m), m - 1);
}

cplx pair_mode(const AdjointTriple& adj, const ModeTriple& mode, const ModelParams& params) {
    const double a = params.a;
    const cplx rE = residue(adj.Ehat * u_poly_to_laurent_x(mode.E, a));
    const cplx rD = residue(adj.Dhat * u_poly_to_laurent_x(mode.D, a));
    const cplx rH = residue(adj.Hhat * u_poly_to_laurent_x(mode.H, a));
    return rE + rD + rH;
}

cplx pair_f(const LaurentX& adjF, const PolyU& modeF, const ModelParams& params) {
    return residue(adjF * u_poly_to_laurent_x(modeF, params.a));
}

double verify_adjoint_system(const AdjointTriple& adj, const ModelParams& params) {
    const double a = params.a;
    const cplx sa{params.alpha()};
    const cplx lam = eigenvalue(params, adj.label);
    const LaurentX &E = adj.Ehat, &D = adj.Dhat, &H = adj.Hhat;
    const LaurentX xHd = x_dx(H);  // x dH/dx

    // -2x D' - 2D + (2/sqrt a) x^2 H' + (4/sqrt a) x H = lam D
    const LaurentX d1 = cplx{-2.0} * x_dx(D);
    const LaurentX d2 = (-2.0 - lam) * D;
    const LaurentX d3 = (2.0 / sa) * shift_power(xHd, 1);
    const LaurentX d4 = (4.0 / sa) * shift_power(H, 1);
    const LaurentX rD = d1 + d2 + d3 + d4;

    // -2x E' - 2E - (2a/x) D - (4/sqrt a) x(x-a) H' - (8/sqrt a)(x-a) H = lam E
    const LaurentX e1 = cplx{-2.0} * x_dx(E);
    const LaurentX e2 = (-2.0 - lam) * E;
    const LaurentX e3 = cplx{-2.0 * a} * shift_power(D, -1);
    const LaurentX e4 = (-4.0 / sa) * (shift_power(xHd, 1) - cplx{a} * xHd);
    const LaurentX e5 = (-8.0 / sa) * (shift_power(H, 1) - cplx{a} * H);
    const LaurentX rE = e1 + e2 + e3 + e4 + e5;

    // -2x H' - 3H - sqrt(a) E = lam H
    const LaurentX h1 = cplx{-2.0} * xHd;
    const LaurentX h2 = (-3.0 - lam) * H;
    const LaurentX h3 = (-sa) * E;
    const LaurentX rH = h1 + h2 + h3;

    const double scale = max_term_coeff({&E, &D, &H});
    const double res = max_term_coeff({&rD, &rE, &rH});
    return scale > 0.0 ? res / scale : res;
}

double adjoint_third_order_residual(const LaurentX& Ehat, cplx lambda,
                                    const ModelParams& params) {
    const double a = params.a;
    const cplx lam = lambda;
    const LaurentX d1 = x_deriv(Ehat);
    const LaurentX d2 = x_deriv(d1);
    const LaurentX d3 = x_deriv(d2);

    const LaurentX t0 = cplx{8.0} * shift_power(d3, 3);
    // 4x^2 (-2x + 3lam + 2a + 13)
    const LaurentX t1 = cplx{-8.0} * shift_power(d2, 3) +
                        (4.0 * (3.0 * lam + 2.0 * a + 13.0)) * shift_power(d2, 2);
    // 2x [-2(lam+12)x + 3lam^2 + 2a lam + 20lam + 14a + 32]
    const cplx c1 = 3.0 * lam * lam + 2.0 * a * lam + 20.0 * lam + 14.0 * a + 32.0;
    const LaurentX t2 =
        (-4.0 * (lam + 12.0)) * shift_power(d1, 2) + (2.0 * c1) * shift_power(d1, 1);
    // -8(lam+6)x + lam^3 + 7lam^2 + 8a lam + 14lam + 8a + 8
    const cplx c0 =
        lam * lam * lam + 7.0 * lam * lam + 8.0 * a * lam + 14.0 * lam + 8.0 * a + 8.0;
    const LaurentX t3 = (-8.0 * (lam + 6.0)) * shift_power(Ehat, 1) + c0 * Ehat;
    const LaurentX r = t0 + t1 + t2 + t3;

    const double scale = max_abs_coeff(Ehat);
    return scale > 0.0 ? max_abs_coeff(r) / scale : max_abs_coeff(r);
}

std::vector<cplx> pairing_matrix(const ModelParams& params, int k_max, Exec exec) {
    if (k_max < 0) throw std::invalid_argument("pairing_matrix: k_max must be >= 0");
    constexpr Branch branches[3] = {Branch::zero, Branch::plus, Branch::minus};
    const int n = 3 * (k_max + 1);

    std::vector<ModeTriple> modes(n);
    std::vector<AdjointTriple> adjoints(n);
    for (int k = 0; k <= k_max; ++k) {
        for (int s = 0; s < 3; ++s) {
            modes[3 * k + s] = build_mode(params, {branches[s], k});
            adjoints[3 * k + s] = build_adjoint(params, {branches[s], k}, k_max - k + 2);
        }
    }

    std::vector<cplx> mat(static_cast<std::size_t>(n) * n);
    const auto fill_entry = [&](int row, int col) {
        mat[static_cast<std::size_t>(row) * n + col] =
            pair_mode(adjoints[row], modes[col], params);
    };
    if (exec == Exec::parallel) {
        std::exception_ptr err;
#pragma omp parallel for collapse(2) schedule(dynamic)
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) {
                try {
                    fill_entry(row, col);
                } catch (...) {
#pragma omp critical
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (int row = 0; row < n; ++row) {
            for (int col = 0; col < n; ++col) fill_entry(row, col);
        }
    }
    return mat;
}

double orthonormality_deviation(const ModelParams& params, int k_max, Exec exec) {
    const std::vector<cplx> mat = pairing_matrix(params, k_max, exec);
    const int n = 3 * (k_max + 1);
    double dev = 0.0;
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const cplx expect = (row == col) ? cplx{1.0} : cplx{0.0};
            dev = std::max(dev, std::abs(mat[static_cast<std::size_t>(row) * n + col] - expect));
        }
    }
    return dev;
}

}  // namespace jcd
