#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jcd/adjoint.hpp"
#include "jcd/errors.hpp"
#include "jcd/modes.hpp"
#include "jcd/poly.hpp"

using jcd::AdjointTriple;
using jcd::Branch;
using jcd::cplx;
using jcd::LaurentX;
using jcd::ModelParams;
using jcd::ModeTriple;

TEST_CASE("normalization constants at a=5") {
    const ModelParams p(5.0);
    const AdjointTriple z0 = jcd::build_adjoint(p, {Branch::zero, 0}, 4);
    // c'_{0,0} = 2/(1-4a) = -2/19 is the constant term of Dhat
    CHECK(std::abs(z0.Dhat.coeff(0) - cplx{-2.0 / 19.0}) <= 1e-15);
    CHECK(std::abs(z0.c_prime - cplx{-2.0 / 19.0}) <= 1e-15);
    // Hhat leads at x^-1 with c'' = (sqrt a / 2) c'
    CHECK(z0.Hhat.lo == -1);
    CHECK(std::abs(z0.Hhat.coeff(-1) - cplx{std::sqrt(5.0) / 2.0 * (-2.0 / 19.0)}) <= 1e-15);

    const AdjointTriple pl0 = jcd::build_adjoint(p, {Branch::plus, 0}, 4);
    CHECK(std::abs(pl0.c_prime - cplx{1.0 / 19.0}) <= 1e-15);
}

TEST_CASE("constant chaining per branch") {
    for (double a : {0.05, 5.0}) {
        const ModelParams p(a);
        for (int m = 0; m <= 6; ++m) {
            if (std::abs(1.0 - 4.0 * a * (m + 1)) <= p.eps_degenerate) continue;
            const double denom = 1.0 - 4.0 * a * (m + 1);
            const AdjointTriple z = jcd::build_adjoint(p, {Branch::zero, m}, 3);
            CHECK(std::abs(z.c_prime - cplx{2.0 * (m + 1) / denom}) <= 1e-13 * std::abs(z.c_prime));
            CHECK(std::abs(z.c_prime - (-(4.0 * a * m + 8.0 * a + 3.0) / 6.0) * z.c) <=
                  1e-13 * std::abs(z.c_prime));
            CHECK(std::abs(z.c_dprime - 0.5 * std::sqrt(a) / (m + 1) * z.c_prime) <=
                  1e-13 * std::abs(z.c_dprime));

            const cplx wbar = jcd::branch_roots(p, m).wbar;
            for (Branch b : {Branch::plus, Branch::minus}) {
                const double s = b == Branch::plus ? 1.0 : -1.0;
                const AdjointTriple t = jcd::build_adjoint(p, {b, m}, 3);
                CHECK(std::abs(t.c_prime - cplx{-(m + 1.0) / denom}) <=
                      1e-13 * std::abs(t.c_prime));
                CHECK(std::abs(t.c_prime - (-s) * (1.0 - s * wbar) / (2.0 * a * wbar) * t.c) <=
                      1e-13 * std::abs(t.c_prime));
                CHECK(std::abs(t.c_dprime - 2.0 * std::pow(a, 1.5) / (1.0 - s * wbar) *
                                                t.c_prime) <= 1e-13 * std::abs(t.c_dprime));
            }
        }
    }
}

TEST_CASE("lowest powers of the adjoint components") {
    const ModelParams p(5.0);
    for (int m = 0; m <= 4; ++m) {
        const AdjointTriple z = jcd::build_adjoint(p, {Branch::zero, m}, 3);
        CHECK(z.Ehat.lo == m);
        CHECK(z.Dhat.lo == m);
        CHECK(z.Hhat.lo == m - 1);
        const AdjointTriple t = jcd::build_adjoint(p, {Branch::minus, m}, 3);
        CHECK(t.Ehat.lo == m - 1);
        CHECK(t.Dhat.lo == m);
        CHECK(t.Hhat.lo == m - 1);
        CHECK(t.Ehat.truncated);
    }
}

// Hand residue computation: the x-image of D_{0,0} = -2u is -2a x^{-1}, so
// the product with Dhat_{0,0} = c'(1 + ...) picks up residue c' * (-2a)
// = 20/19 at a = 5 through the constant term alone. Ehat E has no x^-1
// term, and Hhat H contributes c'/2 = -1/19, so the pairing totals 1.
TEST_CASE("hand-computed residues for the m=k=0 pairing at a=5") {
    const ModelParams p(5.0);
    const AdjointTriple adj = jcd::build_adjoint(p, {Branch::zero, 0}, 4);
    const ModeTriple mode = jcd::build_mode(p, {Branch::zero, 0});

    const double cp = 2.0 / (1.0 - 20.0);
    const LaurentX dprod = adj.Dhat * jcd::u_poly_to_laurent_x(mode.D, 5.0);
    CHECK(std::abs(jcd::residue(dprod) - cplx{-10.0 * cp}) <= 1e-13);

    const LaurentX eprod = adj.Ehat * jcd::u_poly_to_laurent_x(mode.E, 5.0);
    CHECK(jcd::residue(eprod) == cplx{0.0});

    const LaurentX hprod = adj.Hhat * jcd::u_poly_to_laurent_x(mode.H, 5.0);
    CHECK(std::abs(jcd::residue(hprod) - cplx{0.5 * cp}) <= 1e-13);

    CHECK(std::abs(jcd::pair_mode(adj, mode, p) - cplx{1.0}) <= 1e-13);
}

TEST_CASE("orthogonality against mismatched labels") {
    const ModelParams p(5.0);
    const AdjointTriple z1 = jcd::build_adjoint(p, {Branch::zero, 1}, 4);
    CHECK(std::abs(jcd::pair_mode(z1, jcd::build_mode(p, {Branch::zero, 0}), p)) <= 1e-13);
    const AdjointTriple pl = jcd::build_adjoint(p, {Branch::plus, 0}, 4);
    CHECK(std::abs(jcd::pair_mode(pl, jcd::build_mode(p, {Branch::minus, 0}), p)) <= 1e-13);
}

TEST_CASE("pairing matrix is the identity") {
    for (double a : {0.05, 5.0}) {
        const int k_max = a == 0.05 ? 3 : 6;  // stay below the a=0.05 coalescence at k=4
        CHECK(jcd::orthonormality_deviation(ModelParams(a), k_max, jcd::Exec::serial) <= 1e-9);
    }
}

TEST_CASE("parallel pairing matrix is bit-identical to the serial reference") {
    const ModelParams p(5.0);
    const auto serial = jcd::pairing_matrix(p, 5, jcd::Exec::serial);
    const auto parallel = jcd::pairing_matrix(p, 5, jcd::Exec::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("structural zero for m > k+1 without numerics") {
    const ModelParams p(5.0);
    // order 1 stores a single coefficient; the residue must still be an
    // exact zero because every product power clears x^-1.
    const AdjointTriple far = jcd::build_adjoint(p, {Branch::plus, 4}, 1);
    const ModeTriple mode = jcd::build_mode(p, {Branch::plus, 2});
    CHECK(jcd::pair_mode(far, mode, p) == cplx{0.0});
}

TEST_CASE("insufficient truncation is reported") {
    const ModelParams p(5.0);
    const AdjointTriple adj = jcd::build_adjoint(p, {Branch::zero, 0}, 2);
    const ModeTriple mode = jcd::build_mode(p, {Branch::zero, 4});  // needs order >= 5
    CHECK_THROWS_AS((void)jcd::pair_mode(adj, mode, p), jcd::InsufficientTruncation);
}

TEST_CASE("adjoint series satisfy the adjoint system") {
    const ModelParams p(5.0);
    CHECK(jcd::verify_adjoint_system(jcd::build_adjoint(p, {Branch::zero, 0}, 8), p) <= 1e-10);
    CHECK(jcd::verify_adjoint_system(jcd::build_adjoint(p, {Branch::plus, 1}, 8), p) <= 1e-10);
    CHECK(jcd::verify_adjoint_system(jcd::build_adjoint(p, {Branch::minus, 3}, 8), p) <= 1e-10);

    AdjointTriple bad = jcd::build_adjoint(p, {Branch::zero, 0}, 8);
    bad.c_dprime *= 1.01;
    bad.Hhat = cplx{1.01} * bad.Hhat;
    CHECK(jcd::verify_adjoint_system(bad, p) > 1e-4);
}

TEST_CASE("zero-branch Ehat satisfies the third-order adjoint equation") {
    const ModelParams p(5.0);
    for (int m = 0; m <= 6; ++m) {
        const AdjointTriple adj = jcd::build_adjoint(p, {Branch::zero, m}, 10);
        const cplx lam{-2.0 * m - 1.0};
        CHECK(jcd::adjoint_third_order_residual(adj.Ehat, lam, p) <= 1e-10);
    }
}

TEST_CASE("decoupled-sector adjoints and pairing") {
    const ModelParams p5(5.0);
    const LaurentX f0 = jcd::build_f_adjoint(p5, 0);
    CHECK(f0.lo == -1);
    CHECK(f0.coeff(-1) == cplx{1.0});
    const LaurentX f2 = jcd::build_f_adjoint(p5, 2);
    CHECK(f2.lo == 1);
    CHECK(std::abs(f2.coeff(1) - cplx{1.0 / 25.0}) <= 1e-17);
    const LaurentX f1 = jcd::build_f_adjoint(ModelParams(2.0), 1);
    CHECK(f1.coeff(0) == cplx{0.5});

    for (int m = 0; m <= 20; ++m) {
        const LaurentX fhat = jcd::build_f_adjoint(p5, m);
        for (int k = 0; k <= 20; ++k) {
            const cplx v = jcd::pair_f(fhat, jcd::build_f_mode(k), p5);
            if (m == k) {
                CHECK(std::abs(v - cplx{1.0}) <= 1e-13);
            } else {
                CHECK(v == cplx{0.0});  // distinct monomial powers: no arithmetic at all
            }
        }
    }
}

TEST_CASE("exceptional point refuses every adjoint branch") {
    const ModelParams p(0.05);
    for (Branch b : {Branch::zero, Branch::plus, Branch::minus}) {
        CHECK_THROWS_AS((void)jcd::build_adjoint(p, {b, 4}, 3), jcd::ExceptionalPoint);
    }
}

TEST_CASE("conjugate adjoint branches for oscillatory parameters") {
    const ModelParams p(5.0);
    for (int m = 0; m <= 3; ++m) {
        const AdjointTriple tp = jcd::build_adjoint(p, {Branch::plus, m}, 6);
        const AdjointTriple tm = jcd::build_adjoint(p, {Branch::minus, m}, 6);
        REQUIRE(tp.Ehat.c.size() == tm.Ehat.c.size());
        for (std::size_t i = 0; i < tp.Ehat.c.size(); ++i) {
            CHECK(std::abs(tp.Ehat.c[i] - std::conj(tm.Ehat.c[i])) <=
                  1e-13 * std::max(1.0, std::abs(tp.Ehat.c[i])));
        }
    }
}
