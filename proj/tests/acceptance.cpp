// acceptance.cpp — end-to-end acceptance suite. One line per criterion;
// exits nonzero if any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "jcd/adjoint.hpp"
#include "jcd/errors.hpp"
#include "jcd/evolve.hpp"
#include "jcd/modes.hpp"
#include "jcd/oracle.hpp"
#include "jcd/projection.hpp"

using jcd::Branch;
using jcd::cplx;
using jcd::ModelParams;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

bool guarded(const ModelParams& p, int k) {
    return std::abs(1.0 - 4.0 * p.a * (k + 1)) <= p.eps_degenerate;
}

constexpr Branch kBranches[3] = {Branch::zero, Branch::plus, Branch::minus};

jcd::InitialState random_state(std::mt19937& rng, int n_support) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> g(n_support + 1), e(n_support + 1);
    double trace = 0.0;
    for (int n = 0; n <= n_support; ++n) {
        g[n] = dist(rng);
        e[n] = dist(rng);
        trace += g[n] + e[n];
    }
    for (int n = 0; n <= n_support; ++n) {
        g[n] /= trace;
        e[n] /= trace;
    }
    std::vector<cplx> coh(n_support + 1, cplx{0.0});
    for (int n = 0; n < n_support; ++n) {
        const double phase = 6.283185307179586 * dist(rng);
        coh[n] = 0.9 * std::sqrt(e[n] * g[n + 1]) * dist(rng) *
                 cplx(std::cos(phase), std::sin(phase));
    }
    return jcd::ingest(g, e, coh);
}

// --- 1. orthonormality -------------------------------------------------------

void criterion_1() {
    double dev = 0.0;
    int skipped = 0;
    bool refusal_ok = true;
    for (double a : {0.05, 5.0}) {
        const ModelParams p(a);
        const int k_max = 10;
        // valid labels: every (branch,k) except the split branches and all
        // adjoints at a guarded index (their normalization diverges there)
        struct Row {
            jcd::AdjointTriple adj;
            int key;
        };
        struct Col {
            jcd::ModeTriple mode;
            int key;
        };
        std::vector<Row> rows;
        std::vector<Col> cols;
        for (int k = 0; k <= k_max; ++k) {
            for (int s = 0; s < 3; ++s) {
                const jcd::ModeLabel label{kBranches[s], k};
                const int key = 3 * k + s;
                if (guarded(p, k)) {
                    ++skipped;
                    try {
                        (void)jcd::build_adjoint(p, label, 2);
                        refusal_ok = false;  // must have refused
                    } catch (const jcd::ExceptionalPoint&) {
                    }
                    if (kBranches[s] != Branch::zero) {
                        try {
                            (void)jcd::build_mode(p, label);
                            refusal_ok = false;
                        } catch (const jcd::ExceptionalPoint&) {
                        }
                    } else {
                        cols.push_back({jcd::build_mode(p, label), key});
                    }
                    continue;
                }
                rows.push_back({jcd::build_adjoint(p, label, k_max - k + 2), key});
                cols.push_back({jcd::build_mode(p, label), key});
            }
        }
        for (const auto& row : rows) {
            for (const auto& col : cols) {
                const cplx expect = row.key == col.key ? cplx{1.0} : cplx{0.0};
                dev = std::max(dev,
                               std::abs(jcd::pair_mode(row.adj, col.mode, p) - expect));
            }
        }
    }

    double fdev = 0.0;
    bool f_offdiag_exact = true;
    for (double a : {0.05, 5.0}) {
        const ModelParams p(a);
        for (int m = 0; m <= 20; ++m) {
            const jcd::LaurentX fhat = jcd::build_f_adjoint(p, m);
            for (int k = 0; k <= 20; ++k) {
                const cplx v = jcd::pair_f(fhat, jcd::build_f_mode(k), p);
                if (m == k) {
                    fdev = std::max(fdev, std::abs(v - cplx{1.0}));
                } else if (v != cplx{0.0}) {
                    f_offdiag_exact = false;
                }
            }
        }
    }

    const bool pass = dev <= 1e-9 && fdev <= 1e-13 && f_offdiag_exact && refusal_ok;
    report(1, pass,
           "orthonormality: pairing matrix dev " + fmt(dev) +
               " (tol 1e-09); decoupled sector diag dev " + fmt(fdev) +
               ", off-diagonal exact; " + std::to_string(skipped) +
               " coalescent labels at a=0.05 verified as refusals");
}

// --- 2. mode correctness -----------------------------------------------------

void criterion_2() {
    double sys_res = 0.0, ode_res = 0.0, rep_dev = 0.0;
    std::mt19937 rng(314159u);
    std::uniform_real_distribution<double> dist(1e-3, 1.0);
    std::vector<double> us(20);
    for (double a : {0.05, 5.0, 30.0}) {
        const ModelParams p(a);
        for (int k = 0; k <= 10; ++k) {
            for (int s = 0; s < 3; ++s) {
                if (guarded(p, k) && kBranches[s] != Branch::zero) continue;
                const jcd::ModeTriple m = jcd::build_mode(p, {kBranches[s], k});
                sys_res = std::max(sys_res, jcd::verify_mode_system(m, p));
                ode_res = std::max(ode_res, jcd::third_order_residual(m.E, m.lambda, p));
                for (auto& u : us) u = dist(rng);
                rep_dev = std::max(
                    rep_dev, jcd::representation_identity_deviation(p, {kBranches[s], k}, us));
            }
        }
    }
    const bool pass = sys_res <= 1e-10 && ode_res <= 1e-10 && rep_dev <= 1e-9;
    report(2, pass,
           "mode correctness: system residual " + fmt(sys_res) +
               ", third-order residual " + fmt(ode_res) +
               " (tol 1e-10); representation identity " + fmt(rep_dev) + " (tol 1e-09)");
}

// --- 3. adjoint correctness --------------------------------------------------

void criterion_3() {
    const ModelParams p(5.0);
    double res = 0.0, ode = 0.0;
    for (int m = 0; m <= 8; ++m) {
        for (int s = 0; s < 3; ++s) {
            const jcd::AdjointTriple adj = jcd::build_adjoint(p, {kBranches[s], m}, 10);
            res = std::max(res, jcd::verify_adjoint_system(adj, p));
            if (kBranches[s] == Branch::zero) {
                ode = std::max(ode, jcd::adjoint_third_order_residual(
                                        adj.Ehat, cplx{-2.0 * m - 1.0}, p));
            }
        }
    }
    const bool pass = res <= 1e-10 && ode <= 1e-10;
    report(3, pass,
           "adjoint correctness: system residual " + fmt(res) + ", third-order residual " +
               fmt(ode) + " (tol 1e-10, m<=8, order 10, a=5)");
}

// --- 4. exact initial fitting ------------------------------------------------

void criterion_4() {
    const ModelParams p(5.0);
    double err = 0.0;
    std::mt19937 rng(20260810u);
    std::vector<jcd::InitialState> states{jcd::fock_ground(6)};
    for (int t = 0; t < 5; ++t) {
        states.push_back(random_state(rng, 1 + static_cast<int>(rng() % 10)));
    }
    for (const auto& st : states) {
        const auto dec = jcd::project(p, st);
        const int n_max = st.n_support + 1;
        const auto sl = jcd::state_at(dec, 0.0, n_max);
        for (int n = 0; n <= n_max; ++n) {
            err = std::max(err, std::abs(sl.d[n] - (n < static_cast<int>(st.d.size())
                                                        ? st.d[n]
                                                        : 0.0)));
            const double e0 = n < static_cast<int>(st.e.size()) ? st.e[n] : 0.0;
            const double h0 = n < static_cast<int>(st.h.size()) ? st.h[n] : 0.0;
            const double f0 = n < static_cast<int>(st.f.size()) ? st.f[n] : 0.0;
            err = std::max({err, std::abs(sl.e[n] - e0), std::abs(sl.h[n] - h0),
                            std::abs(sl.f[n] - f0)});
        }
    }
    report(4, err <= 1e-8,
           "exact initial fitting: max tau=0 reconstruction error " + fmt(err) +
               " over d,e,h,f (tol 1e-08; n0=6 state and 5 random states)");
}

// --- 5. oracle equivalence ---------------------------------------------------

void criterion_5() {
    const ModelParams p(5.0);
    const jcd::InitialState st = jcd::fock_ground(6);
    const std::vector<double> grid{0.25, 0.5, 1.0, 2.0, 3.0};
    const auto dec = jcd::project(p, st);
    const auto spectral = jcd::state_series(dec, grid, 60);
    const auto reference = jcd::integrate(st, p, grid, 60, 1e-4);
    const double dev = jcd::max_deviation(spectral, reference);
    report(5, dev <= 1e-6,
           "oracle equivalence: spectral vs RK4 max deviation " + fmt(dev) +
               " (tol 1e-06; n0=6, a=5, N=60, step 1e-4)");
}

// --- 6. closed-form coefficients ---------------------------------------------

void criterion_6() {
    double rel = 0.0;
    bool refusal_ok = true;
    for (double a : {0.05, 5.0}) {
        const ModelParams p(a);
        // the support guard caps a=0.05 at n0=3 (k=4 coalesces); larger n0
        // must be refused, which is part of the contract
        const int n0_cap = a == 0.05 ? 3 : 10;
        for (int n0 = 1; n0 <= n0_cap; ++n0) {
            const auto closed = jcd::fock_ground_coefficients(p, n0);
            const auto dec = jcd::project(p, jcd::fock_ground(n0));
            for (int k = 0; k < n0; ++k) {
                for (int s = 0; s < 3; ++s) {
                    const cplx want = dec.entries[k][s].A;
                    const double scale =
                        std::max({std::abs(want), std::abs(closed.A[k][s]), 1e-12});
                    rel = std::max(rel, std::abs(closed.A[k][s] - want) / scale);
                }
            }
        }
        if (a == 0.05) {
            try {
                (void)jcd::project(p, jcd::fock_ground(5));
                refusal_ok = false;
            } catch (const jcd::ExceptionalPoint&) {
            }
        }
    }
    report(6, rel <= 1e-10 && refusal_ok,
           "closed-form coefficients vs residue projection: max relative deviation " +
               fmt(rel) + " (tol 1e-10; a=0.05 capped at n0=3 by the coalescence guard)");
}

// --- 7. physical invariants ---------------------------------------------------

void criterion_7() {
    const ModelParams p(5.0);
    const auto dec = jcd::project(p, jcd::fock_ground(6));
    double sum_dev = 0.0, trace_dev = 0.0, imag_rel = 0.0;
    bool dominance = true;
    for (int i = 0; i <= 40; ++i) {
        const double tau = 3.0 * i / 40.0;
        const auto fm = jcd::moments_at(dec, tau, 1);
        sum_dev = std::max(sum_dev, std::abs(fm.e_bar[0] + fm.g_bar[0] - 1.0));
        const auto sl = jcd::state_at(dec, tau, 12);
        dominance = dominance && sl.e[0] <= fm.e_bar[0] + 1e-12;
        double trace = 0.0;
        for (int n = 0; n <= 12; ++n) trace += sl.g[n] + sl.e[n];
        trace_dev = std::max(trace_dev, std::abs(trace - 1.0));
        const auto gs = jcd::generating_at(dec, tau);
        double im = 0.0, re = 0.0;
        for (const jcd::PolyU* poly : {&gs.D, &gs.E, &gs.H, &gs.F, &gs.G}) {
            for (const auto& v : poly->c) {
                im = std::max(im, std::abs(v.imag()));
                re = std::max(re, std::abs(v.real()));
            }
        }
        imag_rel = std::max(imag_rel, re > 0.0 ? im / re : im);
    }
    const bool pass =
        sum_dev <= 1e-9 && dominance && imag_rel <= 1e-10 && trace_dev <= 1e-8;
    report(7, pass,
           "physical invariants: |e_bar0+g_bar0-1| " + fmt(sum_dev) +
               " (tol 1e-09); e_0<=e_bar0 " + (dominance ? "holds" : "VIOLATED") +
               "; imag residue " + fmt(imag_rel) + " (tol 1e-10); trace dev " +
               fmt(trace_dev) + " (tol 1e-08)");
}

// --- 8. figure-shape regression ------------------------------------------------

void criterion_8() {
    const ModelParams p(5.0);
    const auto dec = jcd::project(p, jcd::fock_ground(6));
    std::vector<double> ebar0(41), g0(41);
    for (int i = 0; i <= 40; ++i) {
        const double tau = 3.0 * i / 40.0;
        ebar0[i] = jcd::moments_at(dec, tau, 0).e_bar[0];
        g0[i] = jcd::state_at(dec, tau, 8).g[0];
    }
    const auto it = std::max_element(ebar0.begin(), ebar0.end());
    const int arg = static_cast<int>(it - ebar0.begin());
    const bool interior_max = arg > 0 && arg < 40 && *it > ebar0.front() && *it > ebar0.back();
    const bool pass = std::abs(ebar0[0]) <= 1e-10 && ebar0[40] <= 0.05 &&
                      std::abs(g0[0]) <= 1e-10 && g0[40] >= 0.95 && interior_max;
    report(8, pass,
           "figure shapes: e_bar0(0)=" + fmt(ebar0[0]) + ", e_bar0(3)=" + fmt(ebar0[40]) +
               " (<=0.05), g_0(0)=" + fmt(g0[0]) + ", g_0(3)=" + fmt(g0[40]) +
               " (>=0.95), interior max at tau=" + fmt(3.0 * arg / 40.0));
}

// --- 9. oracle self-checks ------------------------------------------------------

void criterion_9() {
    const ModelParams p(5.0);
    const jcd::InitialState st = jcd::fock_ground(6);
    const std::vector<double> grid{0.25, 0.5, 1.0, 2.0, 3.0};

    const auto base = jcd::integrate(st, p, grid, 60, 1e-4);
    double trace_dev = 0.0;
    for (const auto& sl : base) {
        double trace = 0.0;
        for (double v : sl.d) trace += v;
        trace_dev = std::max(trace_dev, std::abs(trace - 1.0));
    }

    const auto halved = jcd::integrate(st, p, grid, 60, 5e-5);
    const double halving = jcd::max_deviation(base, halved);

    const auto lo = jcd::integrate(st, p, grid, 26, 1e-4);
    auto hi = jcd::integrate(st, p, grid, 46, 1e-4);
    for (auto& sl : hi) {
        sl.e.resize(27);
        sl.g.resize(27);
        sl.h.resize(27);
        sl.f.resize(27);
        sl.d.resize(27);
    }
    const double insensitivity = jcd::max_deviation(lo, hi);

    const bool pass = trace_dev <= 1e-12 && halving <= 1e-10 && insensitivity <= 1e-10;
    report(9, pass,
           "oracle self-checks: trace dev " + fmt(trace_dev) +
               " (tol 1e-12); step-halving change " + fmt(halving) +
               " (tol 1e-10); truncation insensitivity " + fmt(insensitivity) +
               " (tol 1e-10)");
}

}  // namespace

int main() {
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
        return 2;
    }
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
