#include "jcd/projection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jcd/errors.hpp"
#include "jcd/hyper.hpp"

namespace jcd {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kExcludedCoeffTol = 1e-12;

void guard_exceptional_points(const ModelParams& params, int k_hi, const char* where) {
    for (int k = 0; k <= k_hi; ++k) {
        if (std::abs(1.0 - 4.0 * params.a * (k + 1)) <= params.eps_degenerate) {
            std::ostringstream os;
            os << where << ": exceptional point at a=" << params.a << ", k=" << k
               << " within the required index range 0.." << k_hi;
            throw ExceptionalPoint(os.str());
        }
    }
}

}  // namespace

InitialState ingest(std::vector<double> g, std::vector<double> e, std::vector<cplx> coh) {
    if (g.size() != e.size() || g.size() != coh.size()) {
        throw std::invalid_argument("ingest: g, e, coh must have equal lengths");
    }
    if (g.empty()) throw std::invalid_argument("ingest: empty state");
    for (std::size_t n = 0; n < g.size(); ++n) {
        if (g[n] < 0.0 || e[n] < 0.0) {
            std::ostringstream os;
            os << "ingest: negative population at n=" << n << " (g=" << g[n] << ", e=" << e[n]
               << ")";
            throw NegativePopulation(os.str());
        }
    }
    double trace = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) trace += g[n] + e[n];
    if (std::abs(trace - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "ingest: trace " << trace << " deviates from 1 by more than " << kTraceTol;
        throw TraceNotNormalized(os.str());
    }

    InitialState st;
    st.g = std::move(g);
    st.e = std::move(e);
    st.coh = std::move(coh);
    const std::size_t len = st.g.size();
    st.d.assign(len + 1, 0.0);
    st.d[0] = st.g[0];
    for (std::size_t n = 1; n <= len; ++n) {
        st.d[n] = (n < len ? st.g[n] : 0.0) + st.e[n - 1];
    }
    st.f.resize(len);
    st.h.resize(len);
    for (std::size_t n = 0; n < len; ++n) {
        const double fac = 2.0 * std::sqrt(static_cast<double>(n + 1));
        st.f[n] = fac * st.coh[n].real();
        st.h[n] = fac * st.coh[n].imag();
    }
    st.n_support = 0;
    for (std::size_t n = 0; n < len; ++n) {
        if (st.g[n] != 0.0 || st.e[n] != 0.0 || st.coh[n] != cplx{0.0}) {
            st.n_support = static_cast<int>(n);
        }
    }
    return st;
}

InitialState fock_ground(int n0) {
    if (n0 < 0) throw std::invalid_argument("fock_ground: n0 must be >= 0");
    std::vector<double> g(n0 + 1, 0.0), e(n0 + 1, 0.0);
    g[n0] = 1.0;
    return ingest(std::move(g), std::move(e), std::vector<cplx>(n0 + 1, cplx{0.0}));
}

InitialGenerating initial_generating(const InitialState& state, const ModelParams& params) {
    InitialGenerating gen;
    gen.Dp = u_poly_from_sequence(std::span<const double>(state.d));
    gen.Ep = u_poly_from_sequence(std::span<const double>(state.e));
    gen.Hp = u_poly_from_sequence(std::span<const double>(state.h));
    gen.Fp = u_poly_from_sequence(std::span<const double>(state.f));
    gen.D0 = u_poly_to_laurent_x(gen.Dp, params.a);
    gen.E0 = u_poly_to_laurent_x(gen.Ep, params.a);
    gen.H0 = u_poly_to_laurent_x(gen.Hp, params.a);
    gen.F0 = u_poly_to_laurent_x(gen.Fp, params.a);
    return gen;
}

namespace {

cplx project_one(const AdjointTriple& adj, const InitialGenerating& gen) {
    return residue(adj.Ehat * gen.E0) + residue(adj.Dhat * gen.D0) +
           residue(adj.Hhat * gen.H0);
}

}  // namespace

SpectralDecomposition project(const ModelParams& params, const InitialState& state) {
    const int ns = state.n_support;
    guard_exceptional_points(params, ns, "project");
    const InitialGenerating gen = initial_generating(state, params);

    constexpr Branch branches[3] = {Branch::zero, Branch::plus, Branch::minus};
    SpectralDecomposition dec;
    dec.a = params.a;
    dec.n_support = ns;
    dec.entries.resize(ns + 1);
    for (int k = 0; k <= ns; ++k) {
        const int order = ns - k + 2;
        for (int s = 0; s < 3; ++s) {
            const ModeLabel label{branches[s], k};
            SpectralEntry& ent = dec.entries[k][s];
            ent.A = project_one(build_adjoint(params, label, order), gen);
            ent.mode = build_mode(params, label);
        }
    }
    dec.f_coeffs.resize(ns + 1);
    for (int k = 0; k <= ns; ++k) {
        dec.f_coeffs[k] = residue(build_f_adjoint(params, k) * gen.F0);
    }
    dec.d_constant = 1.0;

    // The first excluded coefficient must vanish: the adjoint's lowest power
    // already clears x^{-1} against data of this support.
    try {
        for (int s = 0; s < 3; ++s) {
            const cplx ax = project_one(build_adjoint(params, {branches[s], ns + 1}, 1), gen);
            if (std::abs(ax) > kExcludedCoeffTol) {
                std::ostringstream os;
                os << "project: coefficient beyond the support cutoff is nonzero ("
                   << std::abs(ax) << " at k=" << ns + 1 << ")";
                throw Error(os.str());
            }
        }
    } catch (const ExceptionalPoint&) {
        // The excluded index may sit on an exceptional point; the structural
        // zero still holds, there is just nothing to evaluate there.
    }
    const cplx fx = residue(build_f_adjoint(params, ns + 1) * gen.F0);
    if (std::abs(fx) > kExcludedCoeffTol) {
        throw Error("project: decoupled-sector coefficient beyond the support cutoff is nonzero");
    }
    return dec;
}

FockCoefficients fock_ground_coefficients(const ModelParams& params, int n0) {
    if (n0 < 0) throw std::invalid_argument("fock_ground_coefficients: n0 must be >= 0");
    if (n0 == 0) return {};  // the vacuum excites no mode
    guard_exceptional_points(params, n0 - 1, "fock_ground_coefficients");
    const double a = params.a;
    FockCoefficients fc;
    fc.A.resize(n0);
    for (int k = 0; k + 1 <= n0; ++k) {
        const double denom = 1.0 - 4.0 * a * (k + 1);
        const cplx up1{static_cast<double>(-n0 + k + 1)};
        // (-a)^{k+1} n0! / [(k+1)! (n0-k-1)!]
        double front = binomial(n0, k + 1);
        for (int i = 0; i <= k; ++i) front *= -a;

        const cplx w = std::sqrt(cplx(a * a - 4.0 * a * (k + 1) + 1.0, 0.0));
        const double cp0 = 2.0 * (k + 1) / denom;
        fc.A[k][0] = cp0 * front *
                     eval_terminating({{up1, 0.5},
                                       {0.5 * a + 1.0 + 0.5 * w, 0.5 * a + 1.0 - 0.5 * w},
                                       0},
                                      a, params.eps_param);

        const cplx wbar = std::sqrt(cplx(denom, 0.0));
        const double cpm = -(k + 1.0) / denom;
        for (int s = 0; s < 2; ++s) {
            const double sg = (s == 0) ? 1.0 : -1.0;
            fc.A[k][s + 1] =
                cpm * front *
                eval_terminating({{up1, 0.5 + sg * 0.5 * wbar},
                                  {1.0 + sg * 0.5 * wbar, 1.0 + a + sg * wbar},
                                  0},
                                 a, params.eps_param);
        }
    }
    return fc;
}

}  // namespace jcd
