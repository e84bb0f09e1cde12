// projection.hpp — initial-state ingestion and spectral coefficient extraction
#pragma once

#include <array>
#include <vector>

#include "jcd/adjoint.hpp"
#include "jcd/modes.hpp"
#include "jcd/params.hpp"
#include "jcd/poly.hpp"

namespace jcd {

// Diagonal-sector initial data. g_n and e_n are ground/excited populations
// with n photons, coh_n the coherence between the excited state with n
// photons and the ground state with n+1. The derived sequences are the ones
// the evolution equations actually couple:
//   d_n = g_n + e_{n-1} (d_0 = g_0),
//   f_n = 2 sqrt(n+1) Re coh_n,  h_n = 2 sqrt(n+1) Im coh_n.
struct InitialState {
    std::vector<double> g, e;
    std::vector<cplx> coh;
    std::vector<double> d, f, h;
    int n_support = 0;  // largest occupied photon index
};

// Validates trace normalization (1e-12) and nonnegative populations, then
// fills the derived sequences.
InitialState ingest(std::vector<double> g, std::vector<double> e, std::vector<cplx> coh);

// Atom in the ground state with n0 photons.
InitialState fock_ground(int n0);

// Generating functions of the initial data, as polynomials in u and as exact
// Laurent polynomials in x.
struct InitialGenerating {
    PolyU Dp, Ep, Hp, Fp;
    LaurentX D0, E0, H0, F0;
};

InitialGenerating initial_generating(const InitialState& state, const ModelParams& params);

struct SpectralEntry {
    cplx A{0.0};
    ModeTriple mode;
};

// The fitted expansion: per index k one entry per branch (zero/plus/minus),
// the decoupled-sector coefficients, and the constant term of D fixed by
// trace normalization.
struct SpectralDecomposition {
    double a = 0.0;
    int n_support = 0;
    std::vector<std::array<SpectralEntry, 3>> entries;  // [k][branch]
    std::vector<cplx> f_coeffs;                         // A_k, k <= n_support
    double d_constant = 1.0;
};

// Extracts every coefficient via the orthogonality residues. Coefficients
// with k > n_support vanish structurally and are not stored; the first
// excluded one is recomputed and asserted to be zero as a sanity check.
SpectralDecomposition project(const ModelParams& params, const InitialState& state);

// Closed-form coefficients for the ground-state Fock example; an independent
// path cross-checking project().
struct FockCoefficients {
    std::vector<std::array<cplx, 3>> A;  // [k][branch], k <= n0-1
};

FockCoefficients fock_ground_coefficients(const ModelParams& params, int n0);

}  // namespace jcd
