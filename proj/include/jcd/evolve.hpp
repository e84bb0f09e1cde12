// evolve.hpp — time-dependent generating functions, matrix elements, moments
#pragma once

#include <span>
#include <vector>

#include "jcd/params.hpp"
#include "jcd/poly.hpp"
#include "jcd/projection.hpp"

namespace jcd {

// Generating functions at one time; coefficients are complex only through
// numerical residue, G = D - (1-u) E by construction.
struct GeneratingSet {
    double tau = 0.0;
    PolyU D, E, H, F, G;
};

struct StateSlice {
    double tau = 0.0;
    std::vector<double> e, g, h, f, d;  // index n = 0..n_max
};

struct FactorialMoments {
    double tau = 0.0;
    std::vector<double> e_bar, g_bar;  // index m = 0..m_max
};

GeneratingSet generating_at(const SpectralDecomposition& dec, double tau);

// Matrix elements from the z-expansion of the generating set; imaginary
// parts are checked (RealityViolation above 1e-6) and then dropped.
StateSlice state_at(const SpectralDecomposition& dec, double tau, int n_max);

// e_bar_m = (-1)^m m! [u^m] E, g_bar_m likewise from G.
FactorialMoments moments_at(const SpectralDecomposition& dec, double tau, int m_max);

// Grid drivers. Evaluations at distinct times are independent; the parallel
// path fills the same slots and is bit-identical to the serial reference.
std::vector<GeneratingSet> generating_series(const SpectralDecomposition& dec,
                                             std::span<const double> taus,
                                             Exec exec = Exec::parallel);
std::vector<StateSlice> state_series(const SpectralDecomposition& dec,
                                     std::span<const double> taus, int n_max,
                                     Exec exec = Exec::parallel);
std::vector<FactorialMoments> moments_series(const SpectralDecomposition& dec,
                                             std::span<const double> taus, int m_max,
                                             Exec exec = Exec::parallel);

}  // namespace jcd
