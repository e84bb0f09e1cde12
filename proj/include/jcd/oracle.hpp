// oracle.hpp — brute-force cross-check: fixed-step RK4 on the truncated
// coupled matrix-element equations. Deliberately simple and serial; this is
// the independent path the spectral solver is validated against.
#pragma once

#include <span>
#include <vector>

#include "jcd/evolve.hpp"
#include "jcd/params.hpp"
#include "jcd/projection.hpp"

namespace jcd {

// Matrix-element vectors on photon indices 0..N; terms referencing index
// N+1 are treated as zero (closure). With that closure the total trace
// sum(d) is conserved exactly for data supported strictly below N.
struct TruncatedLadder {
    std::vector<double> d, e, f, h;

    explicit TruncatedLadder(int n_trunc = 0)
        : d(n_trunc + 1, 0.0), e(n_trunc + 1, 0.0), f(n_trunc + 1, 0.0), h(n_trunc + 1, 0.0) {}
    int top() const { return static_cast<int>(d.size()) - 1; }
};

// Time derivatives of the truncated system. The d-equation omits its
// e_{n-1} feed at n = 0.
TruncatedLadder rhs(const TruncatedLadder& state, const ModelParams& params);

// Classical RK4 from tau = 0 across an increasing output grid; the step is
// snapped so each grid segment is an exact whole number of substeps.
// Throws TruncationTooTight when n_trunc < n_support + 20 or when boundary
// occupation |d_N| + |e_N| exceeds 1e-10 at an output time.
std::vector<StateSlice> integrate(const InitialState& state0, const ModelParams& params,
                                  std::span<const double> tau_grid, int n_trunc, double step);

// Max absolute difference across e, g, h, f over matching grids.
double max_deviation(const std::vector<StateSlice>& lhs, const std::vector<StateSlice>& rhs);

}  // namespace jcd
