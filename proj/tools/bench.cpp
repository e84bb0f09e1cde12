// bench.cpp — serial vs OpenMP timings for the two data-parallel kernels:
// the orthonormality pairing matrix and time-grid evaluation. The parallel
// paths must reproduce the serial reference bit for bit.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jcd/adjoint.hpp"
#include "jcd/evolve.hpp"
#include "jcd/projection.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path runs serially\n");
#endif

    const jcd::ModelParams params(5.0);

    const int k_max = 24;
    std::vector<jcd::cplx> mat_serial, mat_parallel;
    const double t_mat_serial = time_best_of(
        3, [&] { mat_serial = jcd::pairing_matrix(params, k_max, jcd::Exec::serial); });
    const double t_mat_parallel = time_best_of(
        3, [&] { mat_parallel = jcd::pairing_matrix(params, k_max, jcd::Exec::parallel); });
    bool same = mat_serial == mat_parallel;
    std::printf("pairing matrix (k_max=%d):   serial %8.3f ms   parallel %8.3f ms   "
                "speedup %.2fx   identical: %s\n",
                k_max, 1e3 * t_mat_serial, 1e3 * t_mat_parallel,
                t_mat_serial / t_mat_parallel, same ? "yes" : "NO");
    if (!same) return 1;

    const jcd::SpectralDecomposition dec = jcd::project(params, jcd::fock_ground(12));
    std::vector<double> taus(4001);
    for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = 3.0 * i / (taus.size() - 1);

    std::vector<jcd::StateSlice> s_serial, s_parallel;
    const double t_grid_serial = time_best_of(
        3, [&] { s_serial = jcd::state_series(dec, taus, 24, jcd::Exec::serial); });
    const double t_grid_parallel = time_best_of(
        3, [&] { s_parallel = jcd::state_series(dec, taus, 24, jcd::Exec::parallel); });
    same = true;
    for (std::size_t i = 0; i < taus.size() && same; ++i) {
        same = s_serial[i].e == s_parallel[i].e && s_serial[i].g == s_parallel[i].g &&
               s_serial[i].h == s_parallel[i].h && s_serial[i].f == s_parallel[i].f;
    }
    std::printf("state grid (%zu times):     serial %8.3f ms   parallel %8.3f ms   "
                "speedup %.2fx   identical: %s\n",
                taus.size(), 1e3 * t_grid_serial, 1e3 * t_grid_parallel,
                t_grid_serial / t_grid_parallel, same ? "yes" : "NO");
    return same ? 0 : 1;
}
