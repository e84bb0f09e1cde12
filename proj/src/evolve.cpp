#include "jcd/evolve.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "jcd/errors.hpp"

namespace jcd {

namespace {

constexpr double kRealityTol = 1e-6;
// Below exp(-200) a contribution is far under any representable signal;
// dropping it keeps the plain complex exponential safe at large tau.
constexpr double kExpFloor = -200.0;

cplx decaying_exp(cplx lambda, double tau) {
    const cplx z = lambda * tau;
    if (z.real() < kExpFloor) return {0.0};
    return std::exp(z);
}

std::vector<double> real_parts_checked(const std::vector<cplx>& v, const char* what) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i].imag()) > kRealityTol) {
            std::ostringstream os;
            os << what << ": imaginary part " << v[i].imag() << " at index " << i
               << " exceeds " << kRealityTol;
            throw RealityViolation(os.str());
        }
        out[i] = v[i].real();
    }
    return out;
}

}  // namespace

GeneratingSet generating_at(const SpectralDecomposition& dec, double tau) {
    if (tau < 0.0) throw std::invalid_argument("generating_at: tau must be >= 0");
    GeneratingSet gs;
    gs.tau = tau;
    for (const auto& per_k : dec.entries) {
        for (const auto& ent : per_k) {
            const cplx w = ent.A * decaying_exp(ent.mode.lambda, tau);
            if (w == cplx{0.0}) continue;
            gs.E = gs.E + w * ent.mode.E;
            gs.D = gs.D + w * ent.mode.D;
            gs.H = gs.H + w * ent.mode.H;
        }
    }
    gs.D = gs.D + PolyU::constant(dec.d_constant);
    PolyU F;
    F.c.resize(dec.f_coeffs.size());
    for (std::size_t k = 0; k < dec.f_coeffs.size(); ++k) {
        F.c[k] = dec.f_coeffs[k] * decaying_exp(cplx{-2.0 * static_cast<double>(k) - 1.0}, tau);
    }
    gs.F = F.trim();
    gs.G = gs.D - (PolyU{{1.0, -1.0}} * gs.E);  // (1-u) E
    return gs;
}

StateSlice state_at(const SpectralDecomposition& dec, double tau, int n_max) {
    if (n_max < 0) throw std::invalid_argument("state_at: n_max must be >= 0");
    const GeneratingSet gs = generating_at(dec, tau);
    StateSlice sl;
    sl.tau = tau;
    sl.e = real_parts_checked(u_poly_to_z_coeffs(gs.E, n_max), "state_at: e");
    sl.d = real_parts_checked(u_poly_to_z_coeffs(gs.D, n_max), "state_at: d");
    sl.h = real_parts_checked(u_poly_to_z_coeffs(gs.H, n_max), "state_at: h");
    sl.f = real_parts_checked(u_poly_to_z_coeffs(gs.F, n_max), "state_at: f");
    sl.g.resize(n_max + 1);
    sl.g[0] = sl.d[0];
    for (int n = 1; n <= n_max; ++n) sl.g[n] = sl.d[n] - sl.e[n - 1];
    return sl;
}

FactorialMoments moments_at(const SpectralDecomposition& dec, double tau, int m_max) {
    if (m_max < 0) throw std::invalid_argument("moments_at: m_max must be >= 0");
    const GeneratingSet gs = generating_at(dec, tau);
    std::vector<cplx> eb(m_max + 1), gb(m_max + 1);
    double sign_fact = 1.0;  // (-1)^m m!
    for (int m = 0; m <= m_max; ++m) {
        eb[m] = sign_fact * gs.E.coeff(m);
        gb[m] = sign_fact * gs.G.coeff(m);
        sign_fact *= -static_cast<double>(m + 1);
    }
    FactorialMoments fm;
    fm.tau = tau;
    fm.e_bar = real_parts_checked(eb, "moments_at: e_bar");
    fm.g_bar = real_parts_checked(gb, "moments_at: g_bar");
    return fm;
}

namespace {

template <typename T, typename Fn>
std::vector<T> run_series(std::span<const double> taus, Exec exec, Fn&& fn) {
    std::vector<T> out(taus.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(taus.size());
    if (exec == Exec::parallel) {
        std::exception_ptr err;  // exceptions must not unwind out of the region
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                out[i] = fn(taus[i]);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fn(taus[i]);
    }
    return out;
}

}  // namespace

std::vector<GeneratingSet> generating_series(const SpectralDecomposition& dec,
                                             std::span<const double> taus, Exec exec) {
    return run_series<GeneratingSet>(taus, exec,
                                     [&](double t) { return generating_at(dec, t); });
}

std::vector<StateSlice> state_series(const SpectralDecomposition& dec,
                                     std::span<const double> taus, int n_max, Exec exec) {
    return run_series<StateSlice>(taus, exec,
                                  [&](double t) { return state_at(dec, t, n_max); });
}

std::vector<FactorialMoments> moments_series(const SpectralDecomposition& dec,
                                             std::span<const double> taus, int m_max,
                                             Exec exec) {
    return run_series<FactorialMoments>(taus, exec,
                                        [&](double t) { return moments_at(dec, t, m_max); });
}

}  // namespace jcd
