#include "jcd/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jcd/errors.hpp"

namespace jcd {

namespace {

constexpr double kBoundaryTol = 1e-10;

void axpy(TruncatedLadder& y, double a, const TruncatedLadder& x) {
    for (std::size_t n = 0; n < y.d.size(); ++n) {
        y.d[n] += a * x.d[n];
        y.e[n] += a * x.e[n];
        y.f[n] += a * x.f[n];
        y.h[n] += a * x.h[n];
    }
}

TruncatedLadder ladder_from_state(const InitialState& st, int n_trunc) {
    TruncatedLadder lad(n_trunc);
    const std::size_t top = lad.d.size();
    for (std::size_t n = 0; n < st.d.size() && n < top; ++n) lad.d[n] = st.d[n];
    for (std::size_t n = 0; n < st.e.size() && n < top; ++n) {
        lad.e[n] = st.e[n];
        lad.f[n] = st.f[n];
        lad.h[n] = st.h[n];
    }
    return lad;
}

StateSlice slice_from_ladder(const TruncatedLadder& lad, double tau) {
    StateSlice sl;
    sl.tau = tau;
    sl.d = lad.d;
    sl.e = lad.e;
    sl.f = lad.f;
    sl.h = lad.h;
    sl.g.resize(lad.d.size());
    sl.g[0] = lad.d[0];
    for (std::size_t n = 1; n < lad.d.size(); ++n) sl.g[n] = lad.d[n] - lad.e[n - 1];
    return sl;
}

void rk4_step(TruncatedLadder& y, double h, const ModelParams& params) {
    const TruncatedLadder k1 = rhs(y, params);
    TruncatedLadder y2 = y;
    axpy(y2, 0.5 * h, k1);
    const TruncatedLadder k2 = rhs(y2, params);
    TruncatedLadder y3 = y;
    axpy(y3, 0.5 * h, k2);
    const TruncatedLadder k3 = rhs(y3, params);
    TruncatedLadder y4 = y;
    axpy(y4, h, k3);
    const TruncatedLadder k4 = rhs(y4, params);
    axpy(y, h / 6.0, k1);
    axpy(y, h / 3.0, k2);
    axpy(y, h / 3.0, k3);
    axpy(y, h / 6.0, k4);
}

}  // namespace

TruncatedLadder rhs(const TruncatedLadder& s, const ModelParams& params) {
    const double alpha = params.alpha();
    const int top = s.top();
    TruncatedLadder out(top);
    for (int n = 0; n <= top; ++n) {
        const double dn1 = n < top ? s.d[n + 1] : 0.0;
        const double en1 = n < top ? s.e[n + 1] : 0.0;
        const double fn1 = n < top ? s.f[n + 1] : 0.0;
        const double hn1 = n < top ? s.h[n + 1] : 0.0;
        const double feed = n > 0 ? 2.0 * s.e[n - 1] : 0.0;
        out.d[n] = 2.0 * (n + 1) * dn1 - 2.0 * n * s.d[n] - 2.0 * s.e[n] + feed;
        out.e[n] = 2.0 * (n + 1) * en1 - 2.0 * n * s.e[n] - alpha * s.h[n];
        out.f[n] = 2.0 * (n + 1) * fn1 - (2.0 * n + 1) * s.f[n];
        out.h[n] = 2.0 * (n + 1) * hn1 - (2.0 * n + 1) * s.h[n] -
                   2.0 * alpha * (n + 1) * dn1 + 4.0 * alpha * (n + 1) * s.e[n];
    }
    return out;
}

std::vector<StateSlice> integrate(const InitialState& state0, const ModelParams& params,
                                  std::span<const double> tau_grid, int n_trunc, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("integrate: step must be positive");
    if (tau_grid.empty()) throw std::invalid_argument("integrate: empty output grid");
    if (tau_grid.front() < 0.0) throw std::invalid_argument("integrate: grid starts before 0");
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > tau_grid[i - 1])) {
            throw std::invalid_argument("integrate: grid must be strictly increasing");
        }
    }
    if (n_trunc < state0.n_support + 20) {
        std::ostringstream os;
        os << "integrate: truncation level " << n_trunc << " is too tight for support "
           << state0.n_support << " (need n_support + 20)";
        throw TruncationTooTight(os.str());
    }

    TruncatedLadder lad = ladder_from_state(state0, n_trunc);
    std::vector<StateSlice> out;
    out.reserve(tau_grid.size());

    const auto emit = [&](double tau) {
        if (std::abs(lad.d[n_trunc]) + std::abs(lad.e[n_trunc]) > kBoundaryTol) {
            std::ostringstream os;
            os << "integrate: boundary occupation " << std::abs(lad.d[n_trunc]) +
                   std::abs(lad.e[n_trunc])
               << " at tau=" << tau << "; raise the truncation level";
            throw TruncationTooTight(os.str());
        }
        out.push_back(slice_from_ladder(lad, tau));
    };

    double t = 0.0;
    std::size_t i = 0;
    if (tau_grid[0] == 0.0) {
        emit(0.0);
        i = 1;
    }
    for (; i < tau_grid.size(); ++i) {
        const double span = tau_grid[i] - t;
        const long long nsub = std::llround(span / step);
        if (nsub < 1 || std::abs(nsub * step - span) > 1e-9) {
            std::ostringstream os;
            os << "integrate: step " << step << " does not subdivide the segment ending at tau="
               << tau_grid[i];
            throw std::invalid_argument(os.str());
        }
        const double h = span / static_cast<double>(nsub);
        for (long long j = 0; j < nsub; ++j) rk4_step(lad, h, params);
        t = tau_grid[i];
        emit(t);
    }
    return out;
}

double max_deviation(const std::vector<StateSlice>& lhs, const std::vector<StateSlice>& rhs) {
    if (lhs.size() != rhs.size()) throw GridMismatch("max_deviation: slice counts differ");
    double dev = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        const StateSlice& a = lhs[i];
        const StateSlice& b = rhs[i];
        if (std::abs(a.tau - b.tau) > 1e-12) {
            throw GridMismatch("max_deviation: time grids differ");
        }
        if (a.e.size() != b.e.size()) {
            throw GridMismatch("max_deviation: slice lengths differ");
        }
        for (std::size_t n = 0; n < a.e.size(); ++n) {
            dev = std::max(dev, std::abs(a.e[n] - b.e[n]));
            dev = std::max(dev, std::abs(a.g[n] - b.g[n]));
            dev = std::max(dev, std::abs(a.h[n] - b.h[n]));
            dev = std::max(dev, std::abs(a.f[n] - b.f[n]));
        }
    }
    return dev;
}

}  // namespace jcd
