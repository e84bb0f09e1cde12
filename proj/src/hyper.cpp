#include "jcd/hyper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jcd/errors.hpp"
#include "jcd/poly.hpp"

namespace jcd {

namespace {

std::string param_str(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

// Whether z lies within eps of a nonpositive integer; reports which one.
bool near_nonpositive_integer(cplx z, double eps, long long* which) {
    const double re = z.real();
    const long long j = std::llround(re);
    if (j > 0) return false;
    if (std::abs(cplx(re - static_cast<double>(j), z.imag())) >= eps) return false;
    if (which) *which = j;
    return true;
}

}  // namespace

std::vector<cplx> series_coeffs(const HyperSpec& spec, double eps_param) {
    if (spec.n_terms < 0) throw std::invalid_argument("series_coeffs: n_terms must be >= 0");
    std::vector<cplx> t(spec.n_terms, cplx{0.0});
    if (spec.n_terms == 0) return t;
    t[0] = 1.0;
    bool terminated = false;
    for (int n = 0; n + 1 < spec.n_terms; ++n) {
        if (terminated) continue;  // everything past the termination index is exactly zero
        cplx num{1.0};
        for (const auto& up : spec.upper) {
            cplx f = up + static_cast<double>(n);
            if (std::abs(f) < eps_param) {
                f = 0.0;
                terminated = true;
            }
            num *= f;
        }
        cplx den{static_cast<double>(n + 1)};
        for (std::size_t j = 0; j < spec.lower.size(); ++j) {
            const cplx f = spec.lower[j] + static_cast<double>(n);
            if (!terminated && std::abs(f) < eps_param) {
                std::ostringstream os;
                os << "series_coeffs: lower parameter " << param_str(spec.lower[j])
                   << " (position " << j << ") is singular at coefficient index " << n + 1;
                throw SingularLowerParameter(os.str());
            }
            den *= f;
        }
        t[n + 1] = terminated ? cplx{0.0} : t[n] * num / den;
    }
    return t;
}

int termination_index(std::span<const cplx> upper, double eps_param) {
    long long best = 1;
    for (const auto& up : upper) {
        long long j = 0;
        if (near_nonpositive_integer(up, eps_param, &j) && (best > 0 || j > best)) {
            best = j;  // smallest termination degree wins (largest j <= 0)
        }
    }
    return best > 0 ? -1 : static_cast<int>(-best);
}

cplx eval_terminating(const HyperSpec& spec, cplx arg, double eps_param) {
    const int k = termination_index(spec.upper, eps_param);
    if (k < 0) {
        throw NotTerminating("eval_terminating: no upper parameter is a nonpositive integer");
    }
    if (k > kTerminationCap) {
        std::ostringstream os;
        os << "eval_terminating: termination degree " << k << " exceeds cap " << kTerminationCap;
        throw NotTerminating(os.str());
    }
    HyperSpec s = spec;
    s.n_terms = k + 1;
    const std::vector<cplx> t = series_coeffs(s, eps_param);
    std::vector<cplx> terms(t.size());
    cplx pw{1.0};
    for (std::size_t n = 0; n < t.size(); ++n) {
        terms[n] = t[n] * pw;
        pw *= arg;
    }
    return pairwise_sum(terms);
}

}  // namespace jcd
