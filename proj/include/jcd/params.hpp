// params.hpp — scaled model parameters and shared scalar conventions
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace jcd {

using cplx = std::complex<double>;

// Dimensionless parameters of the damped Jaynes-Cummings model. Times are
// measured in units of the inverse cavity decay rate, and the atom-field
// coupling enters only through a = alpha^2 with alpha the coupling-to-decay
// ratio.
struct ModelParams {
    double a;                      // squared scaled coupling, a > 0
    double eps_degenerate = 1e-9;  // guard on |1 - 4a(k+1)| (mode coalescence)
    double eps_param = 1e-9;       // guard on singular hypergeometric lower parameters

    explicit ModelParams(double a_) : a(a_) {
        if (!(a > 0.0)) {
            throw std::invalid_argument("ModelParams: coupling a must be positive");
        }
    }

    double alpha() const { return std::sqrt(a); }
};

// Execution policy for the data-parallel kernels. The serial path is the
// reference implementation; results are identical entry by entry.
enum class Exec { serial, parallel };

}  // namespace jcd
