// hyper.hpp — generalized hypergeometric coefficient streams
//
// All eigenmodes and adjoint modes of the model are built from pFq series
// with complex parameters: terminating ones (an upper parameter is a
// nonpositive integer) become polynomials, non-terminating ones are kept as
// truncated coefficient streams.
#pragma once

#include <span>
#include <vector>

#include "jcd/params.hpp"

namespace jcd {

struct HyperSpec {
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    int n_terms = 0;  // number of series coefficients to generate
};

// Largest termination degree supported; double precision degrades beyond it
// for large couplings, so we refuse rather than return garbage.
constexpr int kTerminationCap = 60;

// Series coefficients t_0..t_{n_terms-1} with t_0 = 1 and
//   t_{n+1} = t_n * prod_i(upper_i + n) / (prod_j(lower_j + n) * (n+1)).
// Upper parameters within eps_param of a nonpositive integer are snapped to
// it, so terminating series vanish exactly beyond the termination index.
// Throws SingularLowerParameter when a lower parameter hits a nonpositive
// integer inside the generated range.
std::vector<cplx> series_coeffs(const HyperSpec& spec, double eps_param = 1e-9);

// Index k of the smallest nonpositive-integer upper parameter -k, or -1 if
// the series does not terminate.
int termination_index(std::span<const cplx> upper, double eps_param = 1e-9);

// Value of a terminating series at `arg` (pairwise-summed polynomial).
// Throws NotTerminating when no upper parameter is a nonpositive integer or
// the termination degree exceeds kTerminationCap.
cplx eval_terminating(const HyperSpec& spec, cplx arg, double eps_param = 1e-9);

}  // namespace jcd
