// adjoint.hpp — adjoint modes, normalization, and residue pairings
//
// Adjoint modes are non-terminating hypergeometric series in x = a/u; they
// are stored as truncated coefficient streams. Paired with the eigenmodes
// through the coefficient of x^{-1} (a contour integral around the origin)
// they form a biorthonormal family used to fit initial conditions.
#pragma once

#include <vector>

#include "jcd/modes.hpp"
#include "jcd/params.hpp"
#include "jcd/poly.hpp"

namespace jcd {

struct AdjointTriple {
    ModeLabel label;
    int order = 0;  // series coefficients stored per component
    LaurentX Ehat, Dhat, Hhat;
    cplx c, c_prime, c_dprime;  // chained normalization constants
};

// Throws ExceptionalPoint when 1 - 4a(m+1) vanishes (the normalization
// constants diverge there, for every branch).
AdjointTriple build_adjoint(const ModelParams& params, ModeLabel label, int order);

// Decoupled-sector adjoint: the exact monomial a^{-m} x^{m-1}.
LaurentX build_f_adjoint(const ModelParams& params, int m);

// Residue pairing <adjoint, mode>; equals delta_{r,s} delta_{k,m} for
// correctly normalized inputs. The adjoint order must cover the x^{-1}
// coefficient of the products (order >= mode.k - label.k + 2 is safe).
cplx pair_mode(const AdjointTriple& adj, const ModeTriple& mode, const ModelParams& params);

// Decoupled-sector pairing; equals delta_{m,k} by monomial arithmetic.
cplx pair_f(const LaurentX& adjF, const PolyU& modeF, const ModelParams& params);

// Maximum residual of the three adjoint equations over all powers the
// truncated series actually determine, relative to the largest term.
double verify_adjoint_system(const AdjointTriple& adj, const ModelParams& params);

// Residual of the third-order adjoint equation for the branch-zero Ehat.
double adjoint_third_order_residual(const LaurentX& Ehat, cplx lambda,
                                    const ModelParams& params);

// Full pairing matrix over rows (r,m) and columns (s,k) with m,k <= k_max,
// branches ordered zero/plus/minus, row-major. Entries are independent, so
// the parallel path returns bit-identical values to the serial reference.
std::vector<cplx> pairing_matrix(const ModelParams& params, int k_max,
                                 Exec exec = Exec::parallel);

// max |pairing_matrix - identity|.
double orthonormality_deviation(const ModelParams& params, int k_max,
                                Exec exec = Exec::parallel);

}  // namespace jcd
