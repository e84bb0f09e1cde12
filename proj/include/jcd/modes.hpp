// modes.hpp — eigenvalues and eigenmodes of the generating-function system
//
// The decoupled sector has monomial eigenmodes u^k. The coupled sector has
// three branch families per index k, built from terminating hypergeometric
// series in -a/u and expanded into polynomials in u.
#pragma once

#include "jcd/params.hpp"
#include "jcd/poly.hpp"

namespace jcd {

enum class Branch { zero, plus, minus, fsector };

inline int branch_index(Branch b) { return static_cast<int>(b); }  // zero=0, plus=1, minus=2
inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::zero: return "zero";
        case Branch::plus: return "plus";
        case Branch::minus: return "minus";
        default: return "fsector";
    }
}

struct ModeLabel {
    Branch branch;
    int k = 0;
};

// w_k enters the branch-zero parameters, wbar_k splits the +/- eigenvalues.
// Principal square roots throughout; "plus" always means +wbar_k.
struct BranchRoots {
    cplx w;     // sqrt(a^2 - 4a(k+1) + 1)
    cplx wbar;  // sqrt(1 - 4a(k+1))
};

struct ModeTriple {
    ModeLabel label;
    cplx lambda;
    PolyU E, D, H;
};

// Throws ExceptionalPoint when |1 - 4a(k+1)| <= eps_degenerate (the +/-
// eigenvalues coalesce there and the triple family degenerates).
BranchRoots branch_roots(const ModelParams& params, int k);

// fsector/zero: -2k-1; plus/minus: -2k-1 +/- wbar_k.
cplx eigenvalue(const ModelParams& params, ModeLabel label);

ModeTriple build_mode(const ModelParams& params, ModeLabel label);

PolyU build_f_mode(int k);  // u^k

// Maximum residual coefficient of the three first-order mode equations,
// relative to the largest term coefficient entering them.
double verify_mode_system(const ModeTriple& mode, const ModelParams& params);

// Residual of the third-order equation satisfied by the E component alone.
double third_order_residual(const PolyU& E, cplx lambda, const ModelParams& params);

// Residual of the decoupled-sector mode equation for F = u^k.
double verify_f_mode(const PolyU& F, int k);

// Cross-check of the two E-component representations: the polynomial built
// from the series in -a/u against the terminating series in u/a with the
// term order inverted. Returns the max relative deviation over the sample
// points (u in (0,1]).
double representation_identity_deviation(const ModelParams& params, ModeLabel label,
                                         std::span<const double> us);

}  // namespace jcd
