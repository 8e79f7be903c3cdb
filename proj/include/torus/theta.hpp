#ifndef TORUS_THETA_HPP
#define TORUS_THETA_HPP

#include "torus/types.hpp"

namespace torus {

struct ThetaOptions {
    int max_terms = 64;
    double tail_rel = 1e-17;       // per-term cutoff relative to the largest partial sum
    double im_floor = default_im_floor;
};

/// theta1 and its first three z-derivatives, summed from the defining series.
struct ThetaEval {
    cx value{};
    cx d1{}, d2{}, d3{};
    int terms_used = 0;
};

/// Evaluate theta1(z; tau) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z),
/// q = exp(i pi tau), together with d/dz derivatives up to third order.
///
/// Requires Im tau >= im_floor (precision_error otherwise) and
/// |Im z| <= 4 Im tau (domain_error; reduce z by the lattice first).
ThetaEval theta1(cx z, cx tau, const ThetaOptions& opt = {});

namespace detail {

/// Same series including the fourth z-derivative (needed for the second
/// derivative of the Weierstrass function via log-derivatives).
struct ThetaEval4 {
    cx value{}, d1{}, d2{}, d3{}, d4{};
    int terms_used = 0;
};

ThetaEval4 theta1_d4(cx z, cx tau, const ThetaOptions& opt = {});

} // namespace detail

} // namespace torus

#endif
