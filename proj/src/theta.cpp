#include "torus/theta.hpp"

#include <algorithm>

namespace torus {

namespace {

// One series pass accumulating value and derivatives up to `order`.
//
// Each term is assembled from the two half-exponentials
//   E+- = exp(i pi [ tau (n+1/2)^2 +- (2n+1) z ])
// rather than q^(n+1/2)^2 * sin/cos, so that a strongly decaying nome factor
// can never meet an overflowing trig factor (0 * inf) for large |Im z|.
template <int Order>
void sum_series(cx z, cx tau, const ThetaOptions& opt, cx out[Order + 1], int& terms) {
    if (!(tau.imag() > 0.0))
        throw domain_error("theta1: tau must lie in the upper half plane");
    if (tau.imag() < opt.im_floor)
        throw precision_error("theta1: Im tau below the series floor");
    if (std::abs(z.imag()) > 4.0 * tau.imag())
        throw domain_error("theta1: |Im z| too large for the series window; reduce z first");

    const cx ipi{0.0, pi};
    for (int d = 0; d <= Order; ++d) out[d] = cx{};

    double biggest = 0.0;
    int quiet = 0;
    terms = 0;
    for (int n = 0; n < opt.max_terms; ++n) {
        const double half = n + 0.5;
        const double m = 2.0 * n + 1.0;
        const cx base = tau * (half * half);
        const cx ep = std::exp(ipi * (base + m * z));
        const cx em = std::exp(ipi * (base - m * z));
        const double sgn = (n & 1) ? -1.0 : 1.0;

        // value term: 2 (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z) = -i (-1)^n (E+ - E-)
        const cx v = cx{0.0, -1.0} * sgn * (ep - em);
        const cx w = sgn * (m * pi) * (ep + em);   // d/dz of v
        out[0] += v;
        if constexpr (Order >= 1) out[1] += w;
        if constexpr (Order >= 2) out[2] += -(m * pi) * (m * pi) * v;
        if constexpr (Order >= 3) out[3] += -(m * pi) * (m * pi) * w;
        if constexpr (Order >= 4) out[4] += (m * pi) * (m * pi) * (m * pi) * (m * pi) * v;
        ++terms;

        // Majorant over every tracked sum: the highest derivative carries the
        // largest weight. The stop rule must not key on the value sum alone
        // (it vanishes identically at z = 0 while derivatives do not).
        double weight = 1.0;
        for (int d = 0; d < Order; ++d) weight *= m * pi;
        const double mag = (std::abs(ep) + std::abs(em)) * weight;
        biggest = std::max(biggest, mag);
        if (mag < opt.tail_rel * biggest) {
            if (++quiet >= 2) return;
        } else {
            quiet = 0;
        }
    }
    throw precision_error("theta1: series did not converge within max_terms");
}

} // namespace

ThetaEval theta1(cx z, cx tau, const ThetaOptions& opt) {
    cx sums[4];
    ThetaEval ev;
    sum_series<3>(z, tau, opt, sums, ev.terms_used);
    ev.value = sums[0];
    ev.d1 = sums[1];
    ev.d2 = sums[2];
    ev.d3 = sums[3];
    return ev;
}

namespace detail {

ThetaEval4 theta1_d4(cx z, cx tau, const ThetaOptions& opt) {
    cx sums[5];
    ThetaEval4 ev;
    sum_series<4>(z, tau, opt, sums, ev.terms_used);
    ev.value = sums[0];
    ev.d1 = sums[1];
    ev.d2 = sums[2];
    ev.d3 = sums[3];
    ev.d4 = sums[4];
    return ev;
}

} // namespace detail

} // namespace torus
