#include "torus/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace torus {

namespace detail {

Reduced reduce_to_cell(cx z, cx tau) {
    const double s = z.imag() / tau.imag();
    const double r = z.real() - s * tau.real();
    Reduced out;
    out.m = std::floor(r);
    out.n = std::floor(s);
    out.z0 = z - out.m - out.n * tau;
    return out;
}

} // namespace detail

namespace {

void check_not_lattice(cx z, cx tau, double eps) {
    if (lattice_distance(z, tau) < eps)
        throw domain_error("evaluation point too close to a lattice point");
}

// (log theta1)'' and ''' from one series evaluation.
struct LogDerivs {
    cx l1, l2, l3;
};

LogDerivs log_derivs(cx z, cx tau, const ThetaOptions& opt) {
    const ThetaEval t = theta1(z, tau, opt);
    const cx r1 = t.d1 / t.value;
    const cx r2 = t.d2 / t.value;
    const cx r3 = t.d3 / t.value;
    LogDerivs ld;
    ld.l1 = r1;
    ld.l2 = r2 - r1 * r1;
    ld.l3 = r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
    return ld;
}

} // namespace

LatticeInvariants invariants(cx tau, const KernelOptions& opt) {
    LatticeInvariants inv;
    inv.tau = ModuliPoint(tau);

    const ThetaEval t0 = theta1(cx{}, tau, opt.theta);
    inv.eta1 = -t0.d3 / (3.0 * t0.d1);
    inv.eta2 = tau * inv.eta1 - cx{0.0, 2.0 * pi};

    const cx half[3] = {cx{0.5, 0.0}, 0.5 * tau, 0.5 * (1.0 + tau)};
    cx e[3];
    for (int k = 0; k < 3; ++k)
        e[k] = -inv.eta1 - log_derivs(half[k], tau, opt.theta).l2;
    inv.e1 = e[0];
    inv.e2 = e[1];
    inv.e3 = e[2];
    inv.g2 = -4.0 * (e[0] * e[1] + e[0] * e[2] + e[1] * e[2]);
    inv.g3 = 4.0 * e[0] * e[1] * e[2];

    // Series sanity: eta1 must agree with 2 zeta(1/2), and the theta ratio at
    // the mixed half period must reproduce the quasi-period structure,
    // (log theta1)'((1+tau)/2) = -i pi. Both catch truncation bugs early.
    const double scale = std::max({1.0, std::abs(inv.eta1), std::abs(e[0]), std::abs(e[1])});
    const cx zeta_half = inv.eta1 * 0.5 + log_derivs(cx{0.5, 0.0}, tau, opt.theta).l1;
    if (std::abs(2.0 * zeta_half - inv.eta1) > opt.consistency_tol * scale)
        throw precision_error("invariants: eta1 vs 2 zeta(1/2) mismatch");
    const cx l1_mixed = log_derivs(half[2], tau, opt.theta).l1;
    if (std::abs(l1_mixed + cx{0.0, pi}) > opt.consistency_tol * scale)
        throw precision_error("invariants: quasi-period consistency check failed");

    // The three half-period values are pairwise distinct on the upper half
    // plane; a collision here means the series lost too many digits.
    const double esc = std::max({1.0, std::abs(e[0]), std::abs(e[1]), std::abs(e[2])});
    if (std::abs(e[0] - e[1]) < 1e-12 * esc || std::abs(e[0] - e[2]) < 1e-12 * esc ||
        std::abs(e[1] - e[2]) < 1e-12 * esc)
        throw precision_error("invariants: half-period values collapsed");

    return inv;
}

LatticeInvariants invariants(const ModuliPoint& tau, const KernelOptions& opt) {
    return invariants(tau.value(), opt);
}

DTauInvariants tau_derivatives(const LatticeInvariants& inv) {
    const cx i4pi = cx{0.0, 1.0} / (4.0 * pi);
    DTauInvariants d;
    d.tau = inv.tau;
    d.deta1 = i4pi * (2.0 * inv.eta1 * inv.eta1 - inv.g2 / 6.0);
    const cx e[3] = {inv.e1, inv.e2, inv.e3};
    cx de[3];
    for (int k = 0; k < 3; ++k)
        de[k] = -i4pi * (4.0 * (e[k] - inv.eta1) * e[k] - (2.0 / 3.0) * inv.g2);
    d.de1 = de[0];
    d.de2 = de[1];
    d.de3 = de[2];
    d.dg2 = (cx{0.0, -1.0} / pi) * (3.0 * inv.g3 - 2.0 * inv.eta1 * inv.g2);
    d.dg3 = (cx{0.0, -1.0} / pi) * (-3.0 * inv.g3 * inv.eta1 + inv.g2 * inv.g2 / 6.0);
    return d;
}

DTauInvariants tau_derivatives(cx tau, const KernelOptions& opt) {
    return tau_derivatives(invariants(tau, opt));
}

cx wp(cx z, const LatticeInvariants& inv, const KernelOptions& opt) {
    const cx tau = inv.tau.value();
    check_not_lattice(z, tau, opt.lattice_eps);
    const auto red = detail::reduce_to_cell(z, tau);
    return -inv.eta1 - log_derivs(red.z0, tau, opt.theta).l2;
}

cx wp_prime(cx z, cx tau, const KernelOptions& opt) {
    check_not_lattice(z, tau, opt.lattice_eps);
    const auto red = detail::reduce_to_cell(z, tau);
    return -log_derivs(red.z0, tau, opt.theta).l3;
}

cx wp_pp(cx z, cx tau, const KernelOptions& opt) {
    check_not_lattice(z, tau, opt.lattice_eps);
    const auto red = detail::reduce_to_cell(z, tau);
    const auto t = detail::theta1_d4(red.z0, tau, opt.theta);
    const cx r1 = t.d1 / t.value;
    const cx r2 = t.d2 / t.value;
    const cx r3 = t.d3 / t.value;
    const cx r4 = t.d4 / t.value;
    // fourth log-derivative
    const cx l4 = r4 - 4.0 * r1 * r3 - 3.0 * r2 * r2 + 12.0 * r1 * r1 * r2 -
                  6.0 * r1 * r1 * r1 * r1;
    return -l4;
}

cx zeta_w(cx z, const LatticeInvariants& inv, const KernelOptions& opt) {
    const cx tau = inv.tau.value();
    check_not_lattice(z, tau, opt.lattice_eps);
    const auto red = detail::reduce_to_cell(z, tau);
    const cx zeta0 = inv.eta1 * red.z0 + log_derivs(red.z0, tau, opt.theta).l1;
    return zeta0 + red.m * inv.eta1 + red.n * inv.eta2;
}

cx wp(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt) {
    return wp(z.z, invariants(tau.value(), opt), opt);
}
cx wp_prime(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt) {
    return wp_prime(z.z, tau.value(), opt);
}
cx wp_pp(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt) {
    return wp_pp(z.z, tau.value(), opt);
}
cx zeta_w(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt) {
    return zeta_w(z.z, invariants(tau.value(), opt), opt);
}

cx wp_dtau(cx z, const LatticeInvariants& inv, const KernelOptions& opt) {
    const cx tau = inv.tau.value();
    check_not_lattice(z, tau, opt.lattice_eps);
    const cx ze = zeta_w(z, inv, opt);
    const cx p = wp(z, inv, opt);
    const cx pp = wp_prime(z, tau, opt);
    return (cx{0.0, -1.0} / (4.0 * pi)) *
           (2.0 * (ze - z * inv.eta1) * pp + 4.0 * (p - inv.eta1) * p - (2.0 / 3.0) * inv.g2);
}

cx wp_dtau(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt) {
    return wp_dtau(z.z, invariants(tau.value(), opt), opt);
}

TorusPoint wp_inverse(cx w, const ModuliPoint& tau_pt, std::optional<cx> seed,
                      const InverseOptions& opt) {
    const cx tau = tau_pt.value();
    const LatticeInvariants inv = invariants(tau, opt.kernel);
    const double target = opt.tol * std::max(1.0, std::abs(w));

    cx z;
    if (seed) {
        z = *seed;
    } else {
        // coarse scan of the cell, away from the lattice corners
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < opt.grid; ++i) {
            for (int j = 0; j < opt.grid; ++j) {
                const double r = (i + 0.5) / opt.grid;
                const double s = (j + 0.5) / opt.grid;
                const cx cand = cx{r, 0.0} + s * tau;
                if (lattice_distance(cand, tau) < 0.02) continue;
                const double d = std::abs(wp(cand, inv, opt.kernel) - w);
                if (d < best) {
                    best = d;
                    z = cand;
                }
            }
        }
    }

    cx best_z = z;
    double best_f = std::abs(wp(z, inv, opt.kernel) - w);
    for (int it = 0; it < opt.max_iter; ++it) {
        const cx f = wp(z, inv, opt.kernel) - w;
        const double fa = std::abs(f);
        if (fa < best_f) {
            best_f = fa;
            best_z = z;
        }
        if (fa < target) {
            const auto red = detail::reduce_to_cell(z, tau);
            return TorusPoint::from_complex(red.z0, tau);
        }
        const cx fp = wp_prime(z, tau, opt.kernel);
        if (fp == cx{})
            break;
        cx step = f / fp;
        // keep the iterate off the lattice, where wp blows up
        cx next = z - step;
        int halvings = 0;
        while (lattice_distance(next, tau) < 2.0 * opt.kernel.lattice_eps && halvings < 8) {
            step *= 0.5;
            next = z - step;
            ++halvings;
        }
        z = next;
    }
    throw convergence_error("wp_inverse: Newton did not converge", best_z);
}

} // namespace torus
