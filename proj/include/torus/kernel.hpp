#ifndef TORUS_KERNEL_HPP
#define TORUS_KERNEL_HPP

#include <optional>

#include "torus/theta.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// Lattice data at one tau: half-period values e_k, cubic coefficients g2, g3,
// and the quasi-periods eta1, eta2 of the zeta function. This bundle is the
// shared vocabulary of every formula downstream; compute it once per tau.
// ---------------------------------------------------------------------------

struct LatticeInvariants {
    cx e1{}, e2{}, e3{};
    cx g2{}, g3{};
    cx eta1{}, eta2{};
    ModuliPoint tau;

    cx e(int k) const { return k == 1 ? e1 : (k == 2 ? e2 : e3); }
};

/// Analytic tau-derivatives of the invariants (closed forms, no differencing).
struct DTauInvariants {
    cx deta1{};
    cx de1{}, de2{}, de3{};
    cx dg2{}, dg3{};
    ModuliPoint tau;

    cx de(int k) const { return k == 1 ? de1 : (k == 2 ? de2 : de3); }
};

struct KernelOptions {
    ThetaOptions theta{};
    double lattice_eps = default_lattice_eps;   // domain guard around lattice points
    double consistency_tol = 1e-9;              // internal series sanity checks
};

/// eta1 from theta derivatives at 0, eta2 via the Legendre relation,
/// e_k at the half periods, g2/g3 from the symmetric functions.
LatticeInvariants invariants(cx tau, const KernelOptions& opt = {});
LatticeInvariants invariants(const ModuliPoint& tau, const KernelOptions& opt = {});

/// Closed-form tau-derivatives assembled from the invariants.
DTauInvariants tau_derivatives(const LatticeInvariants& inv);
DTauInvariants tau_derivatives(cx tau, const KernelOptions& opt = {});

// ---------------------------------------------------------------------------
// Weierstrass functions via logarithmic derivatives of theta1. The argument
// is reduced into the fundamental cell before the series is summed; zeta is
// corrected by the quasi-periods afterwards.
// ---------------------------------------------------------------------------

cx wp(cx z, const LatticeInvariants& inv, const KernelOptions& opt = {});
cx wp_prime(cx z, cx tau, const KernelOptions& opt = {});
cx wp_pp(cx z, cx tau, const KernelOptions& opt = {});
cx zeta_w(cx z, const LatticeInvariants& inv, const KernelOptions& opt = {});

cx wp(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt = {});
cx wp_prime(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt = {});
cx wp_pp(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt = {});
cx zeta_w(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt = {});

/// d wp(z|tau)/d tau at fixed complex z (not fixed lattice coordinates).
cx wp_dtau(cx z, const LatticeInvariants& inv, const KernelOptions& opt = {});
cx wp_dtau(const TorusPoint& z, const ModuliPoint& tau, const KernelOptions& opt = {});

struct InverseOptions {
    KernelOptions kernel{};
    int max_iter = 60;
    double tol = 1e-10;       // |wp(z) - w| < tol * max(1, |w|)
    int grid = 24;            // coarse seed grid per axis
};

/// Solve wp(z) = w for z in the fundamental cell (Newton, grid-seeded).
/// Throws convergence_error with the best candidate attached on failure.
TorusPoint wp_inverse(cx w, const ModuliPoint& tau, std::optional<cx> seed = {},
                      const InverseOptions& opt = {});

namespace detail {
/// Reduce z modulo the lattice into the cell {r + s tau : r,s in [0,1)}.
/// Returns the reduced point and the integer shifts taken out.
struct Reduced {
    cx z0;
    double m, n;
};
Reduced reduce_to_cell(cx z, cx tau);
} // namespace detail

} // namespace torus

#endif
