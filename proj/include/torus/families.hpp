#ifndef TORUS_FAMILIES_HPP
#define TORUS_FAMILIES_HPP

#include <vector>

#include "torus/kernel.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// The two-parameter families built from the invariants. Family index 0 is
// the quadratic family; k in {1,2,3} attaches to the half period omega_k/2
// (omega_1 = 1, omega_2 = tau, omega_3 = 1 + tau). The second parameter c
// ranges over C union {infinity}, where the infinite member has its own
// formula obtained by the substitution (x, y) -> (eta1, 1).
// ---------------------------------------------------------------------------

struct FamilyIndex {
    int k = 0;
    FamilyIndex(int k_) : k(k_) {
        if (k < 0 || k > 3) throw domain_error("FamilyIndex: k must be in {0,1,2,3}");
    }
    operator int() const { return k; }
};

enum class PhiBranch { plus, minus, k1, k2, k3 };

struct ModularMatrix {
    long a, b, c, d;
    ModularMatrix(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1) throw domain_error("ModularMatrix: determinant must be 1");
    }
    cx apply(cx tau) const {
        return (static_cast<double>(a) * tau + static_cast<double>(b)) /
               (static_cast<double>(c) * tau + static_cast<double>(d));
    }
};

/// The linear pair (x, y) every family formula is written in:
/// x = c*eta1 - eta2, y = c - tau for finite c; (eta1, 1) for c = infinity.
/// By the Legendre relation x = eta1*y + 2*pi*i, so x and y never vanish
/// together -- the witness behind the pole-side checks.
struct FamilyPair {
    cx x, y;
};

FamilyPair family_pair(const ExtendedScalar& c, const LatticeInvariants& inv);

/// Derivative of the pair in tau (dy/dtau = -1 for finite c, 0 at infinity).
FamilyPair family_pair_dtau(const ExtendedScalar& c, const LatticeInvariants& inv,
                            const DTauInvariants& dinv);

cx f_value(FamilyIndex k, const ExtendedScalar& c, const LatticeInvariants& inv);
cx f_value(FamilyIndex k, const ExtendedScalar& c, const ModuliPoint& tau,
           const KernelOptions& opt = {});

/// Analytic d/dtau of f_value, assembled from the closed-form derivatives.
cx f_dtau(FamilyIndex k, const ExtendedScalar& c, const LatticeInvariants& inv,
          const DTauInvariants& dinv);
cx f_dtau(FamilyIndex k, const ExtendedScalar& c, const ModuliPoint& tau,
          const KernelOptions& opt = {});

/// F_k = eta1 + e_k, the half-period curvature values.
cx f_cap(int k, const LatticeInvariants& inv);
cx f_cap(int k, const ModuliPoint& tau, const KernelOptions& opt = {});

struct PhiOptions {
    /// |g2| below this (times max(1,|eta1|^2)) is treated as a branch point,
    /// where both signed branches take the removable-limit value eta2/eta1.
    double branch_point_rel = 1e-9;
};

/// The phi maps: tau - 2*pi*i/(eta1 +- sqrt(g2/12)) for the signed branches
/// (principal square root), tau - 6*pi*i*e_k/f_{k,inf} for the indexed ones.
/// Poles are returned as infinity, never thrown.
ExtendedScalar phi(PhiBranch branch, const LatticeInvariants& inv, const PhiOptions& opt = {});
ExtendedScalar phi(PhiBranch branch, const ModuliPoint& tau, const KernelOptions& kopt = {},
                   const PhiOptions& opt = {});

/// d phi/d tau for the same branch (finite case only; throws domain_error at
/// a pole or branch point).
cx phi_dtau(PhiBranch branch, const LatticeInvariants& inv, const DTauInvariants& dinv,
            const PhiOptions& opt = {});

/// All images (a*rho + b)/(c*rho + d) of rho = e^{i pi/3} inside the region,
/// enumerated over matrices with entries bounded by height_bound and
/// deduplicated. This set is exactly the vanishing locus of g2.
std::vector<ModuliPoint> s_orbit(const Rectangle& region, int height_bound = 10,
                                 double dedup_eps = 1e-10);

/// Predicted quasi-period pair (eta2, eta1) at m(tau) from the values at tau:
/// (eta2', eta1')^T = (c tau + d) * m * (eta2, eta1)^T.
std::pair<cx, cx> eta_transform(const ModularMatrix& m, const LatticeInvariants& inv);
std::pair<cx, cx> eta_transform(const ModularMatrix& m, const ModuliPoint& tau,
                                const KernelOptions& opt = {});

// ---------------------------------------------------------------------------
// Non-vanishing witnesses: when a family member vanishes, the companion
// expression (the numerator of the matching pole-value formula) must stay
// away from zero. Returned as (value, scale) so callers can test relatively.
// ---------------------------------------------------------------------------

struct Witness {
    cx value;
    double scale;
};

/// k = 0: -4x^3 - g2*x*y^2 + 2*g3*y^3; k >= 1: (g2/2 - 3 e_k^2)x + (g2/4) e_k y.
Witness companion_witness(FamilyIndex k, const ExtendedScalar& c, const LatticeInvariants& inv);

/// det [[3 e_k, g2/2 - 3 e_k^2], [g2/2 - 3 e_k^2, (g2/4) e_k]] and the product
/// form (e_i - e_k)(e_j - e_k)(e_i - e_j)^2 it must equal.
struct PairDeterminant {
    cx det;
    cx product_form;
    double scale;
};
PairDeterminant pair_determinant(int k, const LatticeInvariants& inv);

} // namespace torus

#endif
