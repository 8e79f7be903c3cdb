#ifndef TORUS_PAINLEVE_HPP
#define TORUS_PAINLEVE_HPP

#include <vector>

#include "torus/cauchy.hpp"
#include "torus/families.hpp"
#include "torus/kernel.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// The sixth Painleve equation enters through its Hamiltonian form at the two
// parameter quadruples (1/8,-1/8,1/8,3/8) ("level 0") and (9/8,-1/8,1/8,3/8)
// ("level 1"). Each level carries four one-parameter solution families that
// satisfy first-order equations; level 1 is reached from level 0 by the
// Okamoto transformation.
// ---------------------------------------------------------------------------

struct PviParams {
    double alpha, beta, gamma, delta;
    double alpha0, alpha1, alpha2, alpha3;

    static PviParams level(int n) {
        if (n != 0 && n != 1) throw domain_error("PviParams: level must be 0 or 1");
        const double a = n == 0 ? 0.125 : 1.125;   // (n + 1/2)^2 / 2
        PviParams p;
        p.alpha = a;
        p.beta = -0.125;
        p.gamma = 0.125;
        p.delta = 0.375;
        p.alpha0 = p.alpha;
        p.alpha1 = -p.beta;
        p.alpha2 = p.gamma;
        p.alpha3 = 0.5 - p.delta;
        return p;
    }
};

struct RiccatiFamily {
    FamilyIndex k;
    ExtendedScalar c;
    int level = 0;   // 0 or 1
};

struct HamiltonianState {
    cx lambda{};
    cx mu{};
    cx t{};
    bool mu_singular = false;   // mu not derivable (lambda in {0,1,t})
};

// ---------------------------------------------------------------------------
// The covering map to the t-chart.
// ---------------------------------------------------------------------------

/// t = (e3 - e1)/(e2 - e1); never 0 or 1 on the upper half plane.
cx t_of_tau(const LatticeInvariants& inv);
cx t_of_tau(const ModuliPoint& tau, const KernelOptions& opt = {});

/// dt/dtau by the quotient rule from the closed-form e_k derivatives;
/// nonzero everywhere (checked numerically).
cx dt_dtau(const LatticeInvariants& inv, const DTauInvariants& dinv);
cx dt_dtau(const ModuliPoint& tau, const KernelOptions& opt = {});

// ---------------------------------------------------------------------------
// Closed-form solution values.
// ---------------------------------------------------------------------------

/// The pole-value formula for the family member: the rational expression in
/// (x, y, e_k, g2, g3) whose denominator is exactly the family function, so
/// the result is infinity precisely at its zeros.
ExtendedScalar wp_p_formula(int level, FamilyIndex k, const ExtendedScalar& c,
                            const LatticeInvariants& inv);

/// Moebius chart map w -> (w - e1)/(e2 - e1) applied to wp_p_formula.
ExtendedScalar lambda_of(int level, FamilyIndex k, const ExtendedScalar& c,
                         const LatticeInvariants& inv);

/// Level-0 state (lambda-tilde, mu-tilde) of the k-th family.
HamiltonianState level0_state(FamilyIndex k, const ExtendedScalar& c,
                              const LatticeInvariants& inv);

/// Okamoto map from a level-0 state to the level-1 state over the same t.
/// Throws domain_error when the input is singular for the transformation.
HamiltonianState okamoto_forward(const HamiltonianState& state);

/// K_n Hamiltonian value.
cx hamiltonian_K(int n, const HamiltonianState& s);

/// dK/dmu, the right side of Hamilton's first equation.
cx hamiltonian_dK_dmu(const HamiltonianState& s);

/// mu recovered from lambda' via the first Hamilton equation (level 1).
/// Marks the state singular instead of dividing by zero.
HamiltonianState state_from_lambda_prime(cx lambda, cx lambda_prime, cx t);

/// The cubic first-order relation satisfied by the level-1 k=0 family,
/// evaluated term-wise; `scale` is the largest monomial magnitude.
struct P0Eval {
    cx value;
    double scale;
};
P0Eval p0_relation(cx y, cx x, cx t);

// ---------------------------------------------------------------------------
// Residual certification along tau-paths.
// ---------------------------------------------------------------------------

struct RiccatiOptions {
    KernelOptions kernel{};
    CauchyOptions cauchy{0.01, 64};
    double pole_rel = 1e-6;       // relative denominator size that skips a point
    double pole_radius = 0.025;   // estimated zero distance that skips a point
};

struct RiccatiReport {
    std::vector<ModuliPoint> path;
    double max_residual = 0.0;     // sup over kept points of |residual| / scale
    double residual_scale = 0.0;   // scale at the worst point
    RiccatiFamily family{FamilyIndex(0), ExtendedScalar::infinity(), 0};
    std::vector<int> skipped;      // path indices excised near poles
};

/// Evaluate the first-order equation of the family along the path, with
/// d lambda/dt = (d lambda/d tau)/(dt/d tau) and the tau-derivative taken by
/// contour differentiation. Points too close to a pole of lambda are skipped
/// and reported. Throws if every point was skipped.
RiccatiReport riccati_residual(int level, FamilyIndex k, const ExtendedScalar& c,
                               const std::vector<ModuliPoint>& path,
                               const RiccatiOptions& opt = {});

/// Full second-order residual of PVI(params) for the family member along the
/// path (both derivatives by contour differentiation). Used with the loose
/// tolerance that second derivatives allow.
RiccatiReport pvi_residual(int level, FamilyIndex k, const ExtendedScalar& c,
                           const std::vector<ModuliPoint>& path,
                           const RiccatiOptions& opt = {});

/// Straight tau-path with n points from a to b (inclusive).
std::vector<ModuliPoint> straight_path(cx a, cx b, int n);

} // namespace torus

#endif
