#ifndef TORUS_GREEN_HPP
#define TORUS_GREEN_HPP

#include <array>
#include <vector>

#include "torus/kernel.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// Gradient of the torus Green function and the Hessian data of the paired
// Green function at its five symmetric critical points. The Green function
// value itself is never computed; its gradient has the closed zeta form and
// the Hessians have explicit 4x4 matrices.
// ---------------------------------------------------------------------------

/// (d/dx, d/dy) of G at z: from -4 pi G_z = zeta(z) - r eta1 - s eta2
/// with z = r + s tau. Domain error near lattice points.
std::array<double, 2> green_grad(const TorusPoint& z, const LatticeInvariants& inv,
                                 const KernelOptions& opt = {});
std::array<double, 2> green_grad(const TorusPoint& z, const ModuliPoint& tau,
                                 const KernelOptions& opt = {});

enum class CriticalKind { half_period, q_plus, q_minus };

struct CriticalPair {
    TorusPoint a1, a2;
    CriticalKind kind = CriticalKind::half_period;
    int i = 0, j = 0;            // half-period indices when kind == half_period
    double pairing_residual = 0; // residual of 2 grad G(a1) = grad G(a1 - a2)
};

struct CriticalPointOptions {
    KernelOptions kernel{};
    double residual_tol = 1e-9;
};

/// The five symmetric critical points: three half-period pairs and the two
/// (q, -q) pairs with wp(q) = +-sqrt(g2/12). Each pair carries a verified
/// stationarity residual. Requires g2 != 0 (the q pairs degenerate on the
/// vanishing locus of g2).
std::vector<CriticalPair> trivial_critical_points(const ModuliPoint& tau,
                                                  const CriticalPointOptions& opt = {});

// ---------------------------------------------------------------------------
// Hessian matrices.
// ---------------------------------------------------------------------------

/// The real quantities the displayed 4x4 matrices are written in.
struct HessianEntries {
    double u1, v1, u2, v2, u3, v3;   // -(e_k + eta1) = u_k + i v_k
    double s, t_img;                 // eta1 = s + i t
    double u, v;                     // wp(q) = u + i v (q pairs only)
    double b;                        // Im tau
};

HessianEntries hessian_entries(const LatticeInvariants& inv, cx wp_q = cx{});

struct HessianMatrix {
    std::array<std::array<double, 4>, 4> entries{};
    double det = 0.0;
};

/// Hessian of the paired Green function at (omega_i/2, omega_j/2), i != j.
HessianMatrix hessian_half_period(int i, int j, const LatticeInvariants& inv);
HessianMatrix hessian_half_period(int i, int j, const ModuliPoint& tau,
                                  const KernelOptions& opt = {});

/// Hessian at the (q, -q) pair with wp(q) = sign * sqrt(g2/12).
HessianMatrix hessian_q(int sign, const LatticeInvariants& inv);
HessianMatrix hessian_q(int sign, const ModuliPoint& tau, const KernelOptions& opt = {});

// Closed determinant forms the 4x4 determinants must reproduce. The `closed`
// versions are the symmetric-function expressions; the `phi_form` versions
// factor through Im phi.
double det_half_period_closed(int k, const LatticeInvariants& inv);
double det_half_period_phi_form(int k, const LatticeInvariants& inv);
double det_q_closed(int sign, const LatticeInvariants& inv);
double det_q_phi_form(int sign, const LatticeInvariants& inv);

/// Scale for relative comparisons of the q-pair determinant forms.
double det_q_scale(int sign, const LatticeInvariants& inv);
double det_half_period_scale(int k, const LatticeInvariants& inv);

} // namespace torus

#endif
