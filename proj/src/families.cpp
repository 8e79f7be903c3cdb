#include "torus/families.hpp"

#include <algorithm>
#include <cmath>

namespace torus {

FamilyPair family_pair(const ExtendedScalar& c, const LatticeInvariants& inv) {
    if (c.is_inf) return {inv.eta1, cx{1.0, 0.0}};
    return {c.value * inv.eta1 - inv.eta2, c.value - inv.tau.value()};
}

FamilyPair family_pair_dtau(const ExtendedScalar& c, const LatticeInvariants& inv,
                            const DTauInvariants& dinv) {
    if (c.is_inf) return {dinv.deta1, cx{}};
    // eta2' = eta1 + tau*eta1' from the Legendre relation
    const cx deta2 = inv.eta1 + inv.tau.value() * dinv.deta1;
    return {c.value * dinv.deta1 - deta2, cx{-1.0, 0.0}};
}

cx f_value(FamilyIndex k, const ExtendedScalar& c, const LatticeInvariants& inv) {
    const auto [x, y] = family_pair(c, inv);
    if (k == 0) return 12.0 * x * x - inv.g2 * y * y;
    const cx ek = inv.e(k);
    return 3.0 * ek * x + (inv.g2 / 2.0 - 3.0 * ek * ek) * y;
}

cx f_value(FamilyIndex k, const ExtendedScalar& c, const ModuliPoint& tau,
           const KernelOptions& opt) {
    return f_value(k, c, invariants(tau, opt));
}

cx f_dtau(FamilyIndex k, const ExtendedScalar& c, const LatticeInvariants& inv,
          const DTauInvariants& dinv) {
    const auto [x, y] = family_pair(c, inv);
    const auto [xp, yp] = family_pair_dtau(c, inv, dinv);
    if (k == 0)
        return 24.0 * x * xp - dinv.dg2 * y * y - 2.0 * inv.g2 * y * yp;
    const cx ek = inv.e(k);
    const cx dek = dinv.de(k);
    return 3.0 * dek * x + 3.0 * ek * xp + (dinv.dg2 / 2.0 - 6.0 * ek * dek) * y +
           (inv.g2 / 2.0 - 3.0 * ek * ek) * yp;
}

cx f_dtau(FamilyIndex k, const ExtendedScalar& c, const ModuliPoint& tau,
          const KernelOptions& opt) {
    const LatticeInvariants inv = invariants(tau, opt);
    return f_dtau(k, c, inv, tau_derivatives(inv));
}

cx f_cap(int k, const LatticeInvariants& inv) {
    if (k < 1 || k > 3) throw domain_error("f_cap: k must be in {1,2,3}");
    return inv.eta1 + inv.e(k);
}

cx f_cap(int k, const ModuliPoint& tau, const KernelOptions& opt) {
    return f_cap(k, invariants(tau, opt));
}

namespace {

bool at_branch_point(const LatticeInvariants& inv, const PhiOptions& opt) {
    const double scale = std::max(1.0, std::norm(inv.eta1));
    return std::abs(inv.g2) < opt.branch_point_rel * scale;
}

} // namespace

ExtendedScalar phi(PhiBranch branch, const LatticeInvariants& inv, const PhiOptions& opt) {
    const cx tau = inv.tau.value();
    switch (branch) {
        case PhiBranch::plus:
        case PhiBranch::minus: {
            if (at_branch_point(inv, opt)) {
                // removable-limit convention at the branch points of sqrt(g2)
                return ExtendedScalar(inv.eta2 / inv.eta1);
            }
            const cx root = std::sqrt(inv.g2 / 12.0);
            const cx den = inv.eta1 + (branch == PhiBranch::plus ? root : -root);
            if (den == cx{}) return ExtendedScalar::infinity();
            return ExtendedScalar(tau - cx{0.0, 2.0 * pi} / den);
        }
        case PhiBranch::k1:
        case PhiBranch::k2:
        case PhiBranch::k3: {
            const int k = branch == PhiBranch::k1 ? 1 : (branch == PhiBranch::k2 ? 2 : 3);
            const cx den = f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
            if (den == cx{}) return ExtendedScalar::infinity();
            return ExtendedScalar(tau - cx{0.0, 6.0 * pi} * inv.e(k) / den);
        }
    }
    throw domain_error("phi: invalid branch");
}

ExtendedScalar phi(PhiBranch branch, const ModuliPoint& tau, const KernelOptions& kopt,
                   const PhiOptions& opt) {
    return phi(branch, invariants(tau, kopt), opt);
}

cx phi_dtau(PhiBranch branch, const LatticeInvariants& inv, const DTauInvariants& dinv,
            const PhiOptions& opt) {
    switch (branch) {
        case PhiBranch::plus:
        case PhiBranch::minus: {
            if (at_branch_point(inv, opt))
                throw domain_error("phi_dtau: derivative undefined at a branch point");
            const double sgn = branch == PhiBranch::plus ? 1.0 : -1.0;
            const cx root = sgn * std::sqrt(inv.g2 / 12.0);
            const cx den = inv.eta1 + root;
            if (den == cx{}) throw domain_error("phi_dtau: pole");
            const cx droot = sgn * dinv.dg2 / (24.0 * std::sqrt(inv.g2 / 12.0));
            return 1.0 + cx{0.0, 2.0 * pi} * (dinv.deta1 + droot) / (den * den);
        }
        case PhiBranch::k1:
        case PhiBranch::k2:
        case PhiBranch::k3: {
            const int k = branch == PhiBranch::k1 ? 1 : (branch == PhiBranch::k2 ? 2 : 3);
            const ExtendedScalar inf = ExtendedScalar::infinity();
            const cx f = f_value(FamilyIndex(k), inf, inv);
            if (f == cx{}) throw domain_error("phi_dtau: pole");
            const cx fp = f_dtau(FamilyIndex(k), inf, inv, dinv);
            const cx ek = inv.e(k);
            const cx dek = dinv.de(k);
            return 1.0 - cx{0.0, 6.0 * pi} * (dek * f - ek * fp) / (f * f);
        }
    }
    throw domain_error("phi_dtau: invalid branch");
}

std::vector<ModuliPoint> s_orbit(const Rectangle& region, int height_bound, double dedup_eps) {
    const cx rho = std::polar(1.0, pi / 3.0);
    std::vector<ModuliPoint> pts;
    const long h = height_bound;
    for (long c = -h; c <= h; ++c) {
        for (long d = -h; d <= h; ++d) {
            // |c rho + d|^2 = c^2 + c d + d^2 controls Im of the image;
            // skip rows that cannot reach the region floor.
            const double denom2 = static_cast<double>(c * c + c * d + d * d);
            if (denom2 == 0.0) continue;
            if (rho.imag() / denom2 < region.im_min - 1e-12) continue;
            for (long a = -h; a <= h; ++a) {
                // solve a*d - b*c = 1 for integer b when possible
                if (c == 0) {
                    if (a * d != 1) continue;
                    for (long b = -h; b <= h; ++b) {
                        const cx z = ModularMatrix(a, b, c, d).apply(rho);
                        if (region.contains(z)) pts.emplace_back(z);
                    }
                } else {
                    const long num = a * d - 1;
                    if (num % c != 0) continue;
                    const long b = num / c;
                    if (std::abs(b) > h) continue;
                    const cx z = ModularMatrix(a, b, c, d).apply(rho);
                    if (region.contains(z)) pts.emplace_back(z);
                }
            }
        }
    }
    std::sort(pts.begin(), pts.end(), [](const ModuliPoint& p, const ModuliPoint& q) {
        return p.im != q.im ? p.im < q.im : p.re < q.re;
    });
    std::vector<ModuliPoint> out;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : out)
            if (std::abs(p.value() - q.value()) < dedup_eps) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

std::pair<cx, cx> eta_transform(const ModularMatrix& m, const LatticeInvariants& inv) {
    const cx tau = inv.tau.value();
    const cx fac = static_cast<double>(m.c) * tau + static_cast<double>(m.d);
    const cx eta2p = fac * (static_cast<double>(m.a) * inv.eta2 + static_cast<double>(m.b) * inv.eta1);
    const cx eta1p = fac * (static_cast<double>(m.c) * inv.eta2 + static_cast<double>(m.d) * inv.eta1);
    return {eta2p, eta1p};
}

std::pair<cx, cx> eta_transform(const ModularMatrix& m, const ModuliPoint& tau,
                                const KernelOptions& opt) {
    return eta_transform(m, invariants(tau, opt));
}

Witness companion_witness(FamilyIndex k, const ExtendedScalar& c, const LatticeInvariants& inv) {
    const auto [x, y] = family_pair(c, inv);
    if (k == 0) {
        const cx t1 = -4.0 * x * x * x;
        const cx t2 = -inv.g2 * x * y * y;
        const cx t3 = 2.0 * inv.g3 * y * y * y;
        return {t1 + t2 + t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1.0})};
    }
    const cx ek = inv.e(k);
    const cx t1 = (inv.g2 / 2.0 - 3.0 * ek * ek) * x;
    const cx t2 = (inv.g2 / 4.0) * ek * y;
    return {t1 + t2, std::max({std::abs(t1), std::abs(t2), 1.0})};
}

PairDeterminant pair_determinant(int k, const LatticeInvariants& inv) {
    if (k < 1 || k > 3) throw domain_error("pair_determinant: k must be in {1,2,3}");
    const int i = k == 1 ? 2 : 1;
    const int j = k == 3 ? 2 : 3;
    const cx ek = inv.e(k), ei = inv.e(i), ej = inv.e(j);
    const cx off = inv.g2 / 2.0 - 3.0 * ek * ek;
    PairDeterminant out;
    out.det = 3.0 * ek * (inv.g2 / 4.0) * ek - off * off;
    out.product_form = (ei - ek) * (ej - ek) * (ei - ej) * (ei - ej);
    out.scale = std::max({std::abs(3.0 * ek * (inv.g2 / 4.0) * ek), std::norm(off), 1.0});
    return out;
}

} // namespace torus
