#include "torus/green.hpp"

#include <algorithm>
#include <cmath>

#include "torus/families.hpp"

namespace torus {

namespace {

double det4(std::array<std::array<double, 4>, 4> m) {
    // Gaussian elimination with partial pivoting
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return det;
}

cx principal_q_value(int sign, const LatticeInvariants& inv) {
    if (sign != 1 && sign != -1) throw domain_error("hessian_q: sign must be +1 or -1");
    return static_cast<double>(sign) * std::sqrt(inv.g2 / 12.0);
}

} // namespace

std::array<double, 2> green_grad(const TorusPoint& z, const LatticeInvariants& inv,
                                 const KernelOptions& opt) {
    const cx gz = -(zeta_w(z.z, inv, opt) - z.r * inv.eta1 - z.s * inv.eta2) / (4.0 * pi);
    return {2.0 * gz.real(), -2.0 * gz.imag()};
}

std::array<double, 2> green_grad(const TorusPoint& z, const ModuliPoint& tau,
                                 const KernelOptions& opt) {
    return green_grad(z, invariants(tau, opt), opt);
}

std::vector<CriticalPair> trivial_critical_points(const ModuliPoint& tau,
                                                  const CriticalPointOptions& opt) {
    const cx tau_v = tau.value();
    const LatticeInvariants inv = invariants(tau_v, opt.kernel);
    if (std::abs(inv.g2) < 1e-10 * std::max(1.0, std::norm(inv.eta1)))
        throw domain_error(
            "trivial_critical_points: g2 vanishes here; the q pairs degenerate");

    auto pairing_residual = [&](const TorusPoint& a1, const TorusPoint& a2) {
        const TorusPoint d12 = TorusPoint::from_complex(a1.z - a2.z, tau_v);
        const TorusPoint d21 = TorusPoint::from_complex(a2.z - a1.z, tau_v);
        const auto g1 = green_grad(a1, inv, opt.kernel);
        const auto g2 = green_grad(a2, inv, opt.kernel);
        const auto h1 = green_grad(d12, inv, opt.kernel);
        const auto h2 = green_grad(d21, inv, opt.kernel);
        const double r1 = std::hypot(2.0 * g1[0] - h1[0], 2.0 * g1[1] - h1[1]);
        const double r2 = std::hypot(2.0 * g2[0] - h2[0], 2.0 * g2[1] - h2[1]);
        return std::max(r1, r2);
    };

    std::vector<CriticalPair> out;
    const double half_rs[3][2] = {{0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}};
    for (int i = 1; i <= 3; ++i) {
        for (int j = i + 1; j <= 3; ++j) {
            CriticalPair p;
            p.kind = CriticalKind::half_period;
            p.i = i;
            p.j = j;
            p.a1 = TorusPoint::from_rs(half_rs[i - 1][0], half_rs[i - 1][1], tau_v);
            p.a2 = TorusPoint::from_rs(half_rs[j - 1][0], half_rs[j - 1][1], tau_v);
            p.pairing_residual = pairing_residual(p.a1, p.a2);
            if (p.pairing_residual > opt.residual_tol)
                throw precision_error("trivial_critical_points: half-period pair failed the stationarity check");
            out.push_back(p);
        }
    }

    InverseOptions iopt;
    iopt.kernel = opt.kernel;
    for (const int sign : {+1, -1}) {
        const cx target = principal_q_value(sign, inv);
        const TorusPoint raw = wp_inverse(target, tau, {}, iopt);
        // label normalization between q and -q: smallest (s, r) in the cell
        const auto redp = detail::reduce_to_cell(raw.z, tau_v);
        const auto redm = detail::reduce_to_cell(-raw.z, tau_v);
        const TorusPoint zp = TorusPoint::from_complex(redp.z0, tau_v);
        const TorusPoint zm = TorusPoint::from_complex(redm.z0, tau_v);
        const bool take_p = (zp.s < zm.s) || (zp.s == zm.s && zp.r <= zm.r);
        CriticalPair p;
        p.kind = sign > 0 ? CriticalKind::q_plus : CriticalKind::q_minus;
        p.a1 = take_p ? zp : zm;
        p.a2 = TorusPoint::from_complex(-p.a1.z, tau_v);
        p.pairing_residual = pairing_residual(p.a1, p.a2);
        if (p.pairing_residual > opt.residual_tol)
            throw precision_error("trivial_critical_points: q pair failed the stationarity check");
        out.push_back(p);
    }
    return out;
}

HessianEntries hessian_entries(const LatticeInvariants& inv, cx wp_q) {
    HessianEntries h{};
    const cx m1 = -(inv.e1 + inv.eta1);
    const cx m2 = -(inv.e2 + inv.eta1);
    const cx m3 = -(inv.e3 + inv.eta1);
    h.u1 = m1.real();
    h.v1 = m1.imag();
    h.u2 = m2.real();
    h.v2 = m2.imag();
    h.u3 = m3.real();
    h.v3 = m3.imag();
    h.s = inv.eta1.real();
    h.t_img = inv.eta1.imag();
    h.u = wp_q.real();
    h.v = wp_q.imag();
    h.b = inv.tau.im;
    return h;
}

HessianMatrix hessian_half_period(int i, int j, const LatticeInvariants& inv) {
    if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
        throw domain_error("hessian_half_period: need distinct i, j in {1,2,3}");
    const int k = 6 - i - j;
    const HessianEntries h = hessian_entries(inv);
    const double uk = (k == 1 ? h.u1 : k == 2 ? h.u2 : h.u3);
    const double vk = (k == 1 ? h.v1 : k == 2 ? h.v2 : h.v3);
    const double ui = (i == 1 ? h.u1 : i == 2 ? h.u2 : h.u3);
    const double vi = (i == 1 ? h.v1 : i == 2 ? h.v2 : h.v3);
    const double uj = (j == 1 ? h.u1 : j == 2 ? h.u2 : h.u3);
    const double vj = (j == 1 ? h.v1 : j == 2 ? h.v2 : h.v3);
    const double c = 2.0 * pi / h.b;

    HessianMatrix m;
    const double f = 1.0 / (2.0 * pi);
    m.entries = {{{2 * ui - uk, vk - 2 * vi, uk, -vk},
                  {vk - 2 * vi, uk - 2 * ui - c, -vk, -uk - c},
                  {uk, -vk, 2 * uj - uk, vk - 2 * vj},
                  {-vk, -uk - c, vk - 2 * vj, uk - 2 * uj - c}}};
    for (auto& row : m.entries)
        for (double& e : row) e *= f;
    m.det = det4(m.entries);
    return m;
}

HessianMatrix hessian_half_period(int i, int j, const ModuliPoint& tau,
                                  const KernelOptions& opt) {
    return hessian_half_period(i, j, invariants(tau, opt));
}

HessianMatrix hessian_q(int sign, const LatticeInvariants& inv) {
    const cx mu = principal_q_value(sign, inv);
    const HessianEntries h = hessian_entries(inv, mu);
    const double u = h.u, v = h.v, s = h.s, t = h.t_img;
    const double c = 2.0 * pi / h.b;

    HessianMatrix m;
    const double f = 1.0 / (2.0 * pi);
    m.entries = {{{-4 * u - s, 4 * v + t, 2 * u - s, -2 * v + t},
                  {4 * v + t, 4 * u + s - c, -2 * v + t, -2 * u + s - c},
                  {2 * u - s, -2 * v + t, -4 * u - s, 4 * v + t},
                  {-2 * v + t, -2 * u + s - c, 4 * v + t, 4 * u + s - c}}};
    for (auto& row : m.entries)
        for (double& e : row) e *= f;
    m.det = det4(m.entries);
    return m;
}

HessianMatrix hessian_q(int sign, const ModuliPoint& tau, const KernelOptions& opt) {
    return hessian_q(sign, invariants(tau, opt));
}

double det_half_period_closed(int k, const LatticeInvariants& inv) {
    const cx f = f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
    const double b = inv.tau.im;
    const double c4 = 4.0 / std::pow(2.0 * pi, 4);
    return c4 * (std::norm(f) - (6.0 * pi / b) * (std::conj(inv.e(k)) * f).real());
}

double det_half_period_phi_form(int k, const LatticeInvariants& inv) {
    const cx f = f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
    if (f == cx{}) return 0.0;
    const PhiBranch br = k == 1 ? PhiBranch::k1 : (k == 2 ? PhiBranch::k2 : PhiBranch::k3);
    const ExtendedScalar ph = phi(br, inv);
    const double b = inv.tau.im;
    return 4.0 * std::norm(f) / (std::pow(2.0 * pi, 4) * b) * ph.value.imag();
}

double det_half_period_scale(int k, const LatticeInvariants& inv) {
    const cx f = f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
    const double b = inv.tau.im;
    const double c4 = 4.0 / std::pow(2.0 * pi, 4);
    return std::max(c4 * (std::norm(f) + (6.0 * pi / b) * std::abs(inv.e(k)) * std::abs(f)),
                    1e-300);
}

double det_q_closed(int sign, const LatticeInvariants& inv) {
    const cx mu = principal_q_value(sign, inv);
    const cx ph = mu + inv.eta1;
    const double b = inv.tau.im;
    return 9.0 / std::pow(pi, 4) * std::norm(mu) *
           (std::norm(ph) - (2.0 * pi / b) * ph.real());
}

double det_q_phi_form(int sign, const LatticeInvariants& inv) {
    const cx mu = principal_q_value(sign, inv);
    const cx ph = mu + inv.eta1;
    const ExtendedScalar pb = phi(sign > 0 ? PhiBranch::plus : PhiBranch::minus, inv);
    if (pb.is_inf) return 0.0;
    const double b = inv.tau.im;
    return 3.0 * std::abs(inv.g2) / (4.0 * std::pow(pi, 4) * b) * std::norm(ph) *
           pb.value.imag();
}

double det_q_scale(int sign, const LatticeInvariants& inv) {
    const cx mu = principal_q_value(sign, inv);
    const cx ph = mu + inv.eta1;
    const double b = inv.tau.im;
    return std::max(9.0 / std::pow(pi, 4) * std::norm(mu) *
                        (std::norm(ph) + (2.0 * pi / b) * std::abs(ph)),
                    1e-300);
}

} // namespace torus
