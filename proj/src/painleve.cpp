#include "torus/painleve.hpp"

#include <algorithm>
#include <cmath>

namespace torus {

cx t_of_tau(const LatticeInvariants& inv) {
    const cx t = (inv.e3 - inv.e1) / (inv.e2 - inv.e1);
    const double eps = 1e-12 * std::max(1.0, std::abs(t));
    if (std::abs(t) < eps || std::abs(t - 1.0) < eps)
        throw precision_error("t_of_tau: t collided with a singular value");
    return t;
}

cx t_of_tau(const ModuliPoint& tau, const KernelOptions& opt) {
    return t_of_tau(invariants(tau, opt));
}

cx dt_dtau(const LatticeInvariants& inv, const DTauInvariants& dinv) {
    const cx den = inv.e2 - inv.e1;
    const cx num = inv.e3 - inv.e1;
    const cx d = ((dinv.de3 - dinv.de1) * den - num * (dinv.de2 - dinv.de1)) / (den * den);
    if (std::abs(d) <= 1e-10 * std::max(1.0, std::abs(num / den)))
        throw precision_error("dt_dtau: derivative unexpectedly vanished");
    return d;
}

cx dt_dtau(const ModuliPoint& tau, const KernelOptions& opt) {
    const LatticeInvariants inv = invariants(tau, opt);
    return dt_dtau(inv, tau_derivatives(inv));
}

ExtendedScalar wp_p_formula(int level, FamilyIndex k, const ExtendedScalar& c,
                            const LatticeInvariants& inv) {
    const auto [x, y] = family_pair(c, inv);
    const cx g2 = inv.g2, g3 = inv.g3;
    cx num, den;
    if (level == 0) {
        if (k == 0) {
            num = -x;
            den = y;
        } else {
            const cx ek = inv.e(k);
            num = ek * x + (g2 / 4.0 - 2.0 * ek * ek) * y;
            den = x + ek * y;
        }
    } else if (level == 1) {
        if (k == 0) {
            num = -4.0 * x * x * x - g2 * x * y * y + 2.0 * g3 * y * y * y;
            den = y * (12.0 * x * x - g2 * y * y);
        } else {
            const cx ek = inv.e(k);
            num = (g2 / 2.0 - 3.0 * ek * ek) * x + (g2 / 4.0) * ek * y;
            den = 3.0 * ek * x + (g2 / 2.0 - 3.0 * ek * ek) * y;
        }
    } else {
        throw domain_error("wp_p_formula: level must be 0 or 1");
    }
    if (den == cx{}) return ExtendedScalar::infinity();
    return ExtendedScalar(num / den);
}

ExtendedScalar lambda_of(int level, FamilyIndex k, const ExtendedScalar& c,
                         const LatticeInvariants& inv) {
    const ExtendedScalar w = wp_p_formula(level, k, c, inv);
    if (w.is_inf) return w;
    return ExtendedScalar((w.value - inv.e1) / (inv.e2 - inv.e1));
}

HamiltonianState level0_state(FamilyIndex k, const ExtendedScalar& c,
                              const LatticeInvariants& inv) {
    const ExtendedScalar lam = lambda_of(0, k, c, inv);
    if (lam.is_inf)
        throw domain_error("level0_state: the family member has a pole at this tau");
    HamiltonianState s;
    s.lambda = lam.value;
    s.t = t_of_tau(inv);
    switch (static_cast<int>(k)) {
        case 0: s.mu = cx{}; break;
        case 1: s.mu = 1.0 / (2.0 * s.lambda); break;
        case 2: s.mu = 1.0 / (2.0 * (s.lambda - 1.0)); break;
        case 3: s.mu = 1.0 / (2.0 * (s.lambda - s.t)); break;
    }
    return s;
}

HamiltonianState okamoto_forward(const HamiltonianState& s) {
    const cx l = s.lambda, t = s.t;
    if (l == cx{} || l == cx{1.0, 0.0} || l == t)
        throw domain_error("okamoto_forward: lambda at a singular value");
    const cx mu = s.mu - 0.5 * (1.0 / l + 1.0 / (l - 1.0) + 1.0 / (l - t));
    if (mu == cx{})
        throw domain_error("okamoto_forward: transformed mu vanished");
    HamiltonianState out;
    out.mu = mu;
    out.lambda = l + 1.0 / mu;
    out.t = t;
    return out;
}

cx hamiltonian_K(int n, const HamiltonianState& s) {
    if (n != 0 && n != 1) throw domain_error("hamiltonian_K: n must be 0 or 1");
    const cx l = s.lambda, mu = s.mu, t = s.t;
    if (t == cx{} || t == cx{1.0, 0.0})
        throw domain_error("hamiltonian_K: t at a singular value");
    const cx quad = l * (l - 1.0) * (l - t) * mu * mu;
    const cx lin = -0.5 * (l * l - 2.0 * t * l + t) * mu;
    const cx pot = -(n * (n + 1) / 4.0) * (l - t);
    return (quad + lin + pot) / (t * (t - 1.0));
}

cx hamiltonian_dK_dmu(const HamiltonianState& s) {
    const cx l = s.lambda, mu = s.mu, t = s.t;
    return (2.0 * l * (l - 1.0) * (l - t) * mu - 0.5 * (l * l - 2.0 * t * l + t)) /
           (t * (t - 1.0));
}

HamiltonianState state_from_lambda_prime(cx lambda, cx lambda_prime, cx t) {
    HamiltonianState s;
    s.lambda = lambda;
    s.t = t;
    const cx den = 2.0 * lambda * (lambda - 1.0) * (lambda - t);
    const double near = 1e-12 * std::max(1.0, std::abs(lambda));
    if (std::abs(lambda) < near || std::abs(lambda - 1.0) < near || std::abs(lambda - t) < near) {
        s.mu_singular = true;
        return s;
    }
    s.mu = (t * (t - 1.0) * lambda_prime + 0.5 * (lambda * lambda - 2.0 * t * lambda + t)) / den;
    return s;
}

P0Eval p0_relation(cx y, cx x, cx t) {
    const cx t2 = t * t, t3 = t2 * t;
    const cx tm1 = t - 1.0;
    const cx x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x;
    const cx terms[7] = {
        8.0 * t3 * tm1 * tm1 * tm1 * y * y * y,
        -4.0 * t2 * tm1 * tm1 * (3.0 * x2 + 2.0 * (t - 2.0) * x - t) * y * y,
        -2.0 * t * tm1 * (x2 - 2.0 * t * x + t) * (9.0 * x2 - 2.0 * (t + 4.0) * x + t) * y,
        27.0 * x6 - 6.0 * (7.0 * t + 10.0) * x5,
        (4.0 * t2 + 101.0 * t + 32.0) * x4,
        4.0 * t * (2.0 * t2 - 5.0 * t - 14.0) * x3,
        -3.0 * t2 * (4.0 * t - 3.0) * x2 + 2.0 * t2 * (3.0 * t + 2.0) * x - t3,
    };
    P0Eval out{cx{}, 1.0};
    for (const cx& term : terms) {
        out.value += term;
        out.scale = std::max(out.scale, std::abs(term));
    }
    return out;
}

std::vector<ModuliPoint> straight_path(cx a, cx b, int n) {
    std::vector<ModuliPoint> path;
    path.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        path.emplace_back(a + (b - a) * f);
    }
    return path;
}

namespace {

// Denominator of the family member at the given level: the expression whose
// zeros are the poles of lambda. Returns value and tau-derivative.
void pole_denominator(int level, FamilyIndex k, const ExtendedScalar& c,
                      const LatticeInvariants& inv, const DTauInvariants& dinv, cx& den,
                      cx& dden, double& scale) {
    const auto [x, y] = family_pair(c, inv);
    const auto [xp, yp] = family_pair_dtau(c, inv, dinv);
    if (level == 0) {
        if (k == 0) {
            den = y;
            dden = yp;
            scale = std::max(1.0, std::abs(inv.tau.value()));
        } else {
            den = x + inv.e(k) * y;
            dden = xp + dinv.de(k) * y + inv.e(k) * yp;
            scale = std::max({1.0, std::abs(x), std::abs(inv.e(k) * y)});
        }
    } else {
        den = f_value(k, c, inv);
        dden = f_dtau(k, c, inv, dinv);
        if (k == 0)
            scale = std::max({1.0, 12.0 * std::norm(x), std::abs(inv.g2) * std::norm(y)});
        else
            scale = std::max({1.0, std::abs(3.0 * inv.e(k) * x),
                              std::abs((inv.g2 / 2.0 - 3.0 * inv.e(k) * inv.e(k)) * y)});
    }
}

// Quadratic right side Q(lambda, t) of the first-order equation, in the
// cleared form 2 t (t-1) lambda' = Q.
cx quadratic_rhs(int level, int k, cx l, cx t) {
    if (level == 0) {
        switch (k) {
            case 0: return -(l * l - 2.0 * t * l + t);
            case 1: return l * l - 2.0 * l + t;
            case 2: return l * l - t;
            case 3: return l * l + 2.0 * (t - 1.0) * l - t;
        }
    } else {
        switch (k) {
            case 1: return 3.0 * l * l - 2.0 * l - t;
            case 2: return 3.0 * l * l - 4.0 * l + t;
            case 3: return 3.0 * l * l - 2.0 * (t + 1.0) * l + t;
        }
    }
    throw domain_error("quadratic_rhs: invalid (level, k)");
}

struct PathPointDerivs {
    cx lambda, l1, l2;   // value and first/second tau-derivatives
    cx t, t1, t2;
    bool skipped = false;
};

PathPointDerivs path_point(int level, FamilyIndex k, const ExtendedScalar& c, cx tau,
                           bool second_order, const RiccatiOptions& opt) {
    PathPointDerivs out;
    const LatticeInvariants inv = invariants(tau, opt.kernel);
    const DTauInvariants dinv = tau_derivatives(inv);

    cx den, dden;
    double dscale;
    pole_denominator(level, k, c, inv, dinv, den, dden, dscale);
    if (std::abs(den) < opt.pole_rel * dscale ||
        (dden != cx{} && std::abs(den / dden) < opt.pole_radius)) {
        out.skipped = true;
        return out;
    }

    const ExtendedScalar lam = lambda_of(level, k, c, inv);
    if (lam.is_inf) {
        out.skipped = true;
        return out;
    }
    out.lambda = lam.value;
    out.t = t_of_tau(inv);

    auto lam_at = [&](cx s) {
        const ExtendedScalar v = lambda_of(level, k, c, invariants(s, opt.kernel));
        if (v.is_inf)
            throw domain_error("riccati_residual: pole inside the differentiation contour");
        return v.value;
    };
    if (second_order) {
        cauchy_derivative2(lam_at, tau, out.l1, out.l2, opt.cauchy);
        auto t_at = [&](cx s) { return t_of_tau(invariants(s, opt.kernel)); };
        cauchy_derivative2(t_at, tau, out.t1, out.t2, opt.cauchy);
    } else {
        out.l1 = cauchy_derivative(lam_at, tau, opt.cauchy);
        out.t1 = dt_dtau(inv, dinv);
    }
    return out;
}

} // namespace

RiccatiReport riccati_residual(int level, FamilyIndex k, const ExtendedScalar& c,
                               const std::vector<ModuliPoint>& path, const RiccatiOptions& opt) {
    if (level != 0 && level != 1) throw domain_error("riccati_residual: level must be 0 or 1");
    RiccatiReport report;
    report.path = path;
    report.family = RiccatiFamily{k, c, level};
    report.residual_scale = 1.0;

    int kept = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const cx tau = path[i].value();
        const PathPointDerivs p = path_point(level, k, c, tau, /*second_order=*/false, opt);
        if (p.skipped) {
            report.skipped.push_back(static_cast<int>(i));
            continue;
        }
        ++kept;
        const cx lp = p.l1 / p.t1;   // d lambda / dt
        double rel, scale;
        if (level == 1 && k == 0) {
            const P0Eval p0 = p0_relation(lp, p.lambda, p.t);
            scale = p0.scale;
            rel = std::abs(p0.value) / scale;
        } else {
            const cx lhs = 2.0 * p.t * (p.t - 1.0) * lp;
            const cx rhs = quadratic_rhs(level, static_cast<int>(k), p.lambda, p.t);
            scale = std::max({1.0, std::norm(p.lambda), std::abs(lp) * std::abs(p.t * (p.t - 1.0))});
            rel = std::abs(lhs - rhs) / scale;
        }
        if (rel > report.max_residual) {
            report.max_residual = rel;
            report.residual_scale = scale;
        }
    }
    if (kept == 0)
        throw domain_error("riccati_residual: every path point was excised near a pole");
    return report;
}

RiccatiReport pvi_residual(int level, FamilyIndex k, const ExtendedScalar& c,
                           const std::vector<ModuliPoint>& path, const RiccatiOptions& opt) {
    const PviParams prm = PviParams::level(level);
    RiccatiReport report;
    report.path = path;
    report.family = RiccatiFamily{k, c, level};
    report.residual_scale = 1.0;

    int kept = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const cx tau = path[i].value();
        const PathPointDerivs p = path_point(level, k, c, tau, /*second_order=*/true, opt);
        if (p.skipped) {
            report.skipped.push_back(static_cast<int>(i));
            continue;
        }
        ++kept;
        const cx l = p.lambda, t = p.t;
        const cx lp = p.l1 / p.t1;
        const cx lpp = (p.l2 * p.t1 - p.l1 * p.t2) / (p.t1 * p.t1 * p.t1);

        const cx T1 = 0.5 * (1.0 / l + 1.0 / (l - 1.0) + 1.0 / (l - t)) * lp * lp;
        const cx T2 = (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (l - t)) * lp;
        const cx bracket = prm.alpha + prm.beta * t / (l * l) +
                           prm.gamma * (t - 1.0) / ((l - 1.0) * (l - 1.0)) +
                           prm.delta * t * (t - 1.0) / ((l - t) * (l - t));
        const cx T3 = l * (l - 1.0) * (l - t) / (t * t * (t - 1.0) * (t - 1.0)) * bracket;

        const double scale =
            std::max({1.0, std::abs(lpp), std::abs(T1), std::abs(T2), std::abs(T3)});
        const double rel = std::abs(lpp - T1 + T2 - T3) / scale;
        if (rel > report.max_residual) {
            report.max_residual = rel;
            report.residual_scale = scale;
        }
    }
    if (kept == 0)
        throw domain_error("pvi_residual: every path point was excised near a pole");
    return report;
}

} // namespace torus
