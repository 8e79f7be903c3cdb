#include "torus/verify.hpp"

#include <algorithm>
#include <cmath>

#include "torus/cauchy.hpp"
#include "torus/families.hpp"
#include "torus/green.hpp"
#include "torus/painleve.hpp"
#include "torus/parallel.hpp"
#include "torus/rng.hpp"
#include "torus/theta.hpp"

namespace torus {

namespace {

// Parallel map over precomputed samples; the reduction to the maximum happens
// serially afterwards, so results do not depend on the thread count.
template <typename Sample, typename Fn>
std::vector<double> map_samples(const std::vector<Sample>& samples, bool parallel, Fn&& fn) {
    std::vector<double> out(samples.size(), 0.0);
    auto body = [&](std::ptrdiff_t i) { out[static_cast<std::size_t>(i)] = fn(samples[i]); };
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    if (parallel)
        parallel_for(n, body);
    else
        serial_for(n, body);
    return out;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

cx raw_log_d1(cx z, cx tau, const ThetaOptions& opt) {
    const ThetaEval t = theta1(z, tau, opt);
    return t.d1 / t.value;
}

struct TauSample {
    cx tau;
    double zr, zs;   // cell coordinates of the test point
    cx c;            // family parameter
};

std::vector<TauSample> draw_tau_samples(Rng& rng, int n, double im_lo, double im_hi) {
    std::vector<TauSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        TauSample s;
        s.tau = rng.uniform_complex(-1.0, 1.0, im_lo, im_hi);
        s.zr = rng.uniform(0.08, 0.92);
        s.zs = rng.uniform(0.08, 0.92);
        s.c = rng.uniform_complex(-2.0, 2.0, -2.0, 2.0);
        out.push_back(s);
    }
    return out;
}

} // namespace

SuiteResult suite_identities(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "identities";
    Rng rng(cfg.seed);
    const auto samples = draw_tau_samples(rng, cfg.identity_samples, 0.1, 5.0);
    const auto& kopt = cfg.kernel;

    // Legendre with eta2 taken from the independent route 2 zeta(tau/2).
    auto legendre = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const cx eta2_direct = s.tau * inv.eta1 + 2.0 * raw_log_d1(0.5 * s.tau, s.tau, kopt.theta);
        const cx r = s.tau * inv.eta1 - eta2_direct - cx{0.0, 2.0 * pi};
        return std::abs(r) / std::max(1.0, std::abs(eta2_direct));
    });
    res.add({"legendre-relation", cfg.identity_samples, max_of(legendre), cfg.tol_legendre, false});

    auto esum = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const double scale =
            std::max({1.0, std::abs(inv.e1), std::abs(inv.e2), std::abs(inv.e3)});
        return std::abs(inv.e1 + inv.e2 + inv.e3) / scale;
    });
    res.add({"half-period-sum", cfg.identity_samples, max_of(esum), cfg.tol_identity, false});

    auto de = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const cx z = cx{s.zr, 0.0} + s.zs * s.tau;
        const cx p = wp(z, inv, kopt);
        const cx pp = wp_prime(z, s.tau, kopt);
        const cx lhs = pp * pp;
        const cx rhs = 4.0 * p * p * p - inv.g2 * p - inv.g3;
        const double scale = std::max({1.0, std::abs(lhs), std::abs(4.0 * p * p * p),
                                       std::abs(inv.g2 * p), std::abs(inv.g3)});
        return std::abs(lhs - rhs) / scale;
    });
    res.add({"wp-differential-equation", cfg.identity_samples, max_of(de), cfg.tol_identity, false});

    auto de2 = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const cx z = cx{s.zr, 0.0} + s.zs * s.tau;
        const cx p = wp(z, inv, kopt);
        const cx lhs = wp_pp(z, s.tau, kopt);
        const cx rhs = 6.0 * p * p - inv.g2 / 2.0;
        const double scale = std::max({1.0, std::abs(lhs), std::abs(6.0 * p * p)});
        return std::abs(lhs - rhs) / scale;
    });
    res.add({"wp-second-derivative", cfg.identity_samples, max_of(de2), cfg.tol_identity, false});

    // Quasi-periodicity through the raw series (no argument reduction).
    auto quasi = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const cx z = cx{s.zr, 0.0} + s.zs * s.tau;
        auto zeta_raw = [&](cx w) { return inv.eta1 * w + raw_log_d1(w, s.tau, kopt.theta); };
        const cx r1 = zeta_raw(z + 1.0) - zeta_raw(z) - inv.eta1;
        const cx r2 = zeta_raw(z + s.tau) - zeta_raw(z) - inv.eta2;
        const double scale = std::max({1.0, std::abs(inv.eta1), std::abs(inv.eta2)});
        return std::max(std::abs(r1), std::abs(r2)) / scale;
    });
    res.add({"zeta-quasi-periods", cfg.identity_samples, max_of(quasi), cfg.tol_identity, false});

    // f_{0,c}: defining form vs the Legendre-reduced form, and the
    // square-root factorization.
    auto fquad = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const ExtendedScalar c(s.c);
        const cx f = f_value(FamilyIndex(0), c, inv);
        const cx y = s.c - s.tau;
        const cx alt = 12.0 * (y * inv.eta1 + cx{0.0, 2.0 * pi}) * (y * inv.eta1 + cx{0.0, 2.0 * pi}) -
                       inv.g2 * y * y;
        const cx root = std::sqrt(inv.g2 / 12.0);
        const auto [x, yy] = family_pair(c, inv);
        const cx fact = 12.0 * (x - root * yy) * (x + root * yy);
        const double scale = std::max({1.0, std::abs(f), 12.0 * std::norm(x)});
        return std::max(std::abs(f - alt), std::abs(f - fact)) / scale;
    });
    res.add({"family-quadratic-forms", cfg.identity_samples, max_of(fquad), cfg.tol_identity, false});

    // f_{k,c} = 6 pi i e_k + (c - tau) f_{k,inf}
    auto fshift = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        double worst = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const cx lhs = f_value(FamilyIndex(k), ExtendedScalar(s.c), inv);
            const cx rhs = cx{0.0, 6.0 * pi} * inv.e(k) +
                           (s.c - s.tau) * f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
            const double scale = std::max(1.0, std::abs(lhs));
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        return worst;
    });
    res.add({"family-affine-in-c", cfg.identity_samples, max_of(fshift), cfg.tol_identity, false});

    // F_k = eta1 + e_k against the independent curvature route.
    auto fcap = map_samples(samples, cfg.parallel, [&](const TauSample& s) {
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const cx tau = s.tau;
        const cx half[3] = {cx{0.5, 0.0}, 0.5 * tau, 0.5 * (1.0 + tau)};
        double worst = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const ThetaEval t = theta1(half[k - 1], tau, kopt.theta);
            const cx r1 = t.d1 / t.value;
            const cx curv = -(t.d2 / t.value - r1 * r1);
            const double scale = std::max(1.0, std::abs(curv));
            worst = std::max(worst, std::abs(f_cap(k, inv) - curv) / scale);
        }
        return worst;
    });
    res.add({"half-period-curvature", cfg.identity_samples, max_of(fcap), cfg.tol_identity, false});

    return res;
}

SuiteResult suite_derivatives(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "derivatives";
    Rng rng(cfg.seed + 1);
    const auto samples = draw_tau_samples(rng, cfg.derivative_samples, 0.3, 2.5);
    const auto& kopt = cfg.kernel;
    const CauchyOptions copt{0.02, 64};

    struct Worst {
        double eta1 = 0, ek = 0, g2 = 0, g3 = 0, wp = 0, fam = 0, t = 0, zeta = 0;
    };

    auto rows = map_samples(samples, cfg.parallel, [&](const TauSample& s) -> Worst {
        Worst w;
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const DTauInvariants din = tau_derivatives(inv);

        // one ring of invariants serves every tau-derivative at this sample
        std::vector<LatticeInvariants> ring(static_cast<std::size_t>(copt.nodes));
        for (int j = 0; j < copt.nodes; ++j) {
            const double th = 2.0 * pi * j / copt.nodes;
            ring[static_cast<std::size_t>(j)] =
                invariants(s.tau + copt.radius * std::polar(1.0, th), kopt);
        }
        auto ring_deriv = [&](auto&& field) {
            cx acc{};
            for (int j = 0; j < copt.nodes; ++j) {
                const double th = 2.0 * pi * j / copt.nodes;
                acc += field(ring[static_cast<std::size_t>(j)]) * std::polar(1.0, -th);
            }
            return acc / (static_cast<double>(copt.nodes) * copt.radius);
        };
        auto rel = [](cx got, cx want) {
            return std::abs(got - want) / std::max(1.0, std::abs(want));
        };

        w.eta1 = rel(din.deta1, ring_deriv([](const LatticeInvariants& i) { return i.eta1; }));
        for (int k = 1; k <= 3; ++k)
            w.ek = std::max(w.ek, rel(din.de(k), ring_deriv([k](const LatticeInvariants& i) {
                                          return i.e(k);
                                      })));
        w.g2 = rel(din.dg2, ring_deriv([](const LatticeInvariants& i) { return i.g2; }));
        w.g3 = rel(din.dg3, ring_deriv([](const LatticeInvariants& i) { return i.g3; }));

        const cx z = cx{s.zr, 0.0} + s.zs * s.tau;
        w.wp = rel(wp_dtau(z, inv, kopt),
                   ring_deriv([&](const LatticeInvariants& i) { return wp(z, i, kopt); }));

        const ExtendedScalar cs[2] = {ExtendedScalar(s.c), ExtendedScalar::infinity()};
        for (const auto& c : cs)
            for (int k = 0; k <= 3; ++k)
                w.fam = std::max(
                    w.fam, rel(f_dtau(FamilyIndex(k), c, inv, din),
                               ring_deriv([&](const LatticeInvariants& i) {
                                   return f_value(FamilyIndex(k), c, i);
                               })));

        w.t = rel(dt_dtau(inv, din),
                  ring_deriv([&](const LatticeInvariants& i) { return t_of_tau(i); }));

        // zeta' = -wp via contour differentiation in z
        const cx zd = cauchy_derivative([&](cx zz) { return zeta_w(zz, inv, kopt); }, z, copt);
        w.zeta = rel(zd, -wp(z, inv, kopt));
        return w;
    });

    auto collect = [&](auto member, const char* name) {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, r.*member);
        res.add({name, cfg.derivative_samples, m, cfg.tol_derivative, false});
    };
    collect(&Worst::eta1, "eta1-derivative");
    collect(&Worst::ek, "half-period-derivatives");
    collect(&Worst::g2, "g2-derivative");
    collect(&Worst::g3, "g3-derivative");
    collect(&Worst::wp, "wp-tau-derivative");
    collect(&Worst::fam, "family-derivatives");
    collect(&Worst::t, "t-chart-derivative");
    collect(&Worst::zeta, "zeta-prime-is-minus-wp");
    return res;
}

namespace {

std::vector<ExtendedScalar> draw_c_values(Rng& rng, int n) {
    std::vector<ExtendedScalar> cs;
    cs.push_back(ExtendedScalar::infinity());
    for (int i = 1; i < n; ++i)
        cs.push_back(ExtendedScalar(rng.uniform_complex(-2.0, 2.0, -2.0, 2.0)));
    return cs;
}

} // namespace

SuiteResult suite_riccati(int level, const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = level == 0 ? "riccati0" : "riccati1";
    Rng rng(cfg.seed + (level == 0 ? 2 : 3));
    RiccatiOptions ropt;
    ropt.kernel = cfg.kernel;
    const auto path = straight_path(cx{0.2, 0.8}, cx{0.2, 2.0}, cfg.path_points);
    const double tol = level == 0 ? cfg.tol_riccati0 : cfg.tol_riccati1;

    struct Job {
        int k;
        ExtendedScalar c;
    };
    std::vector<Job> jobs;
    for (int k = 0; k <= 3; ++k) {
        auto cs = draw_c_values(rng, cfg.riccati_c_samples);
        for (const auto& c : cs) jobs.push_back({k, c});
    }
    auto worst = map_samples(jobs, cfg.parallel, [&](const Job& j) {
        return riccati_residual(level, FamilyIndex(j.k), j.c, path, ropt).max_residual;
    });
    for (int k = 0; k <= 3; ++k) {
        double m = 0.0;
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].k == k) m = std::max(m, worst[i]);
        res.add({std::string("family-") + std::to_string(k), cfg.riccati_c_samples, m, tol, false});
    }
    return res;
}

SuiteResult suite_pvi_second_order(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "pvi2";
    Rng rng(cfg.seed + 3);   // the same draws as the level-1 suite
    RiccatiOptions ropt;
    ropt.kernel = cfg.kernel;
    const auto path = straight_path(cx{0.2, 0.8}, cx{0.2, 2.0}, cfg.path_points);

    struct Job {
        int k;
        ExtendedScalar c;
    };
    std::vector<Job> jobs;
    for (int k = 0; k <= 3; ++k) {
        auto cs = draw_c_values(rng, cfg.riccati_c_samples);
        for (const auto& c : cs) jobs.push_back({k, c});
    }
    auto worst = map_samples(jobs, cfg.parallel, [&](const Job& j) {
        return pvi_residual(1, FamilyIndex(j.k), j.c, path, ropt).max_residual;
    });
    res.add({"second-order-residual", static_cast<int>(jobs.size()), max_of(worst), cfg.tol_pvi2,
             false});
    return res;
}

SuiteResult suite_okamoto(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "okamoto";
    Rng rng(cfg.seed + 4);
    const auto& kopt = cfg.kernel;
    RiccatiOptions ropt;
    ropt.kernel = kopt;

    struct Sample {
        int k;
        ExtendedScalar c;
        cx tau;
        bool deep;   // also run the derivative-based mu route
    };
    std::vector<Sample> samples;
    int attempts = 0;
    while (static_cast<int>(samples.size()) < cfg.okamoto_samples && attempts < 100000) {
        ++attempts;
        Sample s;
        s.k = static_cast<int>(rng.next_below(4));
        s.c = (rng.next_below(10) == 0) ? ExtendedScalar::infinity()
                                        : ExtendedScalar(rng.uniform_complex(-2, 2, -2, 2));
        s.tau = rng.uniform_complex(-0.5, 0.5, 0.8, 2.0);
        s.deep = samples.size() % 10 == 0;
        // skip draws where either level is singular at tau
        try {
            const LatticeInvariants inv = invariants(s.tau, kopt);
            const HamiltonianState st0 = level0_state(FamilyIndex(s.k), s.c, inv);
            const cx t = st0.t;
            const double eps = 1e-3 * std::max(1.0, std::abs(st0.lambda));
            if (std::abs(st0.lambda) < eps || std::abs(st0.lambda - 1.0) < eps ||
                std::abs(st0.lambda - t) < eps)
                continue;
            const ExtendedScalar l1 = lambda_of(1, FamilyIndex(s.k), s.c, inv);
            if (l1.is_inf || std::abs(l1.value) > 1e6) continue;
            const Witness cw = companion_witness(FamilyIndex(s.k), s.c, inv);
            if (std::abs(cw.value) < 1e-3 * cw.scale) continue;
        } catch (const error&) {
            continue;
        }
        samples.push_back(s);
    }

    struct Out {
        double route = 0, k1_forms = 0, mu_route = 0, hamilton = 0;
    };
    auto rows = map_samples(samples, cfg.parallel, [&](const Sample& s) -> Out {
        Out o;
        const LatticeInvariants inv = invariants(s.tau, kopt);
        const HamiltonianState st0 = level0_state(FamilyIndex(s.k), s.c, inv);
        const HamiltonianState st1 = okamoto_forward(st0);
        const cx direct = lambda_of(1, FamilyIndex(s.k), s.c, inv).value;
        o.route = std::abs(st1.lambda - direct) / std::max(1.0, std::abs(direct));

        if (s.k == 1) {
            const cx t = st0.t;
            const cx via_moebius = ((1.0 + t) * st0.lambda - 2.0 * t) / (2.0 * st0.lambda - 1.0 - t);
            const cx mu30 = (2.0 * direct - 1.0 - t) /
                            (2.0 * (direct - 1.0) * (direct - t));
            o.k1_forms = std::max(std::abs(via_moebius - direct) / std::max(1.0, std::abs(direct)),
                                  std::abs(mu30 - st1.mu) / std::max(1.0, std::abs(st1.mu)));
        }
        if (s.deep) {
            // mu recovered from the contour-differentiated lambda'
            auto lam_at = [&](cx tt) {
                return lambda_of(1, FamilyIndex(s.k), s.c, invariants(tt, kopt)).value;
            };
            const cx dl = cauchy_derivative(lam_at, s.tau, CauchyOptions{0.01, 64});
            const cx lp = dl / dt_dtau(inv, tau_derivatives(inv));
            const HamiltonianState from_lp = state_from_lambda_prime(st1.lambda, lp, st1.t);
            if (!from_lp.mu_singular)
                o.mu_route = std::abs(from_lp.mu - st1.mu) / std::max(1.0, std::abs(st1.mu));
            o.hamilton = std::abs(lp - hamiltonian_dK_dmu(st1)) / std::max(1.0, std::abs(lp));
        }
        return o;
    });

    double route = 0, k1f = 0, mu = 0, ham = 0;
    for (const auto& r : rows) {
        route = std::max(route, r.route);
        k1f = std::max(k1f, r.k1_forms);
        mu = std::max(mu, r.mu_route);
        ham = std::max(ham, r.hamilton);
    }
    res.add({"route-equality", static_cast<int>(samples.size()), route, cfg.tol_okamoto, false});
    res.add({"moebius-forms-k1", static_cast<int>(samples.size()), k1f, cfg.tol_okamoto, false});
    res.add({"mu-from-derivative", static_cast<int>(samples.size()) / 10, mu, cfg.tol_mu_route,
             false});
    res.add({"hamilton-first-equation", static_cast<int>(samples.size()) / 10, ham,
             cfg.tol_hamilton, false});
    return res;
}

SuiteResult suite_hessian(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "hessian";
    Rng rng(cfg.seed + 5);
    const auto& kopt = cfg.kernel;

    std::vector<cx> taus;
    while (static_cast<int>(taus.size()) < cfg.hessian_samples) {
        const cx tau = rng.uniform_complex(-1.0, 1.0, 0.3, 2.5);
        try {
            const LatticeInvariants inv = invariants(tau, kopt);
            if (std::abs(inv.g2) < 1e-3 * std::max(1.0, std::norm(inv.eta1))) continue;
        } catch (const error&) {
            continue;
        }
        taus.push_back(tau);
    }

    struct Out {
        double half_closed = 0, half_phi = 0, q_closed = 0, q_phi = 0, sz15 = 0;
    };
    auto rows = map_samples(taus, cfg.parallel, [&](cx tau) -> Out {
        Out o;
        const LatticeInvariants inv = invariants(tau, kopt);
        for (int i = 1; i <= 3; ++i) {
            for (int j = i + 1; j <= 3; ++j) {
                const int k = 6 - i - j;
                const HessianMatrix m = hessian_half_period(i, j, inv);
                const double scale = det_half_period_scale(k, inv);
                o.half_closed = std::max(
                    o.half_closed, std::abs(m.det - det_half_period_closed(k, inv)) / scale);
                o.half_phi = std::max(
                    o.half_phi, std::abs(m.det - det_half_period_phi_form(k, inv)) / scale);
            }
        }
        for (const int sign : {+1, -1}) {
            const HessianMatrix m = hessian_q(sign, inv);
            const double scale = det_q_scale(sign, inv);
            o.q_closed = std::max(o.q_closed, std::abs(m.det - det_q_closed(sign, inv)) / scale);
            o.q_phi = std::max(o.q_phi, std::abs(m.det - det_q_phi_form(sign, inv)) / scale);
        }
        CriticalPointOptions copt;
        copt.kernel = kopt;
        for (const auto& p : trivial_critical_points(ModuliPoint(tau), copt))
            o.sz15 = std::max(o.sz15, p.pairing_residual);
        return o;
    });

    double hc = 0, hp = 0, qc = 0, qp = 0, sz = 0;
    for (const auto& r : rows) {
        hc = std::max(hc, r.half_closed);
        hp = std::max(hp, r.half_phi);
        qc = std::max(qc, r.q_closed);
        qp = std::max(qp, r.q_phi);
        sz = std::max(sz, r.sz15);
    }
    const int n = cfg.hessian_samples;
    res.add({"half-period-det-closed-form", n, hc, cfg.tol_hessian, false});
    res.add({"half-period-det-phi-form", n, hp, cfg.tol_hessian, false});
    res.add({"q-pair-det-closed-form", n, qc, cfg.tol_hessian, false});
    res.add({"q-pair-det-phi-form", n, qp, cfg.tol_hessian, false});
    res.add({"stationarity-residuals", n, sz, cfg.tol_sz15, false});
    return res;
}

SuiteResult suite_lemma22(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "lemma22";
    Rng rng(cfg.seed + 6);
    const auto& kopt = cfg.kernel;
    std::vector<cx> taus;
    for (int i = 0; i < cfg.lemma_samples; ++i)
        taus.push_back(rng.uniform_complex(-1.0, 1.0, 0.25, 2.5));

    auto rows = map_samples(taus, cfg.parallel, [&](cx tau) {
        const LatticeInvariants inv = invariants(tau, kopt);
        double worst = 0.0;
        for (int k = 1; k <= 3; ++k) {
            const PairDeterminant pd = pair_determinant(k, inv);
            worst = std::max(worst, std::abs(pd.det - pd.product_form) / pd.scale);
        }
        return worst;
    });
    res.add({"pair-determinant-identity", cfg.lemma_samples, max_of(rows), cfg.tol_lemma, false});

    // the witness: the determinant itself must stay away from zero
    auto mins = map_samples(taus, cfg.parallel, [&](cx tau) {
        const LatticeInvariants inv = invariants(tau, kopt);
        double m = 1e300;
        for (int k = 1; k <= 3; ++k) {
            const PairDeterminant pd = pair_determinant(k, inv);
            m = std::min(m, std::abs(pd.det) / pd.scale);
        }
        return -m;   // negated so that the max reduction yields the min
    });
    const double min_witness = -max_of(mins);
    CheckResult wit;
    wit.name = "determinant-nonvanishing-witness";
    wit.count = cfg.lemma_samples;
    wit.max_residual = min_witness;
    wit.tolerance = 1e-8;
    wit.pass = min_witness > 1e-8;
    res.pass = res.pass && wit.pass;
    res.checks.push_back(wit);
    return res;
}

SuiteResult suite_anchors(const SuiteConfig& cfg) {
    SuiteResult res;
    res.suite = "anchors";
    const auto& kopt = cfg.kernel;
    const cx i_tau{0.0, 1.0};
    const cx rho = std::polar(1.0, pi / 3.0);
    const LatticeInvariants inv_i = invariants(i_tau, kopt);
    const LatticeInvariants inv_rho = invariants(rho, kopt);

    res.add({"eta1-at-i", 1, std::abs(inv_i.eta1 - pi), cfg.tol_anchor_tight, false});
    res.add({"eta1-at-rho", 1, std::abs(inv_rho.eta1 - 2.0 * pi / std::sqrt(3.0)), 1e-11, false});
    res.add({"g2-at-rho", 1, std::abs(inv_rho.g2), cfg.tol_anchor, false});
    res.add({"g3-at-i", 1, std::abs(inv_i.g3), cfg.tol_anchor, false});
    res.add({"e3-at-i", 1, std::abs(inv_i.e3), cfg.tol_anchor, false});
    res.add({"square-symmetry", 1, std::abs(inv_i.e2 + inv_i.e1), cfg.tol_anchor, false});
    res.add({"t-at-i", 1, std::abs(t_of_tau(inv_i) - 0.5), cfg.tol_anchor_tight, false});
    res.add({"hex-quasi-period-ratio", 1,
             std::abs(inv_rho.eta1 - rho * inv_rho.eta2) / std::abs(inv_rho.eta1), 1e-11, false});
    res.add({"phi-k3-at-i", 1, std::abs(phi(PhiBranch::k3, inv_i).value - i_tau), cfg.tol_anchor,
             false});
    res.add({"phi-branches-at-rho", 1,
             std::max(std::abs(phi(PhiBranch::plus, inv_rho).value - 1.0 / rho),
                      std::abs(phi(PhiBranch::minus, inv_rho).value - 1.0 / rho)),
             cfg.tol_anchor, false});
    res.add({"half-period-curvature-at-i", 1, std::abs(f_cap(3, inv_i) - pi), cfg.tol_anchor,
             false});
    // the quadratic family collapses by the Legendre relation at c = tau
    const cx tau0{0.3, 1.1};
    const LatticeInvariants inv0 = invariants(tau0, kopt);
    const cx fc = f_value(FamilyIndex(0), ExtendedScalar(tau0), inv0);
    res.add({"family-collapse-at-c-equals-tau", 1,
             std::abs(fc + 48.0 * pi * pi) / (48.0 * pi * pi), cfg.tol_anchor, false});
    return res;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "identities") return suite_identities(cfg);
    if (name == "derivatives") return suite_derivatives(cfg);
    if (name == "riccati0") return suite_riccati(0, cfg);
    if (name == "riccati1") return suite_riccati(1, cfg);
    if (name == "okamoto") return suite_okamoto(cfg);
    if (name == "hessian") return suite_hessian(cfg);
    if (name == "lemma22") return suite_lemma22(cfg);
    throw domain_error("unknown suite: " + name);
}

std::vector<std::string> suite_names() {
    return {"identities", "derivatives", "riccati0", "riccati1", "okamoto", "hessian", "lemma22"};
}

} // namespace torus
