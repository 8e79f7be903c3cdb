// torus-zeros: evaluate the elliptic families, run the verification suites,
// scan rectangles for zeros, tabulate Hessians, and trace degeneracy curves.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torus/curves.hpp"
#include "torus/families.hpp"
#include "torus/green.hpp"
#include "torus/painleve.hpp"
#include "torus/parallel.hpp"
#include "torus/report.hpp"
#include "torus/rng.hpp"
#include "torus/verify.hpp"
#include "torus/zerofind.hpp"

namespace {

using namespace torus;

struct CliState {
    RunConfig cfg;
    std::vector<double> region_raw;
    std::string grid_raw;
    int threads = -1;
};

void apply_common(CliState& st) {
    if (!st.region_raw.empty()) {
        if (st.region_raw.size() != 4)
            throw domain_error("--region needs re_min,re_max,im_min,im_max");
        st.cfg.region = Rectangle(st.region_raw[0], st.region_raw[1], st.region_raw[2],
                                  st.region_raw[3]);
    }
    if (!st.grid_raw.empty()) {
        const auto x = st.grid_raw.find('x');
        if (x == std::string::npos) throw domain_error("--grid needs NXxNY, e.g. 400x400");
        st.cfg.nx = std::stoi(st.grid_raw.substr(0, x));
        st.cfg.ny = std::stoi(st.grid_raw.substr(x + 1));
    }
    int threads = st.threads;
    if (threads < 0) {
        if (const char* env = std::getenv("TORUS_ZEROS_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) {
        st.cfg.thread_count = threads;
        set_thread_count(threads);
    }
}

int finish(Report& report) {
    std::cout << report_payload(report);
    return report.pass ? 0 : 1;
}

json zero_record_json(const ZeroRecord& z) {
    return {{"location", format_complex(z.location.value())},
            {"winding", z.winding},
            {"derivative_magnitude", z.derivative_magnitude},
            {"newton_residual", z.newton_residual}};
}

int cmd_eval(CliState& st, const std::string& what, const std::string& tau_s,
             const std::string& z_s, int k, const std::string& c_s) {
    apply_common(st);
    Report report;
    report.command = "eval";
    report.config = st.cfg;

    const ExtendedScalar tau_e = parse_complex(tau_s);
    if (tau_e.is_inf) throw domain_error("tau must be finite");
    const ModuliPoint tau(tau_e.value);
    const KernelOptions kopt = st.cfg.kernel_options();
    const LatticeInvariants inv = invariants(tau, kopt);

    json rec;
    rec["what"] = what;
    rec["tau"] = format_complex(tau.value());
    auto put = [&](cx v) { rec["value"] = format_complex(v); };
    auto put_ext = [&](const ExtendedScalar& v) {
        rec["value"] = v.is_inf ? "inf" : format_complex(v.value);
    };
    auto need_z = [&]() {
        if (z_s.empty()) throw domain_error("--z required for " + what);
        const ExtendedScalar ze = parse_complex(z_s);
        if (ze.is_inf) throw domain_error("z must be finite");
        rec["z"] = format_complex(ze.value);
        return ze.value;
    };
    auto need_c = [&]() {
        if (c_s.empty()) throw domain_error("--c required for " + what);
        const ExtendedScalar c = parse_complex(c_s);
        rec["c"] = c.is_inf ? "inf" : format_complex(c.value);
        return c;
    };

    if (what == "theta1") {
        const ThetaEval t = theta1(need_z(), tau.value(), kopt.theta);
        rec["value"] = format_complex(t.value);
        rec["d1"] = format_complex(t.d1);
        rec["d2"] = format_complex(t.d2);
        rec["d3"] = format_complex(t.d3);
        rec["terms_used"] = t.terms_used;
    } else if (what == "wp") {
        put(wp(need_z(), inv, kopt));
    } else if (what == "wp_prime") {
        put(wp_prime(need_z(), tau.value(), kopt));
    } else if (what == "wp_pp") {
        put(wp_pp(need_z(), tau.value(), kopt));
    } else if (what == "zeta") {
        put(zeta_w(need_z(), inv, kopt));
    } else if (what == "e1") {
        put(inv.e1);
    } else if (what == "e2") {
        put(inv.e2);
    } else if (what == "e3") {
        put(inv.e3);
    } else if (what == "g2") {
        put(inv.g2);
    } else if (what == "g3") {
        put(inv.g3);
    } else if (what == "eta1") {
        put(inv.eta1);
    } else if (what == "eta2") {
        put(inv.eta2);
    } else if (what == "f") {
        rec["k"] = k;
        put(f_value(FamilyIndex(k), need_c(), inv));
    } else if (what == "F") {
        rec["k"] = k;
        put(f_cap(k, inv));
    } else if (what == "phi+") {
        put_ext(phi(PhiBranch::plus, inv));
    } else if (what == "phi-") {
        put_ext(phi(PhiBranch::minus, inv));
    } else if (what == "phi1" || what == "phi2" || what == "phi3") {
        const PhiBranch br = what == "phi1" ? PhiBranch::k1
                              : what == "phi2" ? PhiBranch::k2 : PhiBranch::k3;
        put_ext(phi(br, inv));
    } else if (what == "t") {
        put(t_of_tau(inv));
    } else if (what == "lambda0" || what == "lambda1") {
        rec["k"] = k;
        put_ext(lambda_of(what == "lambda0" ? 0 : 1, FamilyIndex(k), need_c(), inv));
    } else {
        throw domain_error("unknown symbol: " + what);
    }

    report.records = rec;
    report.summary = {{"evaluated", 1}};
    report.pass = true;
    return finish(report);
}

int cmd_verify(CliState& st, const std::string& suite) {
    apply_common(st);
    Report report;
    report.command = "verify";
    report.config = st.cfg;
    SuiteConfig scfg = st.cfg.suite_config();
    const SuiteResult res = run_suite(suite, scfg);
    report.records = suite_json(res);
    int failures = 0;
    for (const auto& c : res.checks)
        if (!c.pass) ++failures;
    report.summary = {{"checks", res.checks.size()},
                      {"failures", failures},
                      {"worst_ratio", res.worst_ratio}};
    report.pass = res.pass;
    return finish(report);
}

int cmd_zeros(CliState& st, int k, const std::string& c_s) {
    apply_common(st);
    Report report;
    report.command = "zeros";
    report.config = st.cfg;

    const ExtendedScalar c = parse_complex(c_s);
    ZeroFindOptions zopt;
    zopt.newton_rel = st.cfg.tol("newton");
    zopt.simple_floor_rel = st.cfg.tol("simple_floor");
    zopt.winding.boundary_rel = st.cfg.tol("boundary");
    const SimpleZeroVerdict v =
        verify_simple(FamilyIndex(k), c, st.cfg.region, zopt, st.cfg.kernel_options());

    json zeros = json::array();
    for (const auto& z : v.zeros) zeros.push_back(zero_record_json(z));
    report.records = {{"k", k},
                      {"c", c.is_inf ? "inf" : format_complex(c.value)},
                      {"zeros", zeros},
                      {"count", v.zeros.size()},
                      {"all_simple", v.all_simple},
                      {"companions_ok", v.companions_ok},
                      {"scale", v.scale},
                      {"effective_region",
                       {{"re_min", v.effective_rect.re_min},
                        {"re_max", v.effective_rect.re_max},
                        {"im_min", v.effective_rect.im_min},
                        {"im_max", v.effective_rect.im_max}}}};
    report.summary = {{"count", v.zeros.size()},
                      {"min_derivative", v.zeros.empty() ? 0.0 : v.min_derivative},
                      {"min_companion", v.zeros.empty() ? 0.0 : v.min_companion},
                      {"boundary_margin", v.boundary_margin}};
    report.pass = v.all_simple && v.companions_ok;
    return finish(report);
}

int cmd_trace(CliState& st, const std::string& curve, const std::string& formats) {
    apply_common(st);
    Report report;
    report.command = "trace";
    report.config = st.cfg;

    std::vector<DegeneracyCurveId> ids;
    if (curve == "all") {
        ids = {DegeneracyCurveId::C12, DegeneracyCurveId::C13, DegeneracyCurveId::C23,
               DegeneracyCurveId::Ctilde_plus, DegeneracyCurveId::Ctilde_minus};
    } else {
        bool ok = false;
        for (const auto id : {DegeneracyCurveId::C12, DegeneracyCurveId::C13,
                              DegeneracyCurveId::C23, DegeneracyCurveId::Ctilde_plus,
                              DegeneracyCurveId::Ctilde_minus}) {
            if (curve == curve_name(id)) {
                ids = {id};
                ok = true;
            }
        }
        if (!ok) throw domain_error("unknown curve id: " + curve);
    }

    const GridSpec grid(st.cfg.region, st.cfg.nx, st.cfg.ny);
    TraceOptions topt;
    topt.kernel = st.cfg.kernel_options();
    topt.residual_rel = st.cfg.tol("curve_residual");
    const double smooth_floor = st.cfg.tol("smooth_floor");
    const auto inv_grid = invariants_grid(grid, topt.kernel);

    bool pass = true;
    json curves = json::array();
    for (const auto id : ids) {
        const auto polys = trace(id, grid, inv_grid, topt);
        std::size_t n_pts = 0;
        double max_res = 0.0, min_grad = polys.empty() ? 0.0 : 1e300;
        for (const auto& p : polys) {
            n_pts += p.points.size();
            for (double r : p.residuals) max_res = std::max(max_res, r);
            for (double g : p.grad_norms) min_grad = std::min(min_grad, g);
        }
        json entry = {{"curve", curve_name(id)},
                      {"polylines", polys.size()},
                      {"points", n_pts},
                      {"max_residual", max_res},
                      {"min_grad_norm", min_grad}};
        const bool curve_ok = !polys.empty() && max_res < topt.residual_rel;
        pass = pass && curve_ok;

        if (id == DegeneracyCurveId::Ctilde_plus || id == DegeneracyCurveId::Ctilde_minus) {
            const int sign = id == DegeneracyCurveId::Ctilde_plus ? +1 : -1;
            const Decomposition d = decompose_c_pm(sign, grid, topt);
            entry["s_points"] = d.s_points.size();
            entry["min_separation"] = d.min_separation;
            entry["separation_required"] = d.separation_required;
            entry["max_det_residual_curves"] = d.max_det_curves;
            entry["max_det_residual_s"] = d.max_det_s;
            pass = pass && (d.s_points.empty() || d.min_separation > d.separation_required) &&
                   d.max_det_curves < st.cfg.tol("det_zero") &&
                   d.max_det_s < st.cfg.tol("det_zero");
        }

        std::istringstream fmts(formats);
        std::string fmt;
        json files = json::array();
        while (std::getline(fmts, fmt, ',')) {
            if (fmt == "json") continue;
            files.push_back(emit(id, polys, grid, fmt, st.cfg.output_dir));
        }
        entry["files"] = files;
        curves.push_back(entry);
        (void)smooth_floor;
    }
    report.records = {{"curves", curves}};
    report.summary = {{"curves", curves.size()}};
    report.pass = pass;
    return finish(report);
}

int cmd_hessian_table(CliState& st, const std::string& tau_s, int count) {
    apply_common(st);
    Report report;
    report.command = "hessian-table";
    report.config = st.cfg;
    const KernelOptions kopt = st.cfg.kernel_options();
    const double tol = st.cfg.tol("hessian");

    std::vector<cx> taus;
    if (!tau_s.empty()) {
        taus.push_back(parse_complex(tau_s).value);
    } else {
        Rng rng(st.cfg.seed);
        while (static_cast<int>(taus.size()) < count) {
            const cx t = rng.uniform_complex(st.cfg.region.re_min, st.cfg.region.re_max,
                                             std::max(0.3, st.cfg.region.im_min),
                                             st.cfg.region.im_max);
            try {
                const LatticeInvariants inv = invariants(t, kopt);
                if (std::abs(inv.g2) < 1e-3 * std::max(1.0, std::norm(inv.eta1))) continue;
            } catch (const error&) {
                continue;
            }
            taus.push_back(t);
        }
    }

    bool pass = true;
    json rows = json::array();
    for (const cx tau : taus) {
        const LatticeInvariants inv = invariants(tau, kopt);
        json row;
        row["tau"] = format_complex(tau);
        json dets = json::array();
        for (int i = 1; i <= 3; ++i) {
            for (int j = i + 1; j <= 3; ++j) {
                const int k = 6 - i - j;
                const HessianMatrix m = hessian_half_period(i, j, inv);
                const double closed = det_half_period_closed(k, inv);
                const double phi_form = det_half_period_phi_form(k, inv);
                const double scale = det_half_period_scale(k, inv);
                const double res = std::max(std::abs(m.det - closed), std::abs(m.det - phi_form)) / scale;
                pass = pass && res < tol;
                dets.push_back({{"pair", "omega" + std::to_string(i) + "/2,omega" +
                                             std::to_string(j) + "/2"},
                                {"det", m.det},
                                {"closed_form", closed},
                                {"phi_form", phi_form},
                                {"residual", res}});
            }
        }
        for (const int sign : {+1, -1}) {
            const HessianMatrix m = hessian_q(sign, inv);
            const double closed = det_q_closed(sign, inv);
            const double phi_form = det_q_phi_form(sign, inv);
            const double scale = det_q_scale(sign, inv);
            const double res = std::max(std::abs(m.det - closed), std::abs(m.det - phi_form)) / scale;
            pass = pass && res < tol;
            dets.push_back({{"pair", sign > 0 ? "q+,-q+" : "q-,-q-"},
                            {"det", m.det},
                            {"closed_form", closed},
                            {"phi_form", phi_form},
                            {"residual", res}});
        }
        row["determinants"] = dets;
        rows.push_back(row);
    }
    report.records = {{"rows", rows}};
    report.summary = {{"tau_count", taus.size()}};
    report.pass = pass;
    return finish(report);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic families on the moduli space of tori: evaluation, "
                 "verification suites, zero scans, Hessian tables, degeneracy curves"};
    app.require_subcommand(1);

    CliState st;
    app.add_option("--region", st.region_raw, "re_min,re_max,im_min,im_max")->delimiter(',');
    app.add_option("--grid", st.grid_raw, "grid size NXxNY");
    app.add_option("--seed", st.cfg.seed, "rng seed for sampled checks");
    app.add_option("--threads", st.threads, "worker threads (default: TORUS_ZEROS_THREADS or all)");
    app.add_option("--out", st.cfg.output_dir, "output directory for emitted files");
    app.add_option("--format", st.cfg.format, "output format(s), comma separated");
    app.add_option("--series-depth", st.cfg.series_depth, "theta series term cap");
    for (auto& [name, value] : st.cfg.tolerances)
        app.add_option("--tol." + name, value, "override tolerance " + name);

    auto* eval = app.add_subcommand("eval", "evaluate one symbol at tau");
    std::string what, tau_s, z_s, c_s;
    int k = 0;
    eval->add_option("--what", what, "symbol name")->required();
    eval->add_option("--tau", tau_s, "tau as a+bi")->required();
    eval->add_option("--z", z_s, "z as a+bi");
    eval->add_option("--k", k, "family index 0..3");
    eval->add_option("--c", c_s, "family parameter a+bi or inf");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "one of identities, derivatives, riccati0, riccati1, okamoto, hessian, lemma22")
        ->required();

    auto* zeros = app.add_subcommand("zeros", "argument-principle zero scan of f_{k,c}");
    int zk = 0;
    std::string zc = "inf";
    zeros->add_option("--k", zk, "family index 0..3")->required();
    zeros->add_option("--c", zc, "family parameter a+bi or inf");

    auto* trace_cmd = app.add_subcommand("trace", "trace degeneracy curves");
    std::string curve = "all";
    trace_cmd->add_option("--curve", curve, "C12, C13, C23, Ctilde_plus, Ctilde_minus or all");

    auto* hess = app.add_subcommand("hessian-table", "Hessian determinants at the five critical points");
    std::string htau;
    int hcount = 8;
    hess->add_option("--tau", htau, "tau as a+bi (otherwise seeded sampling)");
    hess->add_option("--count", hcount, "number of seeded tau samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval) return cmd_eval(st, what, tau_s, z_s, k, c_s);
        if (*verify) return cmd_verify(st, suite);
        if (*zeros) return cmd_zeros(st, zk, zc);
        if (*trace_cmd) return cmd_trace(st, curve, st.cfg.format == "json" ? "csv,svg" : st.cfg.format);
        if (*hess) return cmd_hessian_table(st, htau, hcount);
    } catch (const torus::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
