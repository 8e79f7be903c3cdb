#include "torus/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace torus {

RunConfig::RunConfig() {
    tolerances = {
        {"identity", 1e-10},  {"legendre", 1e-11},   {"derivative", 1e-8},
        {"riccati0", 1e-8},   {"riccati1", 1e-7},    {"okamoto", 1e-9},
        {"mu_route", 1e-7},   {"hamilton", 1e-6},    {"pvi2", 1e-5},
        {"hessian", 1e-9},    {"sz15", 1e-9},        {"lemma22", 1e-10},
        {"newton", 1e-10},    {"simple_floor", 1e-6}, {"boundary", 1e-8},
        {"curve_residual", 1e-8}, {"smooth_floor", 1e-6}, {"det_zero", 1e-7},
        {"anchor", 1e-10},    {"anchor_tight", 1e-12},
    };
}

double RunConfig::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw domain_error("unknown tolerance: " + name);
    return it->second;
}

void RunConfig::set_tol(const std::string& name, double value) {
    if (!(value > 0.0)) throw domain_error("tolerances must be positive");
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw domain_error("unknown tolerance: " + name);
    it->second = value;
}

KernelOptions RunConfig::kernel_options() const {
    KernelOptions k;
    k.theta.max_terms = series_depth;
    return k;
}

SuiteConfig RunConfig::suite_config() const {
    SuiteConfig s;
    s.seed = seed;
    s.kernel = kernel_options();
    s.tol_identity = tol("identity");
    s.tol_legendre = tol("legendre");
    s.tol_derivative = tol("derivative");
    s.tol_riccati0 = tol("riccati0");
    s.tol_riccati1 = tol("riccati1");
    s.tol_okamoto = tol("okamoto");
    s.tol_mu_route = tol("mu_route");
    s.tol_hamilton = tol("hamilton");
    s.tol_pvi2 = tol("pvi2");
    s.tol_hessian = tol("hessian");
    s.tol_sz15 = tol("sz15");
    s.tol_lemma = tol("lemma22");
    s.tol_anchor = tol("anchor");
    s.tol_anchor_tight = tol("anchor_tight");
    return s;
}

json config_json(const RunConfig& cfg) {
    json j;
    j["region"] = {{"re_min", cfg.region.re_min},
                   {"re_max", cfg.region.re_max},
                   {"im_min", cfg.region.im_min},
                   {"im_max", cfg.region.im_max}};
    j["grid"] = {cfg.nx, cfg.ny};
    json tols;
    for (const auto& [k, v] : cfg.tolerances) tols[k] = v;
    j["tolerances"] = tols;
    j["series_depth"] = cfg.series_depth;
    j["thread_count"] = cfg.thread_count;
    j["output_dir"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    return j;
}

json suite_json(const SuiteResult& s) {
    json checks = json::array();
    for (const auto& c : s.checks) {
        checks.push_back({{"name", c.name},
                          {"count", c.count},
                          {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    return {{"suite", s.suite}, {"checks", checks}, {"worst_ratio", s.worst_ratio},
            {"pass", s.pass}};
}

json report_json(const Report& r) {
    json j;
    j["schema_version"] = report_schema_version;
    j["command"] = r.command;
    j["config"] = config_json(r.config);
    j["records"] = r.records;
    j["summary"] = r.summary;
    j["pass"] = r.pass;
    return j;
}

std::string report_payload(const Report& r) {
    return report_json(r).dump(2) + "\n";
}

std::string format_complex(cx z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g%s%.17gi", z.real(), z.imag() < 0.0 ? "-" : "+",
                  std::abs(z.imag()));
    return buf;
}

ExtendedScalar parse_complex(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return ExtendedScalar::infinity();
    std::string s = text;
    // strip an optional leading '+'
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.empty()) throw domain_error("empty complex literal");

    auto parse_real = [](const std::string& part) {
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw domain_error("bad number in complex literal: " + part);
        return v;
    };

    if (s.back() != 'i' && s.back() != 'I') return ExtendedScalar(cx{parse_real(s), 0.0});

    s.pop_back();   // drop the i
    // split at the last +/- that is not a leading sign and not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t p = s.size(); p-- > 1;) {
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string::npos) {
        // purely imaginary: "i", "-i", "2.5i"
        if (s.empty() || s == "-") return ExtendedScalar(cx{0.0, s == "-" ? -1.0 : 1.0});
        return ExtendedScalar(cx{0.0, parse_real(s)});
    }
    const std::string re_part = s.substr(0, split);
    std::string im_part = s.substr(split);
    if (im_part == "+" || im_part == "-") im_part += "1";
    return ExtendedScalar(cx{parse_real(re_part), parse_real(im_part)});
}

} // namespace torus
