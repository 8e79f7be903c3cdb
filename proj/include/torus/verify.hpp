#ifndef TORUS_VERIFY_HPP
#define TORUS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "torus/kernel.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// Seeded property suites. Each suite draws its samples deterministically from
// the configured seed, evaluates a family of identities or residuals, and
// reports the worst case against its tolerance. The CLI and the acceptance
// runner both drive these.
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    int count = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;
    double worst_ratio = 0.0;   // max over checks of residual/tolerance

    void add(CheckResult c) {
        c.pass = c.max_residual < c.tolerance;
        pass = pass && c.pass;
        if (c.tolerance > 0.0)
            worst_ratio = std::max(worst_ratio, c.max_residual / c.tolerance);
        checks.push_back(std::move(c));
    }
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    KernelOptions kernel{};
    bool parallel = true;

    int identity_samples = 200;
    int derivative_samples = 50;
    int riccati_c_samples = 10;
    int path_points = 40;
    int okamoto_samples = 100;
    int hessian_samples = 100;
    int lemma_samples = 100;

    double tol_identity = 1e-10;
    double tol_legendre = 1e-11;
    double tol_derivative = 1e-8;
    double tol_riccati0 = 1e-8;
    double tol_riccati1 = 1e-7;
    double tol_okamoto = 1e-9;
    double tol_mu_route = 1e-7;
    double tol_hamilton = 1e-6;
    double tol_pvi2 = 1e-5;
    double tol_hessian = 1e-9;
    double tol_sz15 = 1e-9;
    double tol_lemma = 1e-10;
    double tol_anchor_tight = 1e-12;
    double tol_anchor = 1e-10;
};

SuiteResult suite_identities(const SuiteConfig& cfg);
SuiteResult suite_derivatives(const SuiteConfig& cfg);
SuiteResult suite_riccati(int level, const SuiteConfig& cfg);
SuiteResult suite_okamoto(const SuiteConfig& cfg);
SuiteResult suite_hessian(const SuiteConfig& cfg);
SuiteResult suite_lemma22(const SuiteConfig& cfg);

/// Closed-value anchors at the square and hexagonal lattices.
SuiteResult suite_anchors(const SuiteConfig& cfg);

/// Full second-order residual of the level-1 families (loose tolerance).
SuiteResult suite_pvi_second_order(const SuiteConfig& cfg);

/// Dispatch by CLI suite name: identities, derivatives, riccati0, riccati1,
/// okamoto, hessian, lemma22.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<std::string> suite_names();

} // namespace torus

#endif
