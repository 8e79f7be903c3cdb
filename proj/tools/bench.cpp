// Serial vs OpenMP comparison for the grid-evaluation kernels.

#include <chrono>
#include <cstdio>

#include "torus/curves.hpp"
#include "torus/grid.hpp"
#include "torus/parallel.hpp"
#include "torus/verify.hpp"

using namespace torus;

namespace {

template <typename F>
double time_of(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-32s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main() {
    std::printf("threads: %d\n", thread_count());
    std::printf("%-32s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    const GridSpec grid(Rectangle(-1.0, 1.0, 0.35, 3.0), 200, 200);
    std::vector<LatticeInvariants> inv_serial, inv_parallel;
    row("invariants-grid 200x200",
        time_of([&] { inv_serial = invariants_grid(grid, {}, false); }),
        time_of([&] { inv_parallel = invariants_grid(grid, {}, true); }));

    double field_checksum = 0.0;
    row("curve-field fill (5 fields)", time_of([&] {
            for (const auto id : {DegeneracyCurveId::C12, DegeneracyCurveId::C13,
                                  DegeneracyCurveId::C23, DegeneracyCurveId::Ctilde_plus,
                                  DegeneracyCurveId::Ctilde_minus})
                for (const auto& inv : inv_serial)
                    field_checksum += scalar_field_scaled(id, inv).value;
        }),
        time_of([&] {
            for (const auto id : {DegeneracyCurveId::C12, DegeneracyCurveId::C13,
                                  DegeneracyCurveId::C23, DegeneracyCurveId::Ctilde_plus,
                                  DegeneracyCurveId::Ctilde_minus}) {
                std::vector<double> out(inv_parallel.size());
                parallel_for(static_cast<std::ptrdiff_t>(inv_parallel.size()), [&](std::ptrdiff_t i) {
                    out[static_cast<std::size_t>(i)] =
                        scalar_field_scaled(id, inv_parallel[static_cast<std::size_t>(i)]).value;
                });
                for (double v : out) field_checksum += v;
            }
        }));

    SuiteConfig cfg;
    cfg.identity_samples = 100;
    SuiteResult rs, rp;
    row("identity suite (100 samples)", time_of([&] {
            cfg.parallel = false;
            rs = suite_identities(cfg);
        }),
        time_of([&] {
            cfg.parallel = true;
            rp = suite_identities(cfg);
        }));

    // sanity: both paths agree bit for bit
    bool same = rs.checks.size() == rp.checks.size();
    for (std::size_t i = 0; same && i < rs.checks.size(); ++i)
        same = rs.checks[i].max_residual == rp.checks[i].max_residual;
    std::printf("serial/parallel results identical: %s (checksum %.6g)\n",
                same ? "yes" : "NO", field_checksum);
    return same ? 0 : 1;
}
