#include "torus/grid.hpp"

namespace torus {

std::vector<LatticeInvariants> invariants_grid(const GridSpec& g, const KernelOptions& opt,
                                               bool parallel) {
    std::vector<LatticeInvariants> out(static_cast<std::size_t>(g.nx) * g.ny);
    auto body = [&](std::ptrdiff_t idx) {
        const int j = static_cast<int>(idx) / g.nx;
        const int i = static_cast<int>(idx) % g.nx;
        out[static_cast<std::size_t>(idx)] = invariants(g.node(i, j), opt);
    };
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
    if (parallel)
        parallel_for(n, body);
    else
        serial_for(n, body);
    return out;
}

} // namespace torus
