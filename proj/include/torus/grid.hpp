#ifndef TORUS_GRID_HPP
#define TORUS_GRID_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "torus/kernel.hpp"
#include "torus/parallel.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// Rectangular evaluation grid with inclusive endpoints; node (i, j) sits at
// (re_min + i*dx, im_min + j*dy). Storage is row-major, index j*nx + i.
// ---------------------------------------------------------------------------

struct GridSpec {
    Rectangle rect;
    int nx = 400;
    int ny = 400;
    double refine_tol = 1e-12;

    GridSpec(Rectangle r, int nx_, int ny_, double refine = 1e-12)
        : rect(r), nx(nx_), ny(ny_), refine_tol(refine) {
        if (nx < 16 || ny < 16)
            throw domain_error("GridSpec: nx, ny must be at least 16");
    }

    double dx() const { return rect.width() / (nx - 1); }
    double dy() const { return rect.height() / (ny - 1); }
    double x(int i) const { return rect.re_min + i * dx(); }
    double y(int j) const { return rect.im_min + j * dy(); }
    cx node(int i, int j) const { return {x(i), y(j)}; }
    double cell_diagonal() const { return std::hypot(dx(), dy()); }
};

// The grid fills are the hot loops of the tracer and the scan oracles: one
// independent evaluation per node. The OpenMP path must produce bit-identical
// values to the serial reference; anything order-dependent stays outside.

template <typename F>
std::vector<double> eval_grid(const GridSpec& g, F&& f, bool parallel = true) {
    std::vector<double> out(static_cast<std::size_t>(g.nx) * g.ny);
    auto body = [&](std::ptrdiff_t idx) {
        const int j = static_cast<int>(idx) / g.nx;
        const int i = static_cast<int>(idx) % g.nx;
        double v;
        try {
            v = f(g.node(i, j));
        } catch (const error&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        out[static_cast<std::size_t>(idx)] = v;
    };
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
    if (parallel)
        parallel_for(n, body);
    else
        serial_for(n, body);
    return out;
}

/// Lattice invariants on every node; the shared input of every field pass.
std::vector<LatticeInvariants> invariants_grid(const GridSpec& g,
                                               const KernelOptions& opt = {},
                                               bool parallel = true);

} // namespace torus

#endif
