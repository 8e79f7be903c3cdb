#ifndef TORUS_ZEROFIND_HPP
#define TORUS_ZEROFIND_HPP

#include <functional>
#include <vector>

#include "torus/families.hpp"
#include "torus/types.hpp"

namespace torus {

using Evaluator = std::function<cx(cx)>;

struct EvaluatorPair {
    Evaluator f;
    Evaluator fp;
};

/// f_{k,c} and its analytic tau-derivative as plain evaluators.
EvaluatorPair family_evaluator(FamilyIndex k, const ExtendedScalar& c,
                               const KernelOptions& opt = {});

struct WindingOptions {
    int gl_points = 10;          // Gauss-Legendre nodes per panel
    double settle_tol = 1e-3;    // required stability of the winding integral
    double integer_tol = 0.25;   // max distance from an integer before error
    int max_panel_depth = 26;
    double boundary_rel = 1e-8;  // |f| < rel * scale on the boundary triggers a nudge
    int boundary_samples = 64;   // per-edge probes and the scale median
    int max_nudges = 5;
    double nudge_factor = 0.01;  // each nudge grows the rectangle by 1%
};

/// Median of |f| over samples of the rectangle boundary; the reference scale
/// for every relative threshold of a scan (the families span many orders of
/// magnitude across the strip, absolute tolerances mean nothing).
double boundary_scale(const Evaluator& f, const Rectangle& rect, int samples = 64);

/// Zeros-minus-none count: (1/2 pi i) contour integral of f'/f over the
/// rectangle boundary by adaptive Gauss-Legendre panels. The rectangle is
/// nudged outward (up to max_nudges, 1% each) whenever |f| dips below
/// boundary_rel * scale on the boundary; pass effective_rect to observe the
/// rectangle actually integrated.
int winding_count(const Evaluator& f, const Evaluator& fp, const Rectangle& rect,
                  const WindingOptions& opt = {}, Rectangle* effective_rect = nullptr);

struct ZeroRecord {
    ModuliPoint location;
    int winding = 0;
    double derivative_magnitude = 0.0;
    double newton_residual = 0.0;
};

struct ZeroFindOptions {
    WindingOptions winding{};
    int max_depth = 14;
    int newton_max_iter = 60;
    double newton_rel = 1e-10;      // residual target relative to the scan scale
    double merge_eps = 1e-8;        // zeros closer than this are the same zero
    double simple_floor_rel = 1e-6; // |f'| floor for the simplicity verdict
};

struct ScanResult {
    std::vector<ZeroRecord> zeros;
    Rectangle effective_rect;
    double scale = 0.0;
    int total_winding = 0;
};

/// Locate every zero inside the rectangle: quadrisect until each cell has
/// winding <= 1 (interior split lines are nudged off zeros), Newton-refine
/// from the best sample of each winding-1 cell, merge duplicates.
ScanResult locate_zeros(const Evaluator& f, const Evaluator& fp, const Rectangle& rect,
                        const ZeroFindOptions& opt = {});

struct SimpleZeroVerdict {
    std::vector<ZeroRecord> zeros;
    bool all_simple = false;
    double min_derivative = 0.0;
    double boundary_margin = 0.0;
    Rectangle effective_rect;
    double scale = 0.0;
    // companion expressions at the zeros must stay away from zero
    bool companions_ok = true;
    double min_companion = 0.0;
};

/// Desk-scale simplicity check for f_{k,c} on a rectangle: every zero must
/// have winding 1 and |f'| above the floor, and the companion witness must
/// not vanish alongside.
SimpleZeroVerdict verify_simple(FamilyIndex k, const ExtendedScalar& c, const Rectangle& rect,
                                const ZeroFindOptions& opt = {}, const KernelOptions& kopt = {});

} // namespace torus

#endif
