#ifndef TORUS_CURVES_HPP
#define TORUS_CURVES_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "torus/families.hpp"
#include "torus/green.hpp"
#include "torus/grid.hpp"
#include "torus/types.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// The five degeneracy curves: zero level sets of real fields on the upper
// half plane. C12/C13/C23 use the half-period Hessian determinant (index k
// complementary to {i,j}); the tilde curves use the q-pair factor with the
// |g2| prefactor deliberately excluded -- that factor is exactly what
// separates them from the vanishing locus of g2.
// ---------------------------------------------------------------------------

enum class DegeneracyCurveId { C12, C13, C23, Ctilde_plus, Ctilde_minus };

const char* curve_name(DegeneracyCurveId id);

/// Complementary family index for the C_{i,j} fields ({i,j,k} = {1,2,3}).
int curve_family_index(DegeneracyCurveId id);

struct FieldValue {
    double value;
    double scale;   // sum of the absolute term magnitudes (cancellation-aware)
};

FieldValue scalar_field_scaled(DegeneracyCurveId id, const LatticeInvariants& inv);
double scalar_field(DegeneracyCurveId id, const ModuliPoint& tau, const KernelOptions& opt = {});

struct CurvePolyline {
    std::vector<ModuliPoint> points;
    std::vector<double> residuals;    // |H| / local scale, per point
    std::vector<double> grad_norms;   // central-difference gradient magnitude
    std::vector<int> cases;           // 0: factor-vanishing case, 1: Im-phi case
    bool closed = false;
};

struct TraceOptions {
    KernelOptions kernel{};
    double residual_rel = 1e-8;     // acceptance gate; also drops branch-cut phantoms
    double fd_step = 1e-6;          // central differences for the gradient witness
    double fd_check = 1e-3;         // Richardson + analytic agreement gate
    bool parallel = true;
};

/// Extract the zero level set on the grid: marching squares over node signs,
/// each crossing refined by bisection along its grid edge, crossings chained
/// into polylines by cell adjacency. Crossings whose refined residual stays
/// large are discontinuity artifacts of the square-root branch and are
/// dropped, not traced.
std::vector<CurvePolyline> trace(DegeneracyCurveId id, const GridSpec& grid,
                                 const TraceOptions& opt = {});

/// Same, with a precomputed invariants grid (shared across several curves).
std::vector<CurvePolyline> trace(DegeneracyCurveId id, const GridSpec& grid,
                                 const std::vector<LatticeInvariants>& inv_grid,
                                 const TraceOptions& opt = {});

struct Decomposition {
    std::vector<CurvePolyline> curves;
    std::vector<ModuliPoint> s_points;
    double min_separation = 0.0;      // between curve points and s_points
    double separation_required = 0.0; // 10 grid-cell diagonals
    double max_det_curves = 0.0;      // q-pair determinant residual on the curves
    double max_det_s = 0.0;           // and on the s_points (relative to a region scale)
    double det_scale = 0.0;
};

/// Split the q-pair degeneracy locus into its curve part and the isolated
/// vanishing points of g2, and verify they stay apart. Throws overlap_error
/// if the separation margin fails.
Decomposition decompose_c_pm(int sign, const GridSpec& grid, const TraceOptions& opt = {},
                             int s_orbit_bound = 10);

/// CSV: curve_id,re,im,residual,grad_norm with 17 significant digits.
void emit_csv(DegeneracyCurveId id, const std::vector<CurvePolyline>& polys, std::ostream& os);

/// SVG: one path element per polyline, fixed per-curve colors, framed axes.
void emit_svg(DegeneracyCurveId id, const std::vector<CurvePolyline>& polys,
              const Rectangle& region, std::ostream& os);

/// Write <curve>_<region-hash>.<format> under out_dir; returns the file path.
std::string emit(DegeneracyCurveId id, const std::vector<CurvePolyline>& polys,
                 const GridSpec& grid, const std::string& format, const std::string& out_dir);

} // namespace torus

#endif
