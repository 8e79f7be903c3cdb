#include "torus/zerofind.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace torus {

EvaluatorPair family_evaluator(FamilyIndex k, const ExtendedScalar& c, const KernelOptions& opt) {
    EvaluatorPair pair;
    pair.f = [k, c, opt](cx tau) { return f_value(k, c, invariants(tau, opt)); };
    pair.fp = [k, c, opt](cx tau) {
        const LatticeInvariants inv = invariants(tau, opt);
        return f_dtau(k, c, inv, tau_derivatives(inv));
    };
    return pair;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], 10 points.
constexpr std::array<double, 5> gl_x = {0.1488743389816312, 0.4333953941292472,
                                        0.6794095682990244, 0.8650633666889845,
                                        0.9739065285171717};
constexpr std::array<double, 5> gl_w = {0.2955242247147529, 0.2692667193099963,
                                        0.2190863625159820, 0.1494513491505806,
                                        0.0666713443086881};

template <typename G>
cx gl_panel(G&& g, cx a, cx b) {
    const cx mid = 0.5 * (a + b);
    const cx half = 0.5 * (b - a);
    cx acc{};
    for (std::size_t i = 0; i < gl_x.size(); ++i) {
        acc += gl_w[i] * (g(mid + half * gl_x[i]) + g(mid - half * gl_x[i]));
    }
    return acc * half;
}

template <typename G>
cx adaptive_segment(G&& g, cx a, cx b, double tol, int depth, cx whole) {
    const cx m = 0.5 * (a + b);
    const cx left = gl_panel(g, a, m);
    const cx right = gl_panel(g, m, b);
    if (std::abs(left + right - whole) < tol || depth <= 0)
        return left + right;
    return adaptive_segment(g, a, m, 0.5 * tol, depth - 1, left) +
           adaptive_segment(g, m, b, 0.5 * tol, depth - 1, right);
}

// Raw winding integral over the rectangle boundary; no nudging, no rounding.
double winding_integral(const Evaluator& f, const Evaluator& fp, const Rectangle& r,
                        const WindingOptions& opt) {
    auto g = [&](cx z) { return fp(z) / f(z); };
    const cx c0{r.re_min, r.im_min}, c1{r.re_max, r.im_min};
    const cx c2{r.re_max, r.im_max}, c3{r.re_min, r.im_max};
    const double seg_tol = 2.0 * pi * opt.settle_tol / 4.0;
    cx total{};
    const std::array<std::pair<cx, cx>, 4> edges = {
        std::pair{c0, c1}, {c1, c2}, {c2, c3}, {c3, c0}};
    for (const auto& [a, b] : edges)
        total += adaptive_segment(g, a, b, seg_tol, opt.max_panel_depth, gl_panel(g, a, b));
    return (total / cx{0.0, 2.0 * pi}).real();
}

double min_abs_on_segment(const Evaluator& f, cx a, cx b, int samples) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const cx z = a + (b - a) * (static_cast<double>(i) / samples);
        m = std::min(m, std::abs(f(z)));
    }
    return m;
}

double min_abs_on_boundary(const Evaluator& f, const Rectangle& r, int samples) {
    const cx c0{r.re_min, r.im_min}, c1{r.re_max, r.im_min};
    const cx c2{r.re_max, r.im_max}, c3{r.re_min, r.im_max};
    double m = std::numeric_limits<double>::infinity();
    m = std::min(m, min_abs_on_segment(f, c0, c1, samples));
    m = std::min(m, min_abs_on_segment(f, c1, c2, samples));
    m = std::min(m, min_abs_on_segment(f, c2, c3, samples));
    m = std::min(m, min_abs_on_segment(f, c3, c0, samples));
    return m;
}

int round_to_integer(double w, const WindingOptions& opt) {
    const double r = std::round(w);
    if (std::abs(w - r) > opt.integer_tol)
        throw quadrature_error("winding integral did not settle near an integer");
    if (r < -0.5)
        throw quadrature_error("negative winding: integrand is not zeros-only holomorphic");
    return static_cast<int>(r);
}

Rectangle grow(const Rectangle& r, double factor) {
    const double dw = r.width() * factor;
    const double dh = r.height() * factor;
    const double im_lo = std::max(r.im_min - dh, 0.25 * r.im_min);
    return Rectangle(r.re_min - dw, r.re_max + dw, im_lo, r.im_max + dh);
}

} // namespace

double boundary_scale(const Evaluator& f, const Rectangle& rect, int samples) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(samples));
    const cx c0{rect.re_min, rect.im_min}, c1{rect.re_max, rect.im_min};
    const cx c2{rect.re_max, rect.im_max}, c3{rect.re_min, rect.im_max};
    const std::array<std::pair<cx, cx>, 4> edges = {
        std::pair{c0, c1}, {c1, c2}, {c2, c3}, {c3, c0}};
    const int per_edge = std::max(1, samples / 4);
    for (const auto& [a, b] : edges)
        for (int i = 0; i < per_edge; ++i)
            vals.push_back(std::abs(f(a + (b - a) * ((i + 0.5) / per_edge))));
    std::sort(vals.begin(), vals.end());
    return std::max(vals[vals.size() / 2], std::numeric_limits<double>::min());
}

int winding_count(const Evaluator& f, const Evaluator& fp, const Rectangle& rect,
                  const WindingOptions& opt, Rectangle* effective_rect) {
    Rectangle r = rect;
    const double scale = boundary_scale(f, rect, opt.boundary_samples);
    int nudges = 0;
    while (min_abs_on_boundary(f, r, opt.boundary_samples) < opt.boundary_rel * scale) {
        if (++nudges > opt.max_nudges)
            throw boundary_error("winding_count: zero stays near the boundary after nudging");
        r = grow(r, opt.nudge_factor);
    }
    if (effective_rect) *effective_rect = r;
    return round_to_integer(winding_integral(f, fp, r, opt), opt);
}

namespace {

struct ScanContext {
    const Evaluator& f;
    const Evaluator& fp;
    const ZeroFindOptions& opt;
    double scale;
    std::vector<ZeroRecord> found;
};

// Candidate split fractions; the first whose line keeps |f| above the dip
// threshold wins, so the subdivision is deterministic.
constexpr std::array<double, 5> split_fractions = {0.5, 0.53, 0.47, 0.56, 0.44};

double pick_split(const ScanContext& ctx, const Rectangle& r, bool vertical) {
    const double dip = ctx.opt.winding.boundary_rel * ctx.scale;
    double best_frac = split_fractions[0];
    double best_min = -1.0;
    for (const double frac : split_fractions) {
        cx a, b;
        if (vertical) {
            const double x = r.re_min + frac * r.width();
            a = {x, r.im_min};
            b = {x, r.im_max};
        } else {
            const double y = r.im_min + frac * r.height();
            a = {r.re_min, y};
            b = {r.re_max, y};
        }
        const double m = min_abs_on_segment(ctx.f, a, b, 17);
        if (m >= dip) return frac;
        if (m > best_min) {
            best_min = m;
            best_frac = frac;
        }
    }
    return best_frac;
}

ZeroRecord refine_in_cell(ScanContext& ctx, const Rectangle& cell, int winding) {
    // seed: best |f| over an interior sample grid
    cx z{};
    double best = std::numeric_limits<double>::infinity();
    constexpr int m = 7;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const cx cand{cell.re_min + (i + 0.5) / m * cell.width(),
                          cell.im_min + (j + 0.5) / m * cell.height()};
            const double v = std::abs(ctx.f(cand));
            if (v < best) {
                best = v;
                z = cand;
            }
        }
    }
    const double pad_x = 0.25 * cell.width();
    const double pad_y = 0.25 * cell.height();
    const double target = ctx.opt.newton_rel * ctx.scale;
    for (int it = 0; it < ctx.opt.newton_max_iter; ++it) {
        const cx fv = ctx.f(z);
        if (std::abs(fv) < target) break;
        const cx d = ctx.fp(z);
        if (d == cx{}) break;
        cx step = fv / d;
        cx next = z - step;
        // stay near the isolating cell; an escaping iterate is walked back
        int halve = 0;
        while ((next.real() < cell.re_min - pad_x || next.real() > cell.re_max + pad_x ||
                next.imag() < cell.im_min - pad_y || next.imag() > cell.im_max + pad_y) &&
               halve < 10) {
            step *= 0.5;
            next = z - step;
            ++halve;
        }
        z = next;
    }
    ZeroRecord rec;
    rec.location = ModuliPoint(z);
    rec.winding = winding;
    rec.newton_residual = std::abs(ctx.f(z));
    rec.derivative_magnitude = std::abs(ctx.fp(z));
    if (rec.newton_residual > target)
        throw convergence_error("locate_zeros: Newton refinement stalled", z);
    return rec;
}

void scan_cell(ScanContext& ctx, const Rectangle& cell, int winding, int depth) {
    if (winding == 0) return;
    if (winding == 1) {
        ctx.found.push_back(refine_in_cell(ctx, cell, winding));
        return;
    }
    if (depth >= ctx.opt.max_depth)
        throw precision_error("locate_zeros: max quadrisection depth reached");

    const double fx = pick_split(ctx, cell, /*vertical=*/true);
    const double fy = pick_split(ctx, cell, /*vertical=*/false);
    const double xm = cell.re_min + fx * cell.width();
    const double ym = cell.im_min + fy * cell.height();
    const Rectangle quads[4] = {
        Rectangle(cell.re_min, xm, cell.im_min, ym),
        Rectangle(xm, cell.re_max, cell.im_min, ym),
        Rectangle(cell.re_min, xm, ym, cell.im_max),
        Rectangle(xm, cell.re_max, ym, cell.im_max),
    };
    int sum = 0;
    int w[4];
    for (int q = 0; q < 4; ++q) {
        w[q] = round_to_integer(winding_integral(ctx.f, ctx.fp, quads[q], ctx.opt.winding),
                                ctx.opt.winding);
        sum += w[q];
    }
    if (sum != winding)
        throw quadrature_error("locate_zeros: child windings do not add up; a zero sits on a split line");
    for (int q = 0; q < 4; ++q) scan_cell(ctx, quads[q], w[q], depth + 1);
}

} // namespace

ScanResult locate_zeros(const Evaluator& f, const Evaluator& fp, const Rectangle& rect,
                        const ZeroFindOptions& opt) {
    ScanResult result{.zeros = {}, .effective_rect = rect, .scale = 0.0, .total_winding = 0};
    result.scale = boundary_scale(f, rect, opt.winding.boundary_samples);

    Rectangle r = rect;
    int nudges = 0;
    while (min_abs_on_boundary(f, r, opt.winding.boundary_samples) <
           opt.winding.boundary_rel * result.scale) {
        if (++nudges > opt.winding.max_nudges)
            throw boundary_error("locate_zeros: zero stays near the boundary after nudging");
        r = grow(r, opt.winding.nudge_factor);
    }
    result.effective_rect = r;

    ScanContext ctx{f, fp, opt, result.scale, {}};
    const int total = round_to_integer(winding_integral(f, fp, r, opt.winding), opt.winding);
    result.total_winding = total;
    scan_cell(ctx, r, total, 0);

    // merge duplicates found from adjacent cells, keeping the better residual
    std::sort(ctx.found.begin(), ctx.found.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        return a.newton_residual < b.newton_residual;
    });
    for (const auto& rec : ctx.found) {
        bool dup = false;
        for (const auto& kept : result.zeros) {
            if (std::abs(rec.location.value() - kept.location.value()) < opt.merge_eps) {
                dup = true;
                break;
            }
        }
        if (!dup) result.zeros.push_back(rec);
    }
    std::sort(result.zeros.begin(), result.zeros.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        if (a.location.im != b.location.im) return a.location.im < b.location.im;
        return a.location.re < b.location.re;
    });
    return result;
}

SimpleZeroVerdict verify_simple(FamilyIndex k, const ExtendedScalar& c, const Rectangle& rect,
                                const ZeroFindOptions& opt, const KernelOptions& kopt) {
    const EvaluatorPair ev = family_evaluator(k, c, kopt);
    const ScanResult scan = locate_zeros(ev.f, ev.fp, rect, opt);

    SimpleZeroVerdict verdict;
    verdict.zeros = scan.zeros;
    verdict.effective_rect = scan.effective_rect;
    verdict.scale = scan.scale;
    verdict.min_derivative = std::numeric_limits<double>::infinity();
    verdict.min_companion = std::numeric_limits<double>::infinity();
    verdict.all_simple = true;

    const Rectangle& r = scan.effective_rect;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& z : scan.zeros) {
        const double dre = std::min(z.location.re - r.re_min, r.re_max - z.location.re);
        const double dim = std::min(z.location.im - r.im_min, r.im_max - z.location.im);
        margin = std::min(margin, std::min(dre, dim));
        verdict.min_derivative = std::min(verdict.min_derivative, z.derivative_magnitude);
        if (z.winding != 1 || z.derivative_magnitude <= opt.simple_floor_rel * scan.scale)
            verdict.all_simple = false;

        const Witness w = companion_witness(k, c, invariants(z.location.value(), kopt));
        const double rel = std::abs(w.value) / w.scale;
        verdict.min_companion = std::min(verdict.min_companion, rel);
        if (rel <= 1e-6) verdict.companions_ok = false;
    }
    verdict.boundary_margin = scan.zeros.empty() ? 0.0 : margin;
    return verdict;
}

} // namespace torus
