#include "torus/curves.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace torus {

const char* curve_name(DegeneracyCurveId id) {
    switch (id) {
        case DegeneracyCurveId::C12: return "C12";
        case DegeneracyCurveId::C13: return "C13";
        case DegeneracyCurveId::C23: return "C23";
        case DegeneracyCurveId::Ctilde_plus: return "Ctilde_plus";
        case DegeneracyCurveId::Ctilde_minus: return "Ctilde_minus";
    }
    return "?";
}

int curve_family_index(DegeneracyCurveId id) {
    switch (id) {
        case DegeneracyCurveId::C12: return 3;
        case DegeneracyCurveId::C13: return 2;
        case DegeneracyCurveId::C23: return 1;
        default: throw domain_error("curve_family_index: only the C_{i,j} curves have one");
    }
}

namespace {

bool is_tilde(DegeneracyCurveId id) {
    return id == DegeneracyCurveId::Ctilde_plus || id == DegeneracyCurveId::Ctilde_minus;
}

int tilde_sign(DegeneracyCurveId id) {
    return id == DegeneracyCurveId::Ctilde_plus ? +1 : -1;
}

} // namespace

FieldValue scalar_field_scaled(DegeneracyCurveId id, const LatticeInvariants& inv) {
    const double b = inv.tau.im;
    if (is_tilde(id)) {
        const cx ph = inv.eta1 + static_cast<double>(tilde_sign(id)) * std::sqrt(inv.g2 / 12.0);
        const double t1 = std::norm(ph);
        const double t2 = (2.0 * pi / b) * ph.real();
        return {t1 - t2, t1 + std::abs(t2) + std::numeric_limits<double>::min()};
    }
    const int k = curve_family_index(id);
    const cx f = f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
    const double c4 = 4.0 / std::pow(2.0 * pi, 4);
    const double t1 = std::norm(f);
    const double t2 = (6.0 * pi / b) * (std::conj(inv.e(k)) * f).real();
    return {c4 * (t1 - t2), c4 * (t1 + std::abs(t2)) + std::numeric_limits<double>::min()};
}

double scalar_field(DegeneracyCurveId id, const ModuliPoint& tau, const KernelOptions& opt) {
    return scalar_field_scaled(id, invariants(tau, opt)).value;
}

namespace {

// Analytic gradient of the field in (a, b) = (Re tau, Im tau), exact away
// from the vanishing set of the relevant holomorphic factor. For holomorphic
// g, d/da g = g', d/db g = i g'.
std::array<double, 2> analytic_gradient(DegeneracyCurveId id, const LatticeInvariants& inv,
                                        const DTauInvariants& dinv, int& case_out) {
    const double b = inv.tau.im;
    if (is_tilde(id)) {
        const double sgn = tilde_sign(id);
        const cx root = std::sqrt(inv.g2 / 12.0);
        const cx ph = inv.eta1 + sgn * root;
        const cx php = dinv.deta1 + sgn * dinv.dg2 / (24.0 * root);
        const double da = 2.0 * (std::conj(ph) * php).real() - (2.0 * pi / b) * php.real();
        const double db = -2.0 * (std::conj(ph) * php).imag() +
                          (2.0 * pi / (b * b)) * ph.real() + (2.0 * pi / b) * php.imag();
        case_out = std::abs(ph) < 1e-4 * std::max(1.0, std::abs(inv.eta1)) ? 0 : 1;
        return {da, db};
    }
    const int k = curve_family_index(id);
    const cx f = f_value(FamilyIndex(k), ExtendedScalar::infinity(), inv);
    const cx fp = f_dtau(FamilyIndex(k), ExtendedScalar::infinity(), inv, dinv);
    const cx ek = inv.e(k);
    const cx dek = dinv.de(k);
    const double c4 = 4.0 / std::pow(2.0 * pi, 4);
    const cx i{0.0, 1.0};
    const double da =
        c4 * (2.0 * (std::conj(f) * fp).real() -
              (6.0 * pi / b) * (std::conj(dek) * f + std::conj(ek) * fp).real());
    const double db =
        c4 * (2.0 * (std::conj(f) * (i * fp)).real() -
              (6.0 * pi / b) * (std::conj(i * dek) * f + std::conj(ek) * (i * fp)).real() +
              (6.0 * pi / (b * b)) * (std::conj(ek) * f).real());
    case_out = std::abs(f) < 1e-4 * std::max(1.0, std::abs(3.0 * ek * inv.eta1)) ? 0 : 1;
    return {da, db};
}

struct Crossing {
    cx p;
    double residual_rel = 0.0;
    bool keep = false;
};

using EdgeKey = std::uint64_t;

EdgeKey edge_key(int i, int j, int nx, bool vertical) {
    return (static_cast<EdgeKey>(j) * nx + i) * 2 + (vertical ? 1 : 0);
}

// Bisection for the level crossing along a grid edge.
Crossing refine_edge(DegeneracyCurveId id, cx a, cx b, double va, double vb,
                     const TraceOptions& opt) {
    Crossing c;
    for (int it = 0; it < 60; ++it) {
        const cx m = 0.5 * (a + b);
        const double vm = scalar_field_scaled(id, invariants(m, opt.kernel)).value;
        if (vm == 0.0) {
            a = b = m;
            break;
        }
        if ((vm < 0.0) == (va < 0.0)) {
            a = m;
            va = vm;
        } else {
            b = m;
            vb = vm;
        }
        if (std::abs(b - a) < 1e-14 * std::max(1.0, std::abs(m))) break;
    }
    c.p = 0.5 * (a + b);
    const FieldValue fv = scalar_field_scaled(id, invariants(c.p, opt.kernel));
    c.residual_rel = std::abs(fv.value) / fv.scale;
    // a genuine zero refines to ~0; a branch-cut jump stalls at a finite value
    c.keep = c.residual_rel < opt.residual_rel;
    return c;
}

struct Segment {
    EdgeKey a, b;
};

} // namespace

std::vector<CurvePolyline> trace(DegeneracyCurveId id, const GridSpec& grid,
                                 const TraceOptions& opt) {
    return trace(id, grid, invariants_grid(grid, opt.kernel, opt.parallel), opt);
}

std::vector<CurvePolyline> trace(DegeneracyCurveId id, const GridSpec& grid,
                                 const std::vector<LatticeInvariants>& inv_grid,
                                 const TraceOptions& opt) {
    const int nx = grid.nx, ny = grid.ny;
    if (inv_grid.size() != static_cast<std::size_t>(nx) * ny)
        throw domain_error("trace: invariants grid does not match the grid spec");

    // field values on nodes (data-parallel; one slot per node)
    std::vector<double> vals(inv_grid.size());
    {
        auto body = [&](std::ptrdiff_t idx) {
            vals[static_cast<std::size_t>(idx)] =
                scalar_field_scaled(id, inv_grid[static_cast<std::size_t>(idx)]).value;
        };
        const auto n = static_cast<std::ptrdiff_t>(vals.size());
        if (opt.parallel)
            parallel_for(n, body);
        else
            serial_for(n, body);
    }
    auto at = [&](int i, int j) { return vals[static_cast<std::size_t>(j) * nx + i]; };
    auto neg = [](double v) { return v < 0.0; };

    // refine each sign-changing edge once; shared between adjacent cells
    std::map<EdgeKey, Crossing> crossings;
    auto crossing_of = [&](int i, int j, bool vertical) -> Crossing& {
        const EdgeKey key = edge_key(i, j, nx, vertical);
        auto it = crossings.find(key);
        if (it != crossings.end()) return it->second;
        const cx a = grid.node(i, j);
        const cx b = vertical ? grid.node(i, j + 1) : grid.node(i + 1, j);
        const double va = at(i, j);
        const double vb = vertical ? at(i, j + 1) : at(i + 1, j);
        return crossings.emplace(key, refine_edge(id, a, b, va, vb, opt)).first->second;
    };

    std::vector<Segment> segments;
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const double v00 = at(i, j), v10 = at(i + 1, j);
            const double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
            if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) || std::isnan(v11))
                continue;
            const int pattern = (neg(v00) ? 1 : 0) | (neg(v10) ? 2 : 0) | (neg(v11) ? 4 : 0) |
                                (neg(v01) ? 8 : 0);
            if (pattern == 0 || pattern == 15) continue;

            const EdgeKey bottom = edge_key(i, j, nx, false);
            const EdgeKey top = edge_key(i, j + 1, nx, false);
            const EdgeKey left = edge_key(i, j, nx, true);
            const EdgeKey right = edge_key(i + 1, j, nx, true);

            auto add = [&](EdgeKey a, EdgeKey b, int ia, int ja, bool va_, int ib, int jb,
                           bool vb_) {
                const Crossing& ca = crossing_of(ia, ja, va_);
                const Crossing& cb = crossing_of(ib, jb, vb_);
                if (ca.keep && cb.keep) segments.push_back({a, b});
            };

            switch (pattern) {
                case 1: case 14: add(bottom, left, i, j, false, i, j, true); break;
                case 2: case 13: add(bottom, right, i, j, false, i + 1, j, true); break;
                case 3: case 12: add(left, right, i, j, true, i + 1, j, true); break;
                case 4: case 11: add(top, right, i, j + 1, false, i + 1, j, true); break;
                case 6: case 9:  add(bottom, top, i, j, false, i, j + 1, false); break;
                case 7: case 8:  add(top, left, i, j + 1, false, i, j, true); break;
                case 5: case 10: {
                    // saddle: the center sample decides the pairing
                    const double vc = scalar_field_scaled(
                        id, invariants(grid.node(i, j) + cx{0.5 * grid.dx(), 0.5 * grid.dy()},
                                       opt.kernel)).value;
                    const bool center_neg = neg(vc);
                    const bool corner00_neg = (pattern == 5);
                    if (center_neg == corner00_neg) {
                        add(bottom, right, i, j, false, i + 1, j, true);
                        add(top, left, i, j + 1, false, i, j, true);
                    } else {
                        add(bottom, left, i, j, false, i, j, true);
                        add(top, right, i, j + 1, false, i + 1, j, true);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // chain segments into polylines
    std::map<EdgeKey, std::vector<std::size_t>> adjacency;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        adjacency[segments[s].a].push_back(s);
        adjacency[segments[s].b].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);

    auto walk = [&](std::size_t seed, EdgeKey start) {
        std::vector<EdgeKey> chain{start};
        EdgeKey cur = start;
        std::size_t seg = seed;
        while (true) {
            used[seg] = true;
            const EdgeKey next = segments[seg].a == cur ? segments[seg].b : segments[seg].a;
            chain.push_back(next);
            cur = next;
            std::size_t follow = segments.size();
            for (std::size_t cand : adjacency[cur])
                if (!used[cand]) {
                    follow = cand;
                    break;
                }
            if (follow == segments.size()) break;
            seg = follow;
        }
        return chain;
    };

    std::vector<std::vector<EdgeKey>> chains;
    // open curves first (endpoints of degree 1), then whatever remains (loops)
    for (const auto& [key, segs] : adjacency) {
        if (segs.size() != 1) continue;
        if (used[segs[0]]) continue;
        chains.push_back(walk(segs[0], key));
    }
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) chains.push_back(walk(s, segments[s].a));

    std::vector<CurvePolyline> out;
    for (const auto& chain : chains) {
        CurvePolyline poly;
        poly.closed = chain.size() > 2 && chain.front() == chain.back();
        for (std::size_t idx = 0; idx < chain.size(); ++idx) {
            if (poly.closed && idx + 1 == chain.size()) break;
            const Crossing& c = crossings.at(chain[idx]);
            const cx p = c.p;
            const LatticeInvariants inv = invariants(p, opt.kernel);
            const DTauInvariants dinv = tau_derivatives(inv);

            // gradient witness: central differences with a Richardson step,
            // cross-validated against the closed-form gradient
            const double h = opt.fd_step;
            auto fd_grad = [&](double step) {
                const double ga = (scalar_field_scaled(id, invariants(p + step, opt.kernel)).value -
                                   scalar_field_scaled(id, invariants(p - step, opt.kernel)).value) /
                                  (2.0 * step);
                const double gb =
                    (scalar_field_scaled(id, invariants(p + cx{0, step}, opt.kernel)).value -
                     scalar_field_scaled(id, invariants(p - cx{0, step}, opt.kernel)).value) /
                    (2.0 * step);
                return std::array<double, 2>{ga, gb};
            };
            const auto g1 = fd_grad(h);
            const auto g2 = fd_grad(2.0 * h);
            int case_id = 1;
            const auto ga = analytic_gradient(id, inv, dinv, case_id);
            const double gn = std::hypot(g1[0], g1[1]);
            const double gn_check = std::hypot(g2[0], g2[1]);
            const double gn_analytic = std::hypot(ga[0], ga[1]);
            const double ref = std::max({gn, gn_analytic, 1e-300});
            if (std::abs(gn - gn_check) > opt.fd_check * ref ||
                std::abs(gn - gn_analytic) > opt.fd_check * ref)
                throw precision_error("trace: gradient witnesses disagree");

            poly.points.emplace_back(p);
            poly.residuals.push_back(c.residual_rel);
            poly.grad_norms.push_back(gn);
            poly.cases.push_back(case_id);
        }
        if (!poly.points.empty()) out.push_back(std::move(poly));
    }
    std::sort(out.begin(), out.end(), [](const CurvePolyline& a, const CurvePolyline& b) {
        if (a.points.size() != b.points.size()) return a.points.size() > b.points.size();
        if (a.points.empty()) return false;
        if (a.points[0].im != b.points[0].im) return a.points[0].im < b.points[0].im;
        return a.points[0].re < b.points[0].re;
    });
    return out;
}

Decomposition decompose_c_pm(int sign, const GridSpec& grid, const TraceOptions& opt,
                             int s_orbit_bound) {
    if (sign != 1 && sign != -1) throw domain_error("decompose_c_pm: sign must be +1 or -1");
    const auto inv_grid = invariants_grid(grid, opt.kernel, opt.parallel);
    Decomposition d;
    d.curves = trace(sign > 0 ? DegeneracyCurveId::Ctilde_plus : DegeneracyCurveId::Ctilde_minus,
                     grid, inv_grid, opt);
    d.s_points = s_orbit(grid.rect, s_orbit_bound);
    d.separation_required = 10.0 * grid.cell_diagonal();

    d.min_separation = std::numeric_limits<double>::infinity();
    for (const auto& poly : d.curves)
        for (const auto& p : poly.points)
            for (const auto& s : d.s_points)
                d.min_separation = std::min(d.min_separation, std::abs(p.value() - s.value()));

    // region-level magnitude of the q-pair determinant, for relative smallness
    std::vector<double> mags;
    mags.reserve(inv_grid.size());
    for (const auto& inv : inv_grid) mags.push_back(std::abs(det_q_closed(sign, inv)));
    std::sort(mags.begin(), mags.end());
    d.det_scale = std::max(mags[mags.size() / 2], std::numeric_limits<double>::min());

    for (const auto& poly : d.curves)
        for (const auto& p : poly.points) {
            const double det = std::abs(det_q_closed(sign, invariants(p.value(), opt.kernel)));
            d.max_det_curves = std::max(d.max_det_curves, det / d.det_scale);
        }
    for (const auto& s : d.s_points) {
        const double det = std::abs(det_q_closed(sign, invariants(s.value(), opt.kernel)));
        d.max_det_s = std::max(d.max_det_s, det / d.det_scale);
    }

    if (!d.curves.empty() && !d.s_points.empty() && d.min_separation <= d.separation_required)
        throw overlap_error("decompose_c_pm: curve approaches the vanishing locus of g2");
    return d;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* curve_color(DegeneracyCurveId id) {
    switch (id) {
        case DegeneracyCurveId::C12: return "#e41a1c";
        case DegeneracyCurveId::C13: return "#377eb8";
        case DegeneracyCurveId::C23: return "#4daf4a";
        case DegeneracyCurveId::Ctilde_plus: return "#984ea3";
        case DegeneracyCurveId::Ctilde_minus: return "#ff7f00";
    }
    return "#000000";
}

} // namespace

void emit_csv(DegeneracyCurveId id, const std::vector<CurvePolyline>& polys, std::ostream& os) {
    os << "curve_id,re,im,residual,grad_norm\n";
    for (const auto& poly : polys)
        for (std::size_t i = 0; i < poly.points.size(); ++i)
            os << curve_name(id) << ',' << format_g17(poly.points[i].re) << ','
               << format_g17(poly.points[i].im) << ',' << format_g17(poly.residuals[i]) << ','
               << format_g17(poly.grad_norms[i]) << '\n';
}

void emit_svg(DegeneracyCurveId id, const std::vector<CurvePolyline>& polys,
              const Rectangle& region, std::ostream& os) {
    const double W = 720.0, H = 720.0, margin = 48.0;
    const double sx = (W - 2 * margin) / region.width();
    const double sy = (H - 2 * margin) / region.height();
    auto X = [&](double re) { return margin + (re - region.re_min) * sx; };
    auto Y = [&](double im) { return H - margin - (im - region.im_min) * sy; };
    char buf[128];

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    std::snprintf(buf, sizeof(buf),
                  "  <rect x=\"%.6f\" y=\"%.6f\" width=\"%.6f\" height=\"%.6f\" "
                  "fill=\"white\" stroke=\"black\"/>\n",
                  margin, margin, W - 2 * margin, H - 2 * margin);
    os << buf;
    // integer ticks on both axes
    for (int re = static_cast<int>(std::ceil(region.re_min)); re <= region.re_max; ++re) {
        std::snprintf(buf, sizeof(buf),
                      "  <text x=\"%.6f\" y=\"%.6f\" font-size=\"12\" "
                      "text-anchor=\"middle\">%d</text>\n",
                      X(re), H - margin + 16.0, re);
        os << buf;
    }
    for (int im = static_cast<int>(std::ceil(region.im_min)); im <= region.im_max; ++im) {
        std::snprintf(buf, sizeof(buf),
                      "  <text x=\"%.6f\" y=\"%.6f\" font-size=\"12\" "
                      "text-anchor=\"end\">%d</text>\n",
                      margin - 6.0, Y(im) + 4.0, im);
        os << buf;
    }
    for (const auto& poly : polys) {
        if (poly.points.empty()) continue;
        os << "  <path fill=\"none\" stroke=\"" << curve_color(id) << "\" stroke-width=\"1.5\" d=\"";
        for (std::size_t i = 0; i < poly.points.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%c%.6f %.6f", i == 0 ? 'M' : 'L',
                          X(poly.points[i].re), Y(poly.points[i].im));
            os << (i == 0 ? "" : " ") << buf;
        }
        if (poly.closed) os << " Z";
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

std::string emit(DegeneracyCurveId id, const std::vector<CurvePolyline>& polys,
                 const GridSpec& grid, const std::string& format, const std::string& out_dir) {
    if (format != "csv" && format != "svg")
        throw domain_error("emit: format must be csv or svg");
    std::ostringstream key;
    key << format_g17(grid.rect.re_min) << ',' << format_g17(grid.rect.re_max) << ','
        << format_g17(grid.rect.im_min) << ',' << format_g17(grid.rect.im_max) << ','
        << grid.nx << ',' << grid.ny;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, fnv1a(key.str()));

    std::filesystem::create_directories(out_dir);
    const std::string path =
        out_dir + "/" + curve_name(id) + "_" + hash + "." + format;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("emit: cannot open " + path);
    if (format == "csv")
        emit_csv(id, polys, os);
    else
        emit_svg(id, polys, grid.rect, os);
    if (!os) throw io_error("emit: write failed for " + path);
    return path;
}

} // namespace torus
