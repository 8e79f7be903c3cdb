#ifndef TORUS_TYPES_HPP
#define TORUS_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace torus {

using cx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Error taxonomy. Everything numerical that can fail throws one of these;
// callers that treat failures as data (the CLI suites) catch `error`.
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested accuracy is not reachable (series floor, truncation cap, ...).
struct precision_error : error {
    using error::error;
};

/// Input outside the mathematical domain (lattice point, lower half plane, ...).
struct domain_error : error {
    using error::error;
};

/// Iteration failed to converge; carries the best candidate found.
struct convergence_error : error {
    cx best;
    convergence_error(const std::string& what, cx best_) : error(what), best(best_) {}
};

/// Contour integral failed to settle near an integer.
struct quadrature_error : error {
    using error::error;
};

/// A zero sits too close to an integration boundary even after nudging.
struct boundary_error : error {
    using error::error;
};

/// Curve/point sets that must be disjoint are not.
struct overlap_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// A point in the upper half plane (the moduli coordinate).
// ---------------------------------------------------------------------------

struct ModuliPoint {
    double re = 0.0;
    double im = 1.0;

    ModuliPoint() = default;
    ModuliPoint(double re_, double im_) : re(re_), im(im_) {
        if (!(im > 0.0))
            throw domain_error("ModuliPoint: Im tau must be positive");
    }
    explicit ModuliPoint(cx tau) : ModuliPoint(tau.real(), tau.imag()) {}

    cx value() const { return {re, im}; }
};

/// Series evaluation refuses to run below this Im tau by default.
inline constexpr double default_im_floor = 0.05;

// ---------------------------------------------------------------------------
// A point on the torus C/(Z+Z tau), carried both as complex coordinate and
// as real lattice coordinates z = r + s*tau.
// ---------------------------------------------------------------------------

struct TorusPoint {
    cx z{};
    double r = 0.0;
    double s = 0.0;

    static TorusPoint from_complex(cx z, cx tau) {
        TorusPoint p;
        p.z = z;
        p.s = z.imag() / tau.imag();
        p.r = z.real() - p.s * tau.real();
        return p;
    }
    static TorusPoint from_rs(double r, double s, cx tau) {
        TorusPoint p;
        p.r = r;
        p.s = s;
        p.z = cx{r, 0.0} + s * tau;
        return p;
    }
};

/// Distance from z to the nearest lattice point of Z + Z tau.
inline double lattice_distance(cx z, cx tau) {
    double s = z.imag() / tau.imag();
    double r = z.real() - s * tau.real();
    double rf = r - std::round(r);
    double sf = s - std::round(s);
    return std::abs(cx{rf, 0.0} + sf * tau);
}

inline constexpr double default_lattice_eps = 1e-8;

// ---------------------------------------------------------------------------
// Axis-aligned rectangle in the upper half plane.
// ---------------------------------------------------------------------------

struct Rectangle {
    double re_min, re_max, im_min, im_max;

    Rectangle(double re_lo, double re_hi, double im_lo, double im_hi)
        : re_min(re_lo), re_max(re_hi), im_min(im_lo), im_max(im_hi) {
        if (!(im_min > 0.0) || !(re_min < re_max) || !(im_min < im_max))
            throw domain_error("Rectangle: need im_min > 0, re_min < re_max, im_min < im_max");
    }

    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
    bool contains(cx z) const {
        return z.real() >= re_min && z.real() <= re_max &&
               z.imag() >= im_min && z.imag() <= im_max;
    }
    cx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
};

// ---------------------------------------------------------------------------
// A complex scalar extended with the point at infinity. The families below
// treat C = infinity as a regular member with its own formula, and several
// maps legitimately produce poles; infinity is a value, not an error.
// ---------------------------------------------------------------------------

struct ExtendedScalar {
    cx value{};
    bool is_inf = false;

    ExtendedScalar() = default;
    ExtendedScalar(cx v) : value(v), is_inf(false) {}

    static ExtendedScalar infinity() {
        ExtendedScalar s;
        s.is_inf = true;
        return s;
    }
    bool finite() const { return !is_inf; }
};

inline bool operator==(const ExtendedScalar& a, const ExtendedScalar& b) {
    if (a.is_inf || b.is_inf) return a.is_inf && b.is_inf;
    return a.value == b.value;
}

} // namespace torus

#endif
