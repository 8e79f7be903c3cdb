#ifndef TORUS_CAUCHY_HPP
#define TORUS_CAUCHY_HPP

#include <vector>

#include "torus/types.hpp"

namespace torus {

// Contour differentiation of a holomorphic function: trapezoid rule on a
// circle is spectrally accurate, so 64 nodes at radius 0.01..0.05 deliver
// close to full double precision where finite differences lose half of it.

struct CauchyOptions {
    double radius = 0.02;
    int nodes = 64;
};

/// First derivative of f at z0 from samples on a circle around z0.
template <typename F>
cx cauchy_derivative(F&& f, cx z0, const CauchyOptions& opt = {}) {
    cx acc{};
    for (int j = 0; j < opt.nodes; ++j) {
        const double th = 2.0 * pi * j / opt.nodes;
        const cx w = std::polar(1.0, th);
        acc += f(z0 + opt.radius * w) * std::polar(1.0, -th);
    }
    return acc / (static_cast<double>(opt.nodes) * opt.radius);
}

/// First and second derivative from one ring of samples.
template <typename F>
void cauchy_derivative2(F&& f, cx z0, cx& d1, cx& d2, const CauchyOptions& opt = {}) {
    cx a1{}, a2{};
    for (int j = 0; j < opt.nodes; ++j) {
        const double th = 2.0 * pi * j / opt.nodes;
        const cx fv = f(z0 + opt.radius * std::polar(1.0, th));
        a1 += fv * std::polar(1.0, -th);
        a2 += fv * std::polar(1.0, -2.0 * th);
    }
    d1 = a1 / (static_cast<double>(opt.nodes) * opt.radius);
    d2 = 2.0 * a2 / (static_cast<double>(opt.nodes) * opt.radius * opt.radius);
}

} // namespace torus

#endif
