#include "gpick/gdomain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace gpick {

Complex phi(Complex alpha, const GPoint& point, double pole_floor) {
    const Complex denom = 2.0 - alpha * point.s;
    if (std::abs(denom) < pole_floor) {
        throw PoleError("phi: |2 - alpha*s| below pole floor");
    }
    return (2.0 * alpha * point.p - point.s) / denom;
}

GPoint symmetrize(Complex z1, Complex z2) { return {z1 + z2, z1 * z2}; }

std::pair<Complex, Complex> roots(const GPoint& point) {
    const Complex s = point.s;
    const Complex p = point.p;
    const Complex sq = std::sqrt(s * s - 4.0 * p);
    // Pick the sign that avoids cancellation, recover the other root from the product.
    const Complex big = (std::abs(s + sq) >= std::abs(s - sq)) ? (s + sq) / 2.0 : (s - sq) / 2.0;
    const Complex small = (big == Complex{}) ? Complex{} : p / big;

    auto before = [](Complex a, Complex b) {
        const double ma = std::abs(a);
        const double mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    };
    if (before(big, small)) return {big, small};
    return {small, big};
}

namespace {

double abs_phi_on_circle(double theta, const GPoint& point) {
    return std::abs(phi(std::polar(1.0, theta), point));
}

}  // namespace

double phi_sup(const GPoint& point, int circle_grid, double refine_tol) {
    if (circle_grid < 8) throw InvalidInputError("phi_sup: circle_grid must be at least 8");
    if (point.s == Complex{} && point.p == Complex{}) return 0.0;
    if (std::abs(point.s) >= 2.0) return std::numeric_limits<double>::infinity();

    const double step = 2.0 * std::numbers::pi / circle_grid;
    int best = 0;
    double best_val = -1.0;
    for (int k = 0; k < circle_grid; ++k) {
        const double v = abs_phi_on_circle(k * step, point);
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }

    // Golden-section maximization on the bracket around the best grid angle.
    const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = (best - 1) * step;
    double hi = (best + 1) * step;
    double x1 = hi - inv_golden * (hi - lo);
    double x2 = lo + inv_golden * (hi - lo);
    double f1 = abs_phi_on_circle(x1, point);
    double f2 = abs_phi_on_circle(x2, point);
    while (hi - lo > refine_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_golden * (hi - lo);
            f2 = abs_phi_on_circle(x2, point);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_golden * (hi - lo);
            f1 = abs_phi_on_circle(x1, point);
        }
    }
    return std::max({best_val, f1, f2});
}

MembershipReport in_G(const GPoint& point, const MembershipOptions& options) {
    MembershipReport report;
    const auto [z1, z2] = roots(point);
    report.margin = 1.0 - std::max(std::abs(z1), std::abs(z2));
    if (options.mode == MembershipMode::roots) {
        report.inside = report.margin > 0.0;
        report.sup_phi = std::numeric_limits<double>::quiet_NaN();
    } else {
        report.sup_phi = phi_sup(point, options.circle_grid, options.refine_tol);
        report.inside = report.sup_phi < 1.0 - options.phi_tol;
    }
    return report;
}

namespace {

Complex draw_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return std::polar(r, theta);
}

}  // namespace

NodeSet sample_G(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    NodeSet out;
    out.reserve(count);
    while (out.size() < count) {
        const Complex z1 = draw_disk(rng, 1.0);
        const GPoint point = symmetrize(z1, draw_disk(rng, 1.0));
        // Rounding can push a draw with |z| ~ 1 onto the boundary.
        if (in_G(point).inside) out.push_back(point);
    }
    return out;
}

NodeSet sample_box(std::size_t count, std::uint64_t seed, double s_radius, double p_radius) {
    if (!(s_radius > 0.0) || !(p_radius > 0.0)) throw InvalidInputError("sample_box: radii must be positive");
    std::mt19937_64 rng(seed);
    NodeSet out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const Complex s = draw_disk(rng, s_radius);
        out.push_back({s, draw_disk(rng, p_radius)});
    }
    return out;
}

}  // namespace gpick
