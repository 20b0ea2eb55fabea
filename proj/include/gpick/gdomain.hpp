#pragma once

#include <cstdint>
#include <utility>

#include "gpick/types.hpp"

namespace gpick {

/// Smallest admissible |2 - alpha*s| before phi reports a pole.
inline constexpr double kPoleFloor = 1e-12;

enum class MembershipMode { roots, phi_sup };

struct MembershipOptions {
    MembershipMode mode = MembershipMode::roots;
    int circle_grid = 256;
    double refine_tol = 1e-10;  // golden-section stopping width in the angle
    double phi_tol = 1e-10;     // phi_sup mode: inside iff sup|phi| < 1 - phi_tol
};

struct MembershipReport {
    bool inside = false;
    /// 1 - max root modulus; negative outside the closure of G.
    double margin = 0.0;
    /// sup of |phi(alpha, s, p)| over the closed disk; NaN when not computed (roots mode).
    double sup_phi = 0.0;
};

/// The coordinate function (2*alpha*p - s) / (2 - alpha*s).
Complex phi(Complex alpha, const GPoint& point, double pole_floor = kPoleFloor);

/// (z1, z2) -> (z1 + z2, z1 * z2).
GPoint symmetrize(Complex z1, Complex z2);

/// Roots of z^2 - s z + p, ordered by modulus and then argument.
std::pair<Complex, Complex> roots(const GPoint& point);

/// Supremum of |phi(alpha, point)| over the closed unit disk.
///
/// When |s| < 2 the map alpha -> phi is holomorphic on a neighbourhood of the
/// closed disk, so the maximum sits on the circle: a uniform grid of
/// `circle_grid` angles is scanned and the best cell refined by golden-section
/// search. When |s| >= 2 the pole 2/s lies in the closed disk and the supremum
/// is reported as +infinity.
double phi_sup(const GPoint& point, int circle_grid = 256, double refine_tol = 1e-10);

MembershipReport in_G(const GPoint& point, const MembershipOptions& options = {});

/// `count` points drawn uniformly from the open bidisk and symmetrized.
NodeSet sample_G(std::size_t count, std::uint64_t seed);

/// `count` pairs (s, p) uniform on the product of the disks |s| <= s_radius and
/// |p| <= p_radius; no membership filter.
NodeSet sample_box(std::size_t count, std::uint64_t seed, double s_radius = 2.5, double p_radius = 1.5);

}  // namespace gpick
