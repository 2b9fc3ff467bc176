#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "hydrospec/contour.hpp"
#include "hydrospec/eigs.hpp"
#include "hydrospec/profiles.hpp"

namespace hydrospec {

struct Window {
    double re_lo = -1.0;
    double re_hi = 1.0;
    double im_lo = -1.0;
    double im_hi = 1.0;

    bool contains(Complex c) const {
        return c.real() >= re_lo && c.real() <= re_hi && c.imag() >= im_lo && c.imag() <= im_hi;
    }
};

struct ResonanceRecord {
    Complex c;
    int multiplicity = 1;
    bool via_eigen = false;
    bool via_wronskian = false;
    double eigen_residual = 0.0;
    double wronskian_abs = std::numeric_limits<double>::quiet_NaN();
    double dist_to_curve = 0.0;
    std::optional<VectorXcd> state; // resonant-state samples along the contour
};

// Eigenvalue-route scan: eigenvalues of the deformed Rayleigh operator inside
// the window, with everything within `band` of the ellipticity curve dropped
// as spurious.  Multiplicities are cluster counts; records are sorted by
// |Im c| then Re c.  Works on the segment and on the circle.
std::vector<ResonanceRecord> resonances_in_window(const ShearProfile& profile,
                                                  const DeformedContour& contour, double alpha,
                                                  int N, const Window& window, double band,
                                                  bool want_states = false,
                                                  double cluster_radius = 1e-4);

// Shooting route (segment only): integrates Rayleigh's equation along the
// contour from a to b with psi(a) = 0, (d psi/dz)(a) = 1 and returns psi(b).
// Zero exactly at resonances, with order of vanishing equal to multiplicity.
Complex wronskian(const ShearProfile& profile, const DeformedContour& contour, double alpha,
                  Complex c, double tol = 1e-10);

// Newton iteration on the Wronskian with a central-difference derivative.
Complex refine_resonance(const ShearProfile& profile, const DeformedContour& contour, double alpha,
                         Complex c_init, double target = 1e-10, int max_iter = 50);

// Total multiplicity inside |c - center| = radius by trapezoidal phase
// accumulation of W around the circle (>= min_nodes nodes, refined until no
// phase jump exceeds pi/2).
int multiplicity_winding(const ShearProfile& profile, const DeformedContour& contour, double alpha,
                         Complex center, double radius, int min_nodes = 256);

// Distance from c to the sampled ellipticity curve.
double distance_to_curve(Complex c, const std::vector<Complex>& curve);

} // namespace hydrospec
