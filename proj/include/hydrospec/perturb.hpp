#pragma once

#include <span>
#include <vector>

#include "hydrospec/contour.hpp"
#include "hydrospec/profiles.hpp"

namespace hydrospec {

// Boundary-layer constants: lambda = 1/sqrt(i alpha (U(a)-c)) on the branch
// with negative real part, mu = 1/sqrt(i alpha (U(b)-c)) on the branch with
// positive real part.
struct BoundaryConstants {
    Complex lambda;
    Complex mu;
};

BoundaryConstants boundary_constants(const ShearProfile& profile, double alpha, Complex c);

// First-order viscous perturbation of a simple segment resonance c1:
//   dc/deps(0) = (lambda (d psi0(a))^2 - mu (d psi0(b))^2)
//                / int_M psi0 (d^2 - alpha^2) psi0 / (U - c1) dz
// with psi0 the discrete resonant state.
Complex first_order_segment(const ShearProfile& profile, const DeformedContour& contour,
                            double alpha, Complex c1, int N);

// Closed formula for U = cos(omega x), alpha = sqrt(omega^2 - pi^2/4),
// omega in (pi/2, pi):
//   pi^2 e^{i pi/4} / (2 omega^2 sqrt(alpha |cos omega|))
//   / ( p.v. int_{-1}^{1} cos^2(pi x/2)/cos(omega x) dx
//       + (2 pi i / omega) cos^2(pi^2/(4 omega)) ).
Complex cos_flow_first_order(double omega, int quad_nodes = 64);

// Second-order coefficient of a simple circle resonance:
//   c~ = i alpha^{-1} int_M psi0 (d^2-alpha^2)^2 psi0 / (U - c1) dz
//        / int_M U'' (psi0 / (U - c1))^2 dz.
Complex second_order_circle(const ShearProfile& profile, const DeformedContour& contour,
                            double alpha, Complex c1, int N);

struct TrackedBranch {
    std::vector<double> eps;       // ascending, eps[0] = 0
    std::vector<Complex> c;        // c[0] = seed resonance
    std::vector<double> match_dist;
    double alpha = 0.0;
    double tau = 0.0;
    int N = 0;
    std::string profile_id;
};

// Continue a located resonance c1 into the viscous spectrum over eps_grid
// (ascending from 0).  Each step picks the eigenvalue nearest the previous
// branch point; a jump larger than 5x the previous jump triggers bisection of
// the eps step (at most 8 levels) before the step is declared a collision.
TrackedBranch track_branch(const ShearProfile& profile, const DeformedContour& contour,
                           double alpha, Complex c1, std::span<const double> eps_grid, int N);

// {0} followed by eps_max * 2^{-(count-1)} ... eps_max (geometric toward 0).
std::vector<double> default_eps_grid(double eps_max, int count = 9);

enum class FitParity { All, Even };

struct TaylorFit {
    std::vector<Complex> coefficients; // index k -> coefficient of eps^k; [0] = seed
    double residual = 0.0;             // RMS misfit over the branch points
    double condition = 0.0;            // condition estimate of the scaled Vandermonde
};

// Least-squares polynomial fit in eps (even powers only when parity = Even),
// anchored at the seed resonance.  The design matrix is built in eps/eps_max.
TaylorFit fit_taylor(const TrackedBranch& branch, int degree, FitParity parity);

} // namespace hydrospec
